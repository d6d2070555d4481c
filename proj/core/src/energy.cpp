#include "nlvar/energy.hpp"

#include "nlvar/error.hpp"
#include "nlvar/numeric.hpp"
#include "nlvar/represent.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nlvar {

FunctionalSpec::FunctionalSpec(Kind kind, Domain domain, double p, std::optional<Kernel> kernel)
    : kind_(kind), domain_(std::move(domain)), p_(p), kernel_(std::move(kernel)) {
  AbsPower check(p);  // validates p > 1
  (void)check;
}

FunctionalSpec FunctionalSpec::gradient_only(Domain domain, double p) {
  return FunctionalSpec(Kind::GradientOnly, std::move(domain), p, std::nullopt);
}

FunctionalSpec FunctionalSpec::with_kernel(Kernel kernel, double p) {
  Domain d = kernel.domain();
  return FunctionalSpec(Kind::WithKernel, std::move(d), p, std::move(kernel));
}

FunctionalSpec FunctionalSpec::limit(Domain domain, double p) {
  return FunctionalSpec(Kind::Limit, std::move(domain), p, std::nullopt);
}

const Kernel& FunctionalSpec::kernel() const {
  if (!kernel_) fail(ErrorKind::InvalidInput, "functional has no kernel");
  return *kernel_;
}

double FunctionalSpec::nonlocal_mass() const {
  switch (kind_) {
    case Kind::GradientOnly: return 0.0;
    case Kind::WithKernel: return mass(*kernel_);
    case Kind::Limit: return Quadrature::of(domain_).total();
  }
  return 0.0;
}

namespace {

void check_shapes(const Domain& domain, std::span<const double> u, std::span<double> grad) {
  if (u.size() != domain.size() || (!grad.empty() && grad.size() != domain.size())) {
    fail(ErrorKind::ShapeMismatch, "value vector does not match the kernel domain");
  }
}

double ball_energy(const Kernel& k, std::span<const double> u, const AbsPower& pw,
                   std::span<double> grad) {
  const Quadrature q = Quadrature::of(k.domain());
  const auto& ball = k.ball_nodes();
  const double per_y = q.node_weight / k.ball_measure();  // a(x,y) w_y
  std::vector<double> ub(ball.size());
  for (std::size_t n = 0; n < ball.size(); ++n) ub[n] = u[ball[n]];
  const bool want = !grad.empty();

  if (pw.p() == 2.0) {
    // sum_x w_x [u_x^2 (c a w) - 2 u_x b + q], b = a w sum_B u, q = a w sum_B u^2
    CompensatedSum s1, s2, sb, sb2;
    for (double v : u) {
      s1.add(q.node_weight * v);
      s2.add(q.node_weight * v * v);
    }
    for (double v : ub) {
      sb.add(v);
      sb2.add(v * v);
    }
    const double cw = per_y * static_cast<double>(ball.size());
    const double b = per_y * sb.value();
    const double qq = per_y * sb2.value();
    const double total_w = q.total();
    if (want) {
      for (std::size_t i = 0; i < u.size(); ++i) {
        grad[i] = 2.0 * q.node_weight * (u[i] * cw - b);
      }
      for (std::size_t n = 0; n < ball.size(); ++n) {
        grad[ball[n]] += 2.0 * per_y * (total_w * ub[n] - s1.value());
      }
    }
    return s2.value() * cw - 2.0 * b * s1.value() + total_w * qq;
  }

  if (want) std::fill(grad.begin(), grad.end(), 0.0);
  std::vector<double> gb(ball.size(), 0.0);
  CompensatedSum total;
  pw.visit([&](auto phi) {
    auto row = [&](double ux, double wx, std::size_t* self) {
      const double coef = wx * per_y;
      double e = 0.0;
      double g = 0.0;
      if (want) {
        for (std::size_t n = 0; n < ub.size(); ++n) {
          double v, d;
          phi.eval(ux - ub[n], v, d);
          e += v;
          g += d;
          gb[n] -= coef * d;
        }
        if (self) grad[*self] += coef * g;
      } else {
        for (std::size_t n = 0; n < ub.size(); ++n) {
          double v, d;
          phi.eval(ux - ub[n], v, d);
          e += v;
        }
      }
      total.add(coef * e);
    };
    for (std::size_t i = 0; i < u.size(); ++i) row(u[i], q.node_weight, &i);
    if (q.boundary_weight > 0.0) row(0.0, q.boundary_weight, nullptr);
  });
  if (want) {
    for (std::size_t n = 0; n < ball.size(); ++n) grad[ball[n]] += gb[n];
  }
  return total.value();
}

double strip_energy(const Kernel& k, std::span<const double> u, const AbsPower& pw,
                    std::span<double> grad) {
  const Quadrature q = Quadrature::of(k.domain());
  const double w = q.node_weight;
  const double wb = q.boundary_weight;
  const auto& alpha = k.strip_alpha();
  const auto& supp = k.strip_support();
  const double ab = k.strip_boundary_mass();
  const bool want = !grad.empty();

  if (pw.p() == 2.0) {
    CompensatedSum s1, s2, t1, t2, am;
    for (std::size_t i = 0; i < u.size(); ++i) {
      s1.add(w * u[i]);
      s2.add(w * u[i] * u[i]);
    }
    for (std::size_t i : supp) {
      t1.add(alpha[i] * w * u[i]);
      t2.add(alpha[i] * w * u[i] * u[i]);
      am.add(alpha[i] * w);
    }
    am.add(ab);
    const double W = q.total();
    const double A = am.value();
    if (want) {
      for (std::size_t i = 0; i < u.size(); ++i) {
        grad[i] = 4.0 * w * (A * u[i] - t1.value());
      }
      for (std::size_t i : supp) {
        grad[i] += 4.0 * w * alpha[i] * (W * u[i] - s1.value());
      }
    }
    return 2.0 * (W * t2.value() - 2.0 * t1.value() * s1.value() + A * s2.value());
  }

  // E = 2 sum_x alpha_x w_x sum_y w_y phi(u_x - u_y), both sums including the
  // zero-valued boundary atom.
  if (want) std::fill(grad.begin(), grad.end(), 0.0);
  CompensatedSum total;
  pw.visit([&](auto phi) {
    double v, d;
    for (std::size_t x : supp) {
      double e = 0.0;
      double g = 0.0;
      for (std::size_t y = 0; y < u.size(); ++y) {
        phi.eval(u[x] - u[y], v, d);
        e += v;
        g += d;
      }
      phi.eval(u[x], v, d);
      total.add(2.0 * alpha[x] * w * (w * e + wb * v));
      if (want) grad[x] += 2.0 * w * alpha[x] * (w * g + wb * d);
    }
    if (ab > 0.0) {
      CompensatedSum s;
      for (double uy : u) {
        phi.eval(uy, v, d);
        s.add(w * v);
      }
      total.add(2.0 * ab * s.value());
    }
    if (want) {
      for (std::size_t i = 0; i < u.size(); ++i) {
        double g = 0.0;
        for (std::size_t y : supp) {
          phi.eval(u[i] - u[y], v, d);
          g += alpha[y] * d;
        }
        phi.eval(u[i], v, d);
        grad[i] += 2.0 * w * (w * g + ab * d);
      }
    }
  });
  return total.value();
}

double dense_energy(const Kernel& k, const Dense& dense, std::span<const double> u,
                    const AbsPower& pw, std::span<double> grad) {
  const double w = k.domain().cell_volume();
  const double ww = w * w;
  const bool want = !grad.empty();
  if (want) std::fill(grad.begin(), grad.end(), 0.0);
  CompensatedSum total;
  for (const auto& e : dense.entries) {
    const double diff = u[e.i] - u[e.j];
    total.add(e.weight * ww * pw(diff));
    if (want) {
      const double g = e.weight * ww * pw.derivative(diff);
      grad[e.i] += g;
      grad[e.j] -= g;
    }
  }
  return total.value();
}

}  // namespace

double kernel_energy(const Kernel& kernel, std::span<const double> u, double p,
                     std::span<double> grad) {
  check_shapes(kernel.domain(), u, grad);
  const AbsPower pw(p);
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BallAverage>) {
          return ball_energy(kernel, u, pw, grad);
        } else if constexpr (std::is_same_v<T, Strip>) {
          return strip_energy(kernel, u, pw, grad);
        } else {
          return dense_energy(kernel, v, u, pw, grad);
        }
      },
      kernel.variant());
}

double kernel_energy_direct(const Kernel& kernel, std::span<const double> u, double p) {
  check_shapes(kernel.domain(), u, {});
  const AbsPower pw(p);
  const Domain& dom = kernel.domain();
  const Quadrature q = Quadrature::of(dom);
  const double w = q.node_weight;
  // Node list with the boundary atom appended as index N.
  const std::size_t n = u.size();
  auto value = [&](std::size_t i) { return i < n ? u[i] : 0.0; };
  auto weight = [&](std::size_t i) { return i < n ? w : q.boundary_weight; };
  CompensatedSum total;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BallAverage>) {
          const double a = 1.0 / kernel.ball_measure();
          for (std::size_t x = 0; x <= n; ++x) {
            for (std::size_t y : kernel.ball_nodes()) {
              total.add(pw(value(x) - u[y]) * a * weight(x) * w);
            }
          }
        } else if constexpr (std::is_same_v<T, Strip>) {
          const auto& alpha = kernel.strip_alpha();
          // alpha-mass density of the atom: alpha_b * w_b = strip_boundary_mass
          auto am = [&](std::size_t i) { return i < n ? alpha[i] * w : kernel.strip_boundary_mass(); };
          for (std::size_t x = 0; x <= n; ++x) {
            for (std::size_t y = 0; y <= n; ++y) {
              total.add(pw(value(x) - value(y)) * (am(x) * weight(y) + weight(x) * am(y)));
            }
          }
        } else {
          for (const auto& e : v.entries) total.add(e.weight * w * w * pw(u[e.i] - u[e.j]));
        }
      },
      kernel.variant());
  return total.value();
}

double level_energy(const Domain& domain, std::span<const double> u, double p, double t,
                    std::span<double> grad_u, double* dt) {
  check_shapes(domain, u, grad_u);
  const AbsPower pw(p);
  const Quadrature q = Quadrature::of(domain);
  CompensatedSum e;
  CompensatedSum d;
  const bool want = !grad_u.empty();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double diff = u[i] - t;
    e.add(q.node_weight * pw(diff));
    if (want || dt) {
      const double g = q.node_weight * pw.derivative(diff);
      if (want) grad_u[i] = g;
      d.add(-g);
    }
  }
  e.add(q.boundary_weight * pw(-t));
  d.add(-q.boundary_weight * pw.derivative(-t));
  if (dt) *dt = d.value();
  return e.value();
}

double energy_and_gradient(const FunctionalSpec& spec, std::span<const double> u,
                           std::span<double> grad) {
  const Domain& dom = spec.domain();
  check_shapes(dom, u, grad);
  std::vector<double> tmp(grad.empty() ? 0 : u.size());
  double nonlocal = 0.0;
  switch (spec.kind()) {
    case FunctionalSpec::Kind::GradientOnly:
      break;
    case FunctionalSpec::Kind::WithKernel:
      nonlocal = kernel_energy(spec.kernel(), u, spec.p(), tmp);
      break;
    case FunctionalSpec::Kind::Limit: {
      WeightedSample s;
      const Quadrature q = Quadrature::of(dom);
      s.values.assign(u.begin(), u.end());
      s.weights.assign(u.size(), q.node_weight);
      s.values.push_back(0.0);
      s.weights.push_back(q.boundary_weight);
      double t;
      if (spec.p() == 2.0) {
        CompensatedSum m;
        for (double v : u) m.add(q.node_weight * v);
        t = m.value() / q.total();
      } else {
        t = p_median(s, spec.p()).t;
      }
      nonlocal = level_energy(dom, u, spec.p(), t, tmp);
      break;
    }
  }
  const double g = gradient_energy(dom, u, spec.p(), grad);
  if (!grad.empty() && spec.kind() != FunctionalSpec::Kind::GradientOnly) {
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += tmp[i];
  }
  return nonlocal + g;
}

EnergyBreakdown evaluate(const FunctionalSpec& spec, const GridFunction& u) {
  u.validate();
  if (!(u.domain() == spec.domain())) {
    fail(ErrorKind::ShapeMismatch, "grid function and functional live on different domains");
  }
  EnergyBreakdown e;
  switch (spec.kind()) {
    case FunctionalSpec::Kind::GradientOnly:
      break;
    case FunctionalSpec::Kind::WithKernel:
      e.nonlocal = kernel_energy(spec.kernel(), u.values(), spec.p());
      break;
    case FunctionalSpec::Kind::Limit:
      e.nonlocal = p_median(u, spec.p()).objective;
      break;
  }
  e.gradient = discrete_gradient_energy(u, spec.p());
  e.total = e.nonlocal + e.gradient;
  return e;
}

EnergyBreakdown eval_Fk(const FunctionalSpec& spec, const GridFunction& u) {
  if (spec.kind() != FunctionalSpec::Kind::WithKernel) {
    fail(ErrorKind::InvalidInput, "eval_Fk needs a functional with a kernel");
  }
  return evaluate(spec, u);
}

EnergyBreakdown eval_F_limit(double p, const GridFunction& u) {
  return evaluate(FunctionalSpec::limit(u.domain(), p), u);
}

BoundCheck check_oscillation_bound(const FunctionalSpec& spec, const GridFunction& u, double M) {
  const double required = spec.nonlocal_mass();
  if (!(M >= required * (1.0 - 1e-12))) {
    fail(ErrorKind::ContractViolation, "oscillation bound needs M >= kernel mass");
  }
  const EnergyBreakdown e = evaluate(spec, u);
  const double osc = oscillation(u);
  const double rhs = M * AbsPower(spec.p())(osc) + e.gradient;
  BoundCheck r;
  r.slack = rhs - e.total;
  r.holds = r.slack >= -1e-10 * std::max(1.0, std::abs(rhs));
  return r;
}

BoundCheck check_truncation_monotone(const FunctionalSpec& spec, const GridFunction& u,
                                     const std::function<double(double)>& psi) {
  const GridFunction t = lipschitz_truncate(u, psi);
  BoundCheck r;
  const double before = evaluate(spec, u).total;
  const double after = evaluate(spec, t).total;
  r.slack = before - after;
  r.holds = r.slack >= -1e-10;
  return r;
}

double parallelogram_defect(const FunctionalSpec& spec, const GridFunction& u,
                            const GridFunction& v) {
  require_same_domain(u, v);
  const double fu = evaluate(spec, u).total;
  const double fv = evaluate(spec, v).total;
  const double fp = evaluate(spec, u + v).total;
  const double fm = evaluate(spec, u - v).total;
  return fp + fm - 2.0 * fu - 2.0 * fv;
}

}  // namespace nlvar
