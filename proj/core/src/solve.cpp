#include "nlvar/solve.hpp"

#include "nlvar/error.hpp"
#include "nlvar/numeric.hpp"
#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace nlvar {

LinearLoad::LinearLoad(GridFunction g) : g_(std::move(g)) { g_.validate(); }

LinearLoad LinearLoad::zero(const Domain& domain) { return LinearLoad(GridFunction(domain)); }

double LinearLoad::pairing(std::span<const double> u) const {
  if (u.size() != g_.size()) fail(ErrorKind::ShapeMismatch, "load and function sizes differ");
  const double w = g_.domain().cell_volume();
  CompensatedSum s;
  for (std::size_t i = 0; i < u.size(); ++i) s.add(g_[i] * u[i] * w);
  return s.value();
}

bool LinearLoad::is_zero() const noexcept {
  return std::all_of(g_.values().begin(), g_.values().end(), [](double v) { return v == 0.0; });
}

namespace {

detail::Residual scaled_sup(double scale) {
  return [scale](std::span<const double> g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m * scale;
  };
}

detail::LbfgsOptions lbfgs_options(const SolveOptions& o) {
  detail::LbfgsOptions l;
  l.gradient_tolerance = o.gradient_tolerance;
  l.decrease_tolerance = o.decrease_tolerance;
  l.max_iterations = o.max_iterations;
  l.memory = o.memory;
  return l;
}

std::size_t cg_cap(const SolveOptions& o, std::size_t n) {
  return o.cg_max_iterations ? o.cg_max_iterations : 10 * n;
}

void subtract_load(const LinearLoad& load, std::span<double> grad) {
  const double w = load.domain().cell_volume();
  const auto g = load.density().values();
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] -= g[i] * w;
}

// w p (p-1) (|u_i - t|^2 + delta^2)^{(p-2)/2}: the diagonal of sum w |u - t|^p
// with the kink at u_i = t smoothed; delta^2 is 1e-6 of the largest square.
void add_level_diagonal(std::span<const double> u, double t, double w, double p,
                        std::span<double> diag) {
  double m = 0.0;
  for (double v : u) m = std::max(m, (v - t) * (v - t));
  const double d2 = m > 0.0 ? 1e-6 * m : 1.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    diag[i] += w * p * (p - 1.0) * std::pow((u[i] - t) * (u[i] - t) + d2, 0.5 * p - 1.0);
  }
}

}  // namespace

SolveReport minimize(const FunctionalSpec& spec, const LinearLoad& load,
                     const std::optional<GridFunction>& warm_start, const SolveOptions& options) {
  if (!(load.domain() == spec.domain())) {
    fail(ErrorKind::ShapeMismatch, "load lives on a different domain");
  }
  if (warm_start && !(warm_start->domain() == spec.domain())) {
    fail(ErrorKind::ShapeMismatch, "warm start lives on a different domain");
  }
  if (spec.kind() == FunctionalSpec::Kind::Limit) return minimize_limit(spec.p(), load, options);

  const Domain& dom = spec.domain();
  const std::size_t n = dom.size();
  detail::Objective f = [&](std::span<const double> u, std::span<double> g) {
    const double e = energy_and_gradient(spec, u, g);
    subtract_load(load, g);
    return e - load.pairing(u);
  };
  std::vector<double> x0(n, 0.0);
  if (warm_start) {
    warm_start->validate();
    x0.assign(warm_start->values().begin(), warm_start->values().end());
  }
  const auto residual = scaled_sup(1.0 / dom.cell_volume());
  detail::OptimizeResult r =
      spec.p() == 2.0
          ? detail::conjugate_gradient(f, std::move(x0), options.cg_tolerance, cg_cap(options, n),
                                       residual)
          : detail::lbfgs(f, std::move(x0), lbfgs_options(options), residual,
                          [&](std::span<const double> u, std::span<double> diag) {
                            gradient_energy_diagonal(dom, u, spec.p(), diag);
                            if (spec.kind() != FunctionalSpec::Kind::WithKernel) return;
                            const Kernel& k = spec.kernel();
                            if (k.ball_nodes().empty()) return;
                            CompensatedSum b;
                            for (std::size_t j : k.ball_nodes()) b.add(u[j]);
                            const double mean = b.value() / k.ball_nodes().size();
                            add_level_diagonal(u, mean, dom.cell_volume(), spec.p(), diag);
                          });

  SolveReport rep(GridFunction(dom, std::move(r.x)));
  rep.energy = r.f;
  rep.functional = r.f + load.pairing(rep.minimizer.values());
  rep.iterations = r.iterations;
  rep.gradient_residual = r.grad_sup;
  rep.relative_residual = r.relative_residual;
  rep.converged = r.converged;
  return rep;
}

SolveReport minimize_limit(double p, const LinearLoad& load, const SolveOptions& options) {
  const Domain& dom = load.domain();
  const std::size_t n = dom.size();
  const double measure = Quadrature::of(dom).total();
  std::vector<double> gg(n);
  // Variables are (u_1..u_N, t).
  detail::Objective f = [&](std::span<const double> x, std::span<double> g) {
    const auto u = x.first(n);
    const double t = x[n];
    double dt = 0.0;
    double e = level_energy(dom, u, p, t, g.first(n), &dt);
    e += gradient_energy(dom, u, p, gg);
    for (std::size_t i = 0; i < n; ++i) g[i] += gg[i];
    subtract_load(load, g.first(n));
    g[n] = dt;
    return e - load.pairing(u);
  };
  const double inv_w = 1.0 / dom.cell_volume();
  detail::Residual residual = [&](std::span<const double> g) {
    double m = std::abs(g[n]) / measure;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(g[i]) * inv_w);
    return m;
  };
  std::vector<double> x0(n + 1, 0.0);
  detail::OptimizeResult r =
      p == 2.0 ? detail::conjugate_gradient(f, std::move(x0), options.cg_tolerance,
                                            cg_cap(options, n + 1), residual)
               : detail::lbfgs(f, std::move(x0), lbfgs_options(options), residual,
                               [&](std::span<const double> x, std::span<double> diag) {
                                 const auto u = x.first(n);
                                 gradient_energy_diagonal(dom, u, p, diag.first(n));
                                 add_level_diagonal(u, x[n], dom.cell_volume(), p, diag.first(n));
                                 std::vector<double> dt(n, 0.0);
                                 add_level_diagonal(u, x[n], dom.cell_volume(), p, dt);
                                 diag[n] = compensated_sum(dt);
                               });

  const double t = r.x[n];
  r.x.pop_back();
  SolveReport rep(GridFunction(dom, std::move(r.x)));
  rep.energy = r.f;
  rep.functional = r.f + load.pairing(rep.minimizer.values());
  rep.iterations = r.iterations;
  rep.gradient_residual = r.grad_sup;
  rep.relative_residual = r.relative_residual;
  rep.converged = r.converged;
  rep.level = t;
  return rep;
}

double unit_conformal_square_side() {
  return 4.0 * std::pow(std::numbers::pi, 1.5) / std::pow(std::tgamma(0.25), 2);
}

SolveReport capacitary_potential(const Domain& domain, double p, double eps,
                                 const SolveOptions& options) {
  return capacitary_potential(domain, p, eps, domain.center(), options);
}

SolveReport capacitary_potential(const Domain& domain, double p, double eps, const Point& center,
                                 const SolveOptions& options) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorKind::InvalidInput, "capacity needs p > 1");
  if (p > domain.dim()) {
    fail(ErrorKind::Refusal, "capacity decay is only claimed for p <= dim");
  }
  if (!(eps >= 2.0 * domain.min_spacing())) {
    fail(ErrorKind::Refusal, "ball radius is not resolved by the grid (needs eps >= 2h)");
  }
  Box ball_box;
  for (int a = 0; a < domain.dim(); ++a) {
    ball_box.lower[a] = center[a] - eps;
    ball_box.upper[a] = center[a] + eps;
  }
  if (!domain.contains(ball_box)) {
    fail(ErrorKind::Refusal, "ball is not compactly inside the domain");
  }

  const std::size_t n = domain.size();
  std::vector<char> fixed(n, 0);
  std::vector<std::size_t> free;
  const double r2max = eps * eps * (1.0 + 1e-12);
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = domain.coordinate(i);
    double r2 = 0.0;
    for (int a = 0; a < domain.dim(); ++a) r2 += (x[a] - center[a]) * (x[a] - center[a]);
    if (r2 <= r2max) {
      fixed[i] = 1;
    } else {
      free.push_back(i);
    }
  }
  if (free.size() == n) fail(ErrorKind::Refusal, "ball contains no grid node");

  std::vector<double> full(n), gfull(n);
  for (std::size_t i = 0; i < n; ++i) full[i] = fixed[i] ? 1.0 : 0.0;
  detail::Objective f = [&](std::span<const double> v, std::span<double> g) {
    for (std::size_t k = 0; k < free.size(); ++k) full[free[k]] = v[k];
    const double e = gradient_energy(domain, full, p, gfull);
    for (std::size_t k = 0; k < free.size(); ++k) g[k] = gfull[free[k]];
    return e;
  };
  const auto residual = scaled_sup(1.0 / domain.cell_volume());
  std::vector<double> x0(free.size(), 0.0);
  detail::OptimizeResult r =
      p == 2.0 ? detail::conjugate_gradient(f, std::move(x0), options.cg_tolerance,
                                            cg_cap(options, free.size()), residual)
               : detail::lbfgs(f, std::move(x0), lbfgs_options(options), residual,
                               [&](std::span<const double> x, std::span<double> diag) {
                                 for (std::size_t k = 0; k < free.size(); ++k) full[free[k]] = x[k];
                                 gradient_energy_diagonal(domain, full, p, gfull);
                                 for (std::size_t k = 0; k < free.size(); ++k) diag[k] = gfull[free[k]];
                               });

  std::vector<double> v(n, 1.0);
  for (std::size_t k = 0; k < free.size(); ++k) v[free[k]] = std::clamp(r.x[k], 0.0, 1.0);
  SolveReport rep(GridFunction(domain, v));
  rep.energy = gradient_energy(domain, v, p);
  rep.functional = rep.energy;
  rep.iterations = r.iterations;
  rep.gradient_residual = r.grad_sup;
  rep.relative_residual = r.relative_residual;
  rep.converged = r.converged;
  return rep;
}

}  // namespace nlvar
