#include "nlvar/gammaexp.hpp"

#include "nlvar/error.hpp"
#include "nlvar/numeric.hpp"
#include "nlvar/represent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlvar {

Kernel KernelFamily::at(std::size_t step) const {
  const double v = schedule[step];
  if (type == FamilyType::BallAverage) return Kernel::ball_average(domain, center, v);
  return Kernel::strip(domain, static_cast<int>(std::lround(v)));
}

std::vector<std::string> standard_load_names() {
  return {"constant", "cos_x1", "cos_x2", "bump_a", "bump_b"};
}

std::vector<LinearLoad> standard_loads(const Domain& domain) {
  if (domain.dim() < 2) fail(ErrorKind::InvalidInput, "standard loads need dim >= 2");
  auto unit = [&domain](const Point& x) {
    Point r{};
    for (int a = 0; a < domain.dim(); ++a) r[a] = (x[a] - domain.lower(a)) / domain.length(a);
    return r;
  };
  auto bump = [&unit](double cx, double cy) {
    return [=](const Point& x) {
      const Point r = unit(x);
      const double d2 = (r[0] - cx) * (r[0] - cx) + (r[1] - cy) * (r[1] - cy);
      return std::exp(-d2 / (0.1 * 0.1));
    };
  };
  std::vector<LinearLoad> loads;
  loads.emplace_back(GridFunction::sample(domain, [](const Point&) { return 1.0; }));
  loads.emplace_back(GridFunction::sample(
      domain, [&](const Point& x) { return std::cos(std::numbers::pi * unit(x)[0]); }));
  loads.emplace_back(GridFunction::sample(
      domain, [&](const Point& x) { return std::cos(std::numbers::pi * unit(x)[1]); }));
  loads.emplace_back(GridFunction::sample(domain, bump(0.3, 0.3)));
  loads.emplace_back(GridFunction::sample(domain, bump(0.7, 0.6)));
  return loads;
}

const GammaRow& GammaSweepReport::row(std::size_t step, std::size_t load) const {
  return rows.at(step * limit_min.size() + load);
}

double GammaSweepReport::final_relative_gap() const {
  double m = 0.0;
  if (schedule.size() == 0) return m;
  for (std::size_t l = 0; l < limit_min.size(); ++l) {
    m = std::max(m, row(schedule.size() - 1, l).relative_gap);
  }
  return m;
}

bool GammaSweepReport::trend() const {
  return std::all_of(eventually_decreasing.begin(), eventually_decreasing.end(),
                     [](bool b) { return b; });
}

bool eventually_decreasing(const std::vector<double>& gaps) {
  const std::size_t start = gaps.size() >= 3 ? 1 : 0;
  for (std::size_t i = start + 1; i < gaps.size(); ++i) {
    if (gaps[i] > gaps[i - 1] + 1e-14 * std::max(1.0, std::abs(gaps[i - 1]))) return false;
  }
  return true;
}

namespace {

double l2_norm(const GridFunction& u) {
  const double w = u.domain().cell_volume();
  CompensatedSum s;
  for (double v : u.values()) s.add(w * v * v);
  return std::sqrt(s.value());
}

}  // namespace

GammaSweepReport gamma_sweep(double p, const KernelFamily& family,
                             const std::vector<LinearLoad>& loads, const SolveOptions& options) {
  if (family.type == FamilyType::BallAverage && p > family.domain.dim()) {
    fail(ErrorKind::Refusal,
         "ball-average sweeps need 1 < p <= dim; the limit is not claimed for p > dim");
  }
  GammaSweepReport rep(p, family.schedule);
  for (const auto& g : loads) {
    if (!(g.domain() == family.domain)) fail(ErrorKind::ShapeMismatch, "load on a different domain");
    const SolveReport lim = minimize_limit(p, g, options);
    const SolveReport grad = minimize(FunctionalSpec::gradient_only(family.domain, p), g,
                                      std::nullopt, options);
    rep.limit_min.push_back(lim.energy);
    rep.gradient_only_min.push_back(grad.energy);
    rep.all_converged = rep.all_converged && lim.converged && grad.converged;
  }
  std::vector<std::optional<GridFunction>> warm(loads.size());
  for (std::size_t s = 0; s < family.size(); ++s) {
    const FunctionalSpec spec = FunctionalSpec::with_kernel(family.at(s), p);
    for (std::size_t l = 0; l < loads.size(); ++l) {
      const SolveReport r = minimize(spec, loads[l], warm[l], options);
      warm[l] = r.minimizer;
      GammaRow row;
      row.step = s;
      row.parameter = family.schedule[s];
      row.load = l;
      row.min_value = r.energy;
      row.minimizer_norm = l2_norm(r.minimizer);
      row.gap = std::abs(r.energy - rep.limit_min[l]);
      row.relative_gap =
          rep.limit_min[l] != 0.0 ? row.gap / std::abs(rep.limit_min[l]) : row.gap;
      row.iterations = r.iterations;
      row.converged = r.converged;
      rep.all_converged = rep.all_converged && r.converged;
      rep.rows.push_back(row);
    }
  }
  for (std::size_t l = 0; l < loads.size(); ++l) {
    std::vector<double> gaps;
    for (std::size_t s = 0; s < family.size(); ++s) gaps.push_back(rep.row(s, l).gap);
    rep.eventually_decreasing.push_back(eventually_decreasing(gaps));
  }
  return rep;
}

StripReport strip_example_check(const GridFunction& u, const SequenceSchedule& ks) {
  const Domain& dom = u.domain();
  if (dom.dim() != 2) fail(ErrorKind::InvalidInput, "strip example lives on the unit square");
  for (int a = 0; a < 2; ++a) {
    if (std::abs(dom.lower(a)) > 1e-14 || std::abs(dom.length(a) - 1.0) > 1e-14) {
      fail(ErrorKind::InvalidInput, "strip example lives on the unit square");
    }
  }
  if (ks.direction() != SequenceSchedule::Direction::ToInfinity) {
    fail(ErrorKind::InvalidInput, "strip schedule must increase");
  }
  u.validate();
  StripReport rep;
  CompensatedSum l2;
  const double w = dom.cell_volume();
  for (double v : u.values()) l2.add(w * v * v);
  const double grad = discrete_gradient_energy(u, 2.0);
  rep.limit = 2.0 * l2.value() + grad;
  std::vector<double> gaps;
  for (double k : ks.values()) {
    const Kernel kern = Kernel::strip(dom, static_cast<int>(std::lround(k)));
    StripRow row;
    row.k = k;
    row.nonlocal = kernel_energy(kern, u.values(), 2.0);
    row.energy = row.nonlocal + grad;
    row.gap = std::abs(row.energy - rep.limit);
    gaps.push_back(row.gap);
    rep.rows.push_back(row);
  }
  rep.decreasing = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) rep.decreasing = rep.decreasing && gaps[i] < gaps[i - 1];
  return rep;
}

std::vector<Box> nested_compacts(const Domain& domain) {
  double shortest = domain.length(0);
  for (int a = 1; a < domain.dim(); ++a) shortest = std::min(shortest, domain.length(a));
  std::vector<Box> out;
  for (double delta = shortest / 4.0; delta >= 2.0 * domain.min_spacing(); delta /= 2.0) {
    Box b;
    for (int a = 0; a < domain.dim(); ++a) {
      b.lower[a] = domain.lower(a) + delta;
      b.upper[a] = domain.upper(a) - delta;
    }
    out.push_back(b);
  }
  return out;
}

VanishingNuReport vanishing_nu_check(const std::vector<Kernel>& kernels,
                                     const std::vector<Box>& compacts, double tolerance) {
  VanishingNuReport rep;
  for (const Box& k : compacts) {
    double sup = 0.0;
    for (const Kernel& kern : kernels) {
      const double m = mass(kern);
      if (m > 0.0) sup = std::max(sup, concentration_defect(kern, k) / m);
    }
    rep.sup_defect.push_back(sup);
    rep.passes = rep.passes || sup <= tolerance;
  }
  return rep;
}

VanishingNuReport vanishing_nu_check(const KernelFamily& family, const std::vector<Box>& compacts,
                                     double tolerance) {
  std::vector<Kernel> kernels;
  for (std::size_t s = 0; s < family.size(); ++s) kernels.push_back(family.at(s));
  return vanishing_nu_check(kernels, compacts, tolerance);
}

JensenChain jensen_chain(const Kernel& ball, const GridFunction& u, double p) {
  if (!std::holds_alternative<BallAverage>(ball.variant())) {
    fail(ErrorKind::InvalidInput, "Jensen chain needs a ball-average kernel");
  }
  if (!(u.domain() == ball.domain())) fail(ErrorKind::ShapeMismatch, "domains differ");
  JensenChain r;
  r.nonlocal = kernel_energy(ball, u.values(), p);
  CompensatedSum mean;
  for (std::size_t j : ball.ball_nodes()) mean.add(u[j]);
  const double b = mean.value() / static_cast<double>(ball.ball_nodes().size());
  r.ball_mean = level_energy(u.domain(), u.values(), p, b);
  r.median_term = p_median(u, p).objective;
  const double tol = 1e-12 * std::max(1.0, r.nonlocal);
  r.holds = r.nonlocal + tol >= r.ball_mean && r.ball_mean + tol >= r.median_term;
  return r;
}

RecoveryReport recovery_check(const GridFunction& u, double p, const Point& center,
                              const SequenceSchedule& radii, const SolveOptions& options) {
  const Domain& dom = u.domain();
  RecoveryReport rep;
  rep.limit = eval_F_limit(p, u).total;
  const double m = p_median(u, p).t;
  std::vector<double> gaps;
  for (double eps : radii.values()) {
    const SolveReport cap = capacitary_potential(dom, p, eps, center, options);
    const Kernel kern = Kernel::ball_average(dom, center, eps);
    for (std::size_t j : kern.ball_nodes()) {
      if (u[j] != 0.0) fail(ErrorKind::ContractViolation, "u must vanish on the balls");
    }
    GridFunction uk = u + m * cap.minimizer;
    RecoveryRow row;
    row.eps = eps;
    row.capacity = cap.energy;
    row.energy = eval_Fk(FunctionalSpec::with_kernel(kern, p), uk).total;
    row.gap = std::abs(row.energy - rep.limit);
    gaps.push_back(row.gap);
    rep.rows.push_back(row);
  }
  rep.decreasing = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) rep.decreasing = rep.decreasing && gaps[i] < gaps[i - 1];
  return rep;
}

}  // namespace nlvar
