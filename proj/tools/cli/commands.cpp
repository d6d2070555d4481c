#include "commands.hpp"

#include "nlvar/covering.hpp"
#include "nlvar/energy.hpp"
#include "nlvar/gammaexp.hpp"
#include "nlvar/numeric.hpp"
#include "nlvar/represent.hpp"
#include "nlvar/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

namespace nlvar::cli {

using nlohmann::json;
using std::numbers::pi;

namespace {

double min_drop(const std::vector<double>& v, std::size_t from) {
  double s = INFINITY;
  for (std::size_t i = std::max<std::size_t>(from, 1); i < v.size(); ++i) s = std::min(s, v[i - 1] - v[i]);
  return std::isfinite(s) ? s : 0.0;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

double positive(const Block& b, const std::string& key, double fallback) {
  const double v = b.number(key, fallback);
  if (!(v > 0.0)) throw ConfigError(key + ": must be positive");
  return v;
}

void gamma_sweep_cmd(const Block& cfg, Report& r) {
  cfg.only({"p", "seed", "domain", "kernel", "schedule", "loads", "tolerances", "solver"});
  const double p = positive(cfg, "p", 2.0);
  const Domain d = domain_from(cfg.child("domain"), 2, 127);
  const Block kb = cfg.child("kernel");
  kb.only({"type", "center"});
  const std::string type = kb.text("type", "ball");
  if (type != "ball" && type != "strip") throw ConfigError("kernel.type: expected \"ball\" or \"strip\"");
  const bool ball = type == "ball";
  const std::vector<double> c = kb.numbers("center", {});
  Point center = d.center();
  if (!c.empty()) {
    if (static_cast<int>(c.size()) != d.dim()) throw ConfigError("kernel.center: needs one entry per axis");
    std::copy(c.begin(), c.end(), center.begin());
  }
  const Block sb = cfg.child("schedule");
  sb.only({"values"});
  const auto values = sb.numbers("values", ball ? std::vector<double>{0.2, 0.1, 0.05, 0.025}
                                                : std::vector<double>{4, 8, 16, 32});
  const SequenceSchedule schedule = ball ? SequenceSchedule::radii(values) : SequenceSchedule::indices(values);

  const auto all_names = standard_load_names();
  const auto all_loads = standard_loads(d);
  const auto names = cfg.texts("loads", all_names);
  std::vector<LinearLoad> loads;
  for (const auto& n : names) {
    auto it = std::find(all_names.begin(), all_names.end(), n);
    if (it == all_names.end()) throw ConfigError("loads: unknown load \"" + n + "\"");
    loads.push_back(all_loads[static_cast<std::size_t>(it - all_names.begin())]);
  }
  const Block tb = cfg.child("tolerances");
  tb.only({"final_gap"});
  const double tol = tb.number("final_gap", p == 2.0 ? 5e-2 : 1e-1);
  const Block solver = cfg.child("solver");
  solver.only({"max_iterations"});
  SolveOptions opt;
  opt.max_iterations = solver.integer("max_iterations", opt.max_iterations);

  const KernelFamily family{d, ball ? FamilyType::BallAverage : FamilyType::Strip, center, schedule};
  const GammaSweepReport rep = gamma_sweep(p, family, loads, opt);

  Table t{"gamma_sweep", {ball ? "eps" : "k", "load_id", "load", "min_k", "limit_min", "gap", "relative_gap",
                          "iterations", "converged"}, {}};
  for (const auto& row : rep.rows) {
    t.rows.push_back({row.parameter, static_cast<double>(row.load), names[row.load], row.min_value,
                      rep.limit_min[row.load], row.gap, row.relative_gap, static_cast<double>(row.iterations),
                      row.converged ? 1.0 : 0.0});
  }
  r.tables.push_back(std::move(t));
  Table lim{"limits", {"load_id", "load", "limit_min", "gradient_only_min"}, {}};
  for (std::size_t l = 0; l < loads.size(); ++l) {
    lim.rows.push_back({static_cast<double>(l), names[l], rep.limit_min[l], rep.gradient_only_min[l]});
  }
  r.tables.push_back(std::move(lim));

  std::size_t unconverged = 0;
  for (const auto& row : rep.rows) unconverged += row.converged ? 0 : 1;
  r.assert_that("all solves converged", unconverged == 0, -static_cast<double>(unconverged), true);
  for (std::size_t l = 0; l < loads.size(); ++l) {
    std::vector<double> gaps;
    Curve curve{"gap_" + names[l], ball ? "eps" : "k", "relative_gap", {}};
    for (std::size_t s = 0; s < schedule.size(); ++s) {
      gaps.push_back(rep.row(s, l).relative_gap);
      curve.points.emplace_back(schedule[s], gaps.back());
    }
    r.curves.push_back(std::move(curve));
    r.assert_that("gaps eventually decreasing: " + names[l], rep.eventually_decreasing[l],
                  min_drop(gaps, gaps.size() >= 3 ? 2 : 1));
  }
  r.assert_that("final relative gap <= " + num(tol), tol - rep.final_relative_gap());
  r.summary["final_relative_gap"] = rep.final_relative_gap();
}

void strip_example_cmd(const Block& cfg, Report& r) {
  cfg.only({"p", "seed", "domain", "schedule", "tolerances"});
  if (cfg.number("p", 2.0) != 2.0) throw ConfigError("p: the strip example is quadratic (p = 2)");
  const Domain d = domain_from(cfg.child("domain"), 2, 255);
  const Block sb = cfg.child("schedule");
  sb.only({"values"});
  const auto ks = SequenceSchedule::indices(sb.numbers("values", {4, 8, 16, 32}));
  const Block tb = cfg.child("tolerances");
  tb.only({"final_gap", "concentration"});
  const double tol = tb.number("final_gap", 2e-2);
  const double conc = tb.number("concentration", 0.1);

  const GridFunction u =
      GridFunction::sample(d, [](const Point& x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); });
  const StripReport rep = strip_example_check(u, ks);
  const double target = 0.5 + pi * pi / 2.0;
  Table t{"strip_example", {"k", "F_k", "nonlocal", "gap", "gap_discrete_limit"}, {}};
  Curve curve{"strip_gap", "k", "gap", {}};
  std::vector<double> gaps;
  for (const auto& row : rep.rows) {
    gaps.push_back(std::abs(row.energy - target));
    t.rows.push_back({row.k, row.energy, row.nonlocal, gaps.back(), row.gap});
    curve.points.emplace_back(row.k, gaps.back());
  }
  r.tables.push_back(std::move(t));
  r.curves.push_back(std::move(curve));
  r.summary["target"] = target;
  r.summary["discrete_limit"] = rep.limit;
  r.assert_that("gaps decreasing in k", min_drop(gaps, 1) > 0.0 || gaps.size() < 2, min_drop(gaps, 1));
  r.assert_that("final gap <= " + num(tol), tol - gaps.back());

  const auto compacts = nested_compacts(d);
  std::vector<double> radii;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    if (2.0 * eps >= 5.0 * d.min_spacing()) radii.push_back(eps);
  }
  const VanishingNuReport ball = vanishing_nu_check(
      KernelFamily{d, FamilyType::BallAverage, d.center(), SequenceSchedule::radii(radii)}, compacts, conc);
  const VanishingNuReport strip =
      vanishing_nu_check(KernelFamily{d, FamilyType::Strip, {}, ks}, compacts, conc);
  Table v{"concentration", {"compact_margin", "ball_defect", "strip_defect"}, {}};
  for (std::size_t i = 0; i < compacts.size(); ++i) {
    v.rows.push_back({compacts[i].lower[0] - d.lower(0), ball.sup_defect[i], strip.sup_defect[i]});
  }
  r.tables.push_back(std::move(v));
  const double bmin = *std::min_element(ball.sup_defect.begin(), ball.sup_defect.end());
  const double smin = *std::min_element(strip.sup_defect.begin(), strip.sup_defect.end());
  r.assert_that("ball family does not concentrate", conc - bmin);
  r.assert_that("strip family concentrates at the boundary", smin - conc);
}

void capacity_cmd(const Block& cfg, Report& r) {
  cfg.only({"p", "seed", "domain", "eps", "center", "reference", "tolerances", "solver"});
  const double p = positive(cfg, "p", 2.0);
  const bool default_domain = !cfg.has("domain");
  const Domain d = default_domain ? Domain::centered_box(2, 0.5 * unit_conformal_square_side(), 512)
                                  : domain_from(cfg.child("domain"), 2, 512);
  const auto eps = cfg.numbers("eps", {0.04, 0.02, 0.01});
  const std::vector<double> c = cfg.numbers("center", {});
  Point center = d.center();
  if (!c.empty()) {
    if (static_cast<int>(c.size()) != d.dim()) throw ConfigError("center: needs one entry per axis");
    std::copy(c.begin(), c.end(), center.begin());
  }
  const std::string ref = cfg.text("reference", default_domain && p == 2.0 ? "disk" : "none");
  if (ref != "disk" && ref != "none") throw ConfigError("reference: expected \"disk\" or \"none\"");
  if (ref == "disk" && (p != 2.0 || d.dim() != 2)) {
    throw ConfigError("reference: the disk formula needs p = 2 and dim = 2");
  }
  const Block tb = cfg.child("tolerances");
  tb.only({"relative"});
  const double tol = tb.number("relative", 0.05);
  const Block solver = cfg.child("solver");
  solver.only({"max_iterations"});
  SolveOptions opt;
  opt.max_iterations = solver.integer("max_iterations", 40000);

  Table t{"capacity", {"eps", "capacity", "reference", "relative_error", "iterations", "converged"}, {}};
  Curve curve{"capacity", "eps", "capacity", {}};
  std::vector<double> caps;
  std::size_t unconverged = 0;
  double worst = -INFINITY;
  for (double e : eps) {
    const SolveReport s = capacitary_potential(d, p, e, center, opt);
    caps.push_back(s.energy);
    unconverged += s.converged ? 0 : 1;
    curve.points.emplace_back(e, s.energy);
    if (ref == "disk") {
      const double target = 2.0 * pi / std::log(1.0 / e);
      const double rel = s.energy / target - 1.0;
      worst = std::max(worst, std::abs(rel));
      t.rows.push_back({e, s.energy, target, rel, static_cast<double>(s.iterations), s.converged ? 1.0 : 0.0});
    } else {
      t.rows.push_back({e, s.energy, std::string(), std::string(), static_cast<double>(s.iterations),
                        s.converged ? 1.0 : 0.0});
    }
  }
  r.tables.push_back(std::move(t));
  r.curves.push_back(std::move(curve));
  r.assert_that("all solves converged", unconverged == 0, -static_cast<double>(unconverged), true);
  std::vector<double> sorted_caps;
  std::vector<std::size_t> order(eps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eps[a] > eps[b]; });
  for (std::size_t i : order) sorted_caps.push_back(caps[i]);
  r.assert_that("capacity strictly decreasing as eps shrinks", sorted_caps.size() < 2 || min_drop(sorted_caps, 1) > 0,
                min_drop(sorted_caps, 1));
  if (ref == "disk") r.assert_that("within " + num(tol) + " of 2 pi / ln(1/eps)", tol - worst);
}

void phi_defect_cmd(const Block& cfg, Report& r) {
  cfg.only({"p", "seed", "measure", "resolution", "tolerance", "samples"});
  const double p = cfg.number("p", 2.0);
  if (!(p > 1.0)) throw ConfigError("p: must exceed 1");
  const double measure = positive(cfg, "measure", 1.0);
  const double res = positive(cfg, "resolution", 0.05);
  const double tol = positive(cfg, "tolerance", 1e-10);
  const int samples = cfg.integer("samples", 101);
  if (samples < 2) throw ConfigError("samples: need at least 2");

  const Certificate c = nonrepresentability_certificate(p, measure, res, tol);
  r.summary["verdict"] = to_string(c.verdict);
  r.summary["max_abs_residual"] = c.max_abs_residual;
  r.summary["triples_scanned"] = c.triples_scanned;
  r.summary["witness"] = {{"s1", c.witness.s1}, {"s2", c.witness.s2}, {"t", c.witness.t},
                          {"residual", c.witness.residual}};
  if (c.implied) {
    r.summary["implied"] = {{"mu_density", c.implied->mu_density},
                            {"nu_mass", c.implied->nu_mass},
                            {"integrand", c.implied->integrand}};
  }
  const bool quadratic = p == 2.0;
  const Verdict expected = quadratic ? Verdict::RepresentableConsistent : Verdict::NotRepresentable;
  r.assert_that(std::string("verdict ") + to_string(expected), c.verdict == expected,
                quadratic ? tol - c.max_abs_residual : c.max_abs_residual - tol);

  Table t{"phi", {"s", "phi_p", "h_p", "m_p_indicator"}, {}};
  Curve phi{"phi_p", "s", "phi_p", {}}, h{"h_p", "s", "h_p", {}};
  for (int i = 0; i < samples; ++i) {
    const double s = measure * i / (samples - 1);
    const double a = phi_p(s, measure, p), b = h_p(s, measure, p);
    t.rows.push_back({s, a, b, m_p_indicator(s, measure, p)});
    phi.points.emplace_back(s, a);
    h.points.emplace_back(s, b);
  }
  r.tables.push_back(std::move(t));
  r.curves.push_back(std::move(phi));
  r.curves.push_back(std::move(h));
  const auto probe = phi_second_derivative_probe(p, measure);
  r.summary["phi_second_derivative"] = {{"min", probe.min}, {"max", probe.max}};
}

void covering_cmd(const Block& cfg, Report& r) {
  cfg.only({"p", "seed", "z", "eta", "samples", "beta"});
  const auto zs = cfg.numbers("z", {0.3, 0.7, 1.5});
  const auto etas = cfg.numbers("eta", {0.2, 0.3, 0.4});
  const int samples = cfg.integer("samples", 1000);
  if (samples < 1000) throw ConfigError("samples: need at least 1000");
  const Block bb = cfg.child("beta");
  bb.only({"min", "max", "count"});
  const double bmin = positive(bb, "min", 0.01), bmax = positive(bb, "max", 0.5);
  const int count = bb.integer("count", 50);
  if (!(bmax > bmin) || count < 2) throw ConfigError("beta: need min < max and count >= 2");

  double sampling = INFINITY;
  Table t{"gamma", {"z", "beta", "gamma_closed_form", "gamma_sampled"}, {}};
  for (double z : zs) {
    Curve curve{"gamma_z" + num(z), "beta", "gamma_z", {}};
    for (int i = 0; i < count; ++i) {
      const double beta = bmin + (bmax - bmin) * i / (count - 1);
      const double g = gamma_z(z, beta);
      const double s = gamma_z_sampling_oracle(z, beta, static_cast<std::size_t>(samples));
      sampling = std::min(sampling, 3.0 * beta / samples - std::abs(g - s));
      t.rows.push_back({z, beta, g, s});
    }
    for (int i = 0; i <= 400; ++i) {
      const double beta = bmin + (bmax - bmin) * i / 400.0;
      curve.points.emplace_back(beta, gamma_z(z, beta));
    }
    r.curves.push_back(std::move(curve));
  }
  r.tables.push_back(std::move(t));
  r.assert_that("closed form within 3 beta / samples of sampling", sampling);

  double tri = INFINITY;
  for (double z : zs) {
    if (z == 0.0) continue;
    for (int m = 2; m <= 50; ++m) tri = std::min(tri, triangle_comparison_slack(z, m));
  }
  r.assert_that("triangle comparison, m = 2..50", std::isfinite(tri) ? tri : 0.0);

  Table cov{"covering", {"eta", "eps", "z", "average", "lower_bound_slack", "averaged_bound_slack"}, {}};
  for (double eta : etas) {
    if (!(eta > 0.0 && eta < 0.5)) throw ConfigError("eta: must lie in (0, 1/2)");
    const double eps = 3.0 * eta * eta / 64.0;
    double worst = INFINITY;
    for (int i = 0; i < 20; ++i) {
      const double z = eta + 1.5 * i / 19.0;
      const double s = covering_slack(z, eps, eta);
      worst = std::min(worst, s);
      cov.rows.push_back({eta, eps, z, covering_average(z, eps), s, averaged_lower_bound_slack(z, eps)});
    }
    r.assert_that("covering lower bound, eta = " + num(eta), worst);
  }
  r.tables.push_back(std::move(cov));
}

Domain random_domain(std::mt19937_64& rng, int dim, int n, double shortest = 0.5, double longest = 2.0) {
  std::uniform_real_distribution<double> len(shortest, longest), lo(-1.0, 1.0);
  std::vector<double> lengths(dim), lower(dim);
  std::vector<int> nodes(dim, n);
  for (int a = 0; a < dim; ++a) {
    lengths[a] = len(rng);
    lower[a] = lo(rng);
  }
  return Domain(dim, lengths, nodes, lower);
}

GridFunction random_function(std::mt19937_64& rng, const Domain& d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng), b = 3.0 * u(rng), c = u(rng);
  std::vector<double> v(d.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point x = d.coordinate(i);
    v[i] = a + c * std::sin(b * (x[0] + 0.5 * x[1] - x[2])) + 0.5 * u(rng);
  }
  return GridFunction(d, std::move(v));
}

Kernel centred_ball(const Domain& d) {
  double h = 0.0;
  for (int a = 0; a < d.dim(); ++a) h = std::max(h, d.spacing(a));
  return Kernel::ball_average(d, d.center(), 3.0 * h);
}

void identity_cmd(const Block& cfg, Report& r, std::uint64_t seed) {
  cfg.only({"p", "seed", "functions", "max_nodes", "pairs"});
  const int functions = cfg.integer("functions", 200);
  const int max_nodes = cfg.integer("max_nodes", 4000);
  const int pairs = cfg.integer("pairs", 1000);
  if (functions < 1 || max_nodes < 8 || pairs < 1) throw ConfigError("functions, max_nodes, pairs: must be positive");
  std::mt19937_64 rng(seed);
  Table t{"identities", {"suite", "cases", "worst"}, {}};

  double var = 0.0;
  for (int f = 0; f < functions; ++f) {
    const int dim = 1 + f % 3;
    const double target = std::pow(static_cast<double>(max_nodes), (f + 1.0) / functions);
    const int n = std::max(2, static_cast<int>(std::floor(std::pow(target, 1.0 / dim) + 1e-9)));
    const Domain d = random_domain(rng, dim, n);
    const GridFunction u = random_function(rng, d);
    std::vector<double> val(u.values().begin(), u.values().end()), w(d.size(), d.cell_volume());
    val.push_back(0.0);
    w.push_back(d.measure() - static_cast<double>(d.size()) * d.cell_volume());
    CompensatedSum s;
    for (std::size_t i = 0; i < val.size(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < val.size(); ++j) row += w[j] * (val[i] - val[j]) * (val[i] - val[j]);
      s.add(w[i] * row);
    }
    const double rhs = s.value() / (2.0 * d.measure());
    var = std::max(var, std::abs(eval_F_limit(2.0, u).nonlocal - rhs) / std::abs(rhs));
  }
  t.rows.push_back({std::string("variance"), static_cast<double>(functions), var});
  r.assert_that("variance identity, relative 1e-12", 1e-12 - var);

  const std::vector<Domain> domains{Domain::unit_box(1, 40), Domain::unit_box(2, 12), random_domain(rng, 2, 14, 0.8, 1.25),
                                    Domain::unit_box(3, 9)};
  auto specs_for = [](const Domain& d) {
    std::vector<FunctionalSpec> s;
    for (double p : {1.5, 2.0, 3.0}) {
      s.push_back(FunctionalSpec::with_kernel(centred_ball(d), p));
      s.push_back(FunctionalSpec::limit(d, p));
    }
    return s;
  };
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double trunc = INFINITY, osc = INFINITY;
  for (int k = 0; k < pairs; ++k) {
    const Domain& d = domains[static_cast<std::size_t>(k) % domains.size()];
    const auto specs = specs_for(d);
    const FunctionalSpec& spec = specs[(static_cast<std::size_t>(k) / domains.size()) % specs.size()];
    const GridFunction u = random_function(rng, d);
    const double a = -std::abs(uni(rng)), b = std::abs(uni(rng)), slope = uni(rng);
    std::function<double(double)> psi;
    switch (k % 3) {
      case 0: psi = [=](double x) { return std::clamp(x, a, b); }; break;
      case 1: psi = [=](double x) { return slope * x; }; break;
      default: psi = [=](double x) { return std::abs(x) < b ? 0.0 : x - std::copysign(b, x); }; break;
    }
    trunc = std::min(trunc, check_truncation_monotone(spec, u, psi).slack);
    const BoundCheck bc = check_oscillation_bound(spec, u, spec.nonlocal_mass());
    osc = std::min(osc, bc.slack);
  }
  t.rows.push_back({std::string("truncation"), static_cast<double>(pairs), trunc});
  t.rows.push_back({std::string("oscillation"), static_cast<double>(pairs), osc});
  r.assert_that("truncation does not increase energy", trunc + 1e-10);
  r.assert_that("oscillation bound", osc);

  double par2 = 0.0, par3 = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Domain& d = domains[static_cast<std::size_t>(k) % domains.size()];
    const GridFunction u = random_function(rng, d), v = random_function(rng, d);
    const Kernel ball = centred_ball(d);
    par2 = std::max(par2, std::abs(parallelogram_defect(FunctionalSpec::with_kernel(ball, 2.0), u, v)));
    par2 = std::max(par2, std::abs(parallelogram_defect(FunctionalSpec::limit(d, 2.0), u, v)));
    par3 = std::max(par3, std::abs(parallelogram_defect(FunctionalSpec::with_kernel(ball, 3.0), u, v)));
  }
  t.rows.push_back({std::string("parallelogram_p2"), 200.0, par2});
  t.rows.push_back({std::string("parallelogram_p3"), 100.0, par3});
  r.assert_that("parallelogram law for p = 2", 1e-10 - par2);
  r.assert_that("parallelogram law fails for p = 3", par3 - 1e-6);
  r.tables.push_back(std::move(t));
}

std::vector<MeasureEntry> random_entries(std::mt19937_64& rng, std::size_t nodes, int draws) {
  std::uniform_int_distribution<std::size_t> node(0, nodes - 1);
  std::exponential_distribution<double> weight(1.0);
  std::vector<MeasureEntry> e;
  for (int k = 0; k < draws; ++k) {
    const std::size_t i = node(rng), j = node(rng);
    if (i == j) continue;
    const double w = weight(rng);
    e.push_back({i, j, w});
    e.push_back({j, i, w});
  }
  return e;
}

void mass_bound_cmd(const Block& cfg, Report& r, std::uint64_t seed) {
  cfg.only({"p", "seed", "eta", "domain", "measure", "random"});
  const double eta = cfg.number("eta", 0.25);
  if (!(eta > 0.0 && eta < 0.5)) throw ConfigError("eta: must lie in (0, 1/2)");
  const Domain d = domain_from(cfg.child("domain"), 1, 200);
  std::vector<std::pair<std::string, DiscreteMeasure>> measures;
  if (cfg.has("measure")) {
    const Block mb = cfg.child("measure");
    mb.only({"path"});
    if (!mb.has("path")) throw ConfigError("measure.path: required");
    measures.emplace_back(mb.text("path", ""), DiscreteMeasure::from_csv(d, mb.text("path", "")));
  } else {
    const Block rb = cfg.child("random");
    rb.only({"count", "draws"});
    const int count = rb.integer("count", 10), draws = rb.integer("draws", 4000);
    if (count < 1 || draws < 1) throw ConfigError("random: count and draws must be positive");
    std::mt19937_64 rng(seed);
    for (int m = 0; m < count; ++m) {
      measures.emplace_back("random_" + std::to_string(m),
                            DiscreteMeasure::on_grid(d, random_entries(rng, d.size(), draws)));
    }
  }
  Table t{"mass_bound", {"measure", "total_mass", "off_mass", "m_star", "bound", "ratio", "slack"}, {}};
  for (const auto& [name, mu] : measures) {
    const MassBound b = measure_mass_bound(mu, eta);
    t.rows.push_back({name, mu.total_mass(), b.off_mass, b.m_star, b.bound, b.ratio, b.slack});
    r.assert_that("mass bound: " + name, b.holds, b.slack);
  }
  r.tables.push_back(std::move(t));
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"gamma-sweep",    "strip-example",  "capacity", "phi-defect",
                                              "covering-check", "identity-check", "mass-bound"};
  return names;
}

Report run(const ExperimentConfig& config) {
  Report r;
  r.subcommand = config.subcommand;
  r.config = config.raw;
  r.seed = config.seed;
  const auto t0 = std::chrono::steady_clock::now();
  const Block cfg = config.root();
  const std::string& s = config.subcommand;
  if (s == "gamma-sweep") {
    gamma_sweep_cmd(cfg, r);
  } else if (s == "strip-example") {
    strip_example_cmd(cfg, r);
  } else if (s == "capacity") {
    capacity_cmd(cfg, r);
  } else if (s == "phi-defect") {
    phi_defect_cmd(cfg, r);
  } else if (s == "covering-check") {
    covering_cmd(cfg, r);
  } else if (s == "identity-check") {
    identity_cmd(cfg, r, config.seed);
  } else if (s == "mass-bound") {
    mass_bound_cmd(cfg, r, config.seed);
  } else {
    throw ConfigError("<subcommand>: unknown subcommand " + s);
  }
  r.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace nlvar::cli
