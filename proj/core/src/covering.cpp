#include "nlvar/covering.hpp"

#include "nlvar/error.hpp"
#include "nlvar/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <utility>

namespace nlvar {
namespace {

bool is_odd(double f) { return std::fmod(f, 2.0) != 0.0; }

void require_period(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) fail(ErrorKind::InvalidInput, "beta must be > 0");
}

double cell(double x, const CheckerboardParams& c) { return std::floor((x - c.alpha) / c.beta); }

}  // namespace

bool in_A(double x, const CheckerboardParams& c) {
  require_period(c.beta);
  return !is_odd(cell(x, c));
}

bool in_E(double x, double y, const CheckerboardParams& c) {
  require_period(c.beta);
  return is_odd(cell(x, c) + cell(y, c));
}

double gamma_z(double z, double beta) {
  require_period(beta);
  const double m = std::floor((z / beta + 1.0) / 2.0);
  return std::clamp(std::abs(z - 2.0 * m * beta), 0.0, beta);
}

double gamma_z_sampling_oracle(double z, double beta, std::size_t samples) {
  require_period(beta);
  if (samples < 1000) fail(ErrorKind::InvalidInput, "sampling oracle needs at least 1000 samples");
  std::size_t hits = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const CheckerboardParams c{(static_cast<double>(k) + 0.5) * beta / static_cast<double>(samples),
                               beta, 0};
    if (in_E(0.0, z, c)) ++hits;
  }
  return beta * static_cast<double>(hits) / static_cast<double>(samples);
}

double gamma_integral(double z, double a, double b) {
  if (!(a > 0.0) || !(b >= a)) fail(ErrorKind::InvalidInput, "integration range must satisfy 0 < a <= b");
  const double az = std::abs(z);
  if (az == 0.0 || a == b) return 0.0;
  std::vector<double> knots{a};
  // kinks at beta = |z|/j with a < |z|/j < b
  const auto jlo = static_cast<long long>(std::floor(az / b)) + 1;
  const auto jhi = static_cast<long long>(std::ceil(az / a)) - 1;
  for (long long j = jhi; j >= jlo; --j) {
    const double k = az / static_cast<double>(j);
    if (k > a && k < b) knots.push_back(k);
  }
  knots.push_back(b);
  CompensatedSum s;
  for (std::size_t n = 0; n + 1 < knots.size(); ++n) {
    const double l = knots[n];
    const double r = knots[n + 1];
    s.add(0.5 * (r - l) * (gamma_z(az, l) + gamma_z(az, r)));
  }
  return s.value();
}

double covering_average(double z, double eps) {
  if (!(eps > 0.0)) fail(ErrorKind::InvalidInput, "eps must be > 0");
  return gamma_integral(z, eps, 2.0 * eps);
}

double d_eps_measure(double eps) { return 1.5 * eps * eps; }

double triangle_comparison_slack(double z, int m) {
  if (m < 2) fail(ErrorKind::InvalidInput, "triangle comparison needs m >= 2");
  const double az = std::abs(z);
  if (az == 0.0) fail(ErrorKind::InvalidInput, "triangle comparison needs z != 0");
  const double lhs = gamma_integral(az, az / (2.0 * m), az / (2.0 * m - 2.0));
  const double a = az / (2.0 * m + 1.0);
  const double b = az / (2.0 * m - 1.0);
  const double rhs = 0.5 * (b * b - a * a) - gamma_integral(az, a, b);
  return lhs - rhs;
}

double averaged_lower_bound_slack(double z, double eps) {
  const double az = std::abs(z);
  if (az == 0.0 || !(eps > 0.0)) fail(ErrorKind::InvalidInput, "needs z != 0 and eps > 0");
  const double k = std::floor(az / (4.0 * eps)) + 1.0;
  return covering_average(az, eps) - (0.5 * d_eps_measure(eps) - az * eps / (k * k));
}

double covering_slack(double z, double eps, double eta) {
  return covering_average(z, eps) - (0.5 - eta) * d_eps_measure(eps);
}

DiscreteMeasure::DiscreteMeasure(int dim, std::vector<Point> points,
                                 std::vector<MeasureEntry> entries)
    : dim_(dim), points_(std::move(points)) {
  if (dim < 1 || dim > 3) fail(ErrorKind::InvalidInput, "measure dimension must be 1, 2 or 3");
  std::map<std::pair<std::size_t, std::size_t>, double> merged;
  for (const auto& e : entries) {
    if (e.i >= points_.size() || e.j >= points_.size()) {
      fail(ErrorKind::ShapeMismatch, "measure entry refers to a missing point");
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      fail(ErrorKind::InvalidInput, "measure weights must be finite and nonnegative");
    }
    if (e.weight == 0.0) continue;
    if (e.i == e.j) fail(ErrorKind::Refusal, "measure charges the diagonal");
    merged[{e.i, e.j}] += e.weight;
  }
  for (const auto& [key, w] : merged) {
    const auto it = merged.find({key.second, key.first});
    const double other = it == merged.end() ? 0.0 : it->second;
    if (std::abs(w - other) > 1e-12 * std::max(w, other)) {
      fail(ErrorKind::Refusal, "measure is not symmetric");
    }
    entries_.push_back({key.first, key.second, w});
  }
}

DiscreteMeasure DiscreteMeasure::on_grid(const Domain& domain, std::vector<MeasureEntry> entries) {
  std::vector<Point> pts(domain.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = domain.coordinate(i);
  return DiscreteMeasure(domain.dim(), std::move(pts), std::move(entries));
}

DiscreteMeasure DiscreteMeasure::from_csv(const Domain& domain, std::istream& in) {
  std::vector<MeasureEntry> entries;
  for (const auto& t : read_weight_triples(in)) entries.push_back({t.i, t.j, t.weight});
  return on_grid(domain, std::move(entries));
}

DiscreteMeasure DiscreteMeasure::from_csv(const Domain& domain, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open measure file " + path);
  return from_csv(domain, in);
}

double DiscreteMeasure::total_mass() const {
  CompensatedSum s;
  for (const auto& e : entries_) s.add(e.weight);
  return s.value();
}

double checkerboard_mass(const DiscreteMeasure& mu, const CheckerboardParams& c) {
  require_period(c.beta);
  if (c.axis < 0 || c.axis >= mu.dim()) fail(ErrorKind::InvalidInput, "axis out of range");
  const auto& pts = mu.points();
  std::vector<char> a(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) a[i] = in_A(pts[i][c.axis], c);
  CompensatedSum s;
  for (const auto& e : mu.entries()) {
    if (a[e.i] != a[e.j]) s.add(e.weight);
  }
  return s.value();
}

std::vector<CheckerboardParams> checkerboard_samples(const CheckerboardScan& scan, int axis) {
  if (!(scan.eps > 0.0) || scan.alpha_samples < 1 || scan.beta_samples < 1) {
    fail(ErrorKind::InvalidInput, "checkerboard scan needs eps > 0 and positive sample counts");
  }
  std::vector<CheckerboardParams> out;
  for (int b = 0; b < scan.beta_samples; ++b) {
    const double beta = scan.eps * (1.0 + (b + 0.5) / scan.beta_samples);
    for (int a = 0; a < scan.alpha_samples; ++a) {
      out.push_back({(a + 0.5) * beta / scan.alpha_samples, beta, axis});
    }
  }
  return out;
}

double checkerboard_sup(const DiscreteMeasure& mu, const CheckerboardScan& scan) {
  double m = 0.0;
  for (int axis = 0; axis < mu.dim(); ++axis) {
    for (const auto& c : checkerboard_samples(scan, axis)) m = std::max(m, checkerboard_mass(mu, c));
  }
  return m;
}

double off_diagonal_mass(const DiscreteMeasure& mu, double eta) {
  const auto& pts = mu.points();
  CompensatedSum s;
  for (const auto& e : mu.entries()) {
    double dist = 0.0;
    for (int a = 0; a < mu.dim(); ++a) dist = std::max(dist, std::abs(pts[e.i][a] - pts[e.j][a]));
    if (dist > eta) s.add(e.weight);
  }
  return s.value();
}

MassBound measure_mass_bound(const DiscreteMeasure& mu, double m_star, double eta,
                             double tolerance) {
  if (!(eta > 0.0 && eta < 0.5)) fail(ErrorKind::InvalidInput, "eta must lie in (0, 1/2)");
  MassBound r;
  r.eta = eta;
  r.m_star = m_star;
  r.off_mass = off_diagonal_mass(mu, eta);
  r.bound = 2.0 * mu.dim() * m_star / (1.0 - 2.0 * eta);
  r.slack = r.bound - r.off_mass;
  r.ratio = r.bound > 0.0 ? r.off_mass / r.bound : 0.0;
  r.holds = r.off_mass <= r.bound + tolerance * std::max(1.0, r.bound);
  return r;
}

MassBound measure_mass_bound(const DiscreteMeasure& mu, double eta) {
  CheckerboardScan scan;
  scan.eps = 3.0 / 64.0 * eta * eta;
  return measure_mass_bound(mu, checkerboard_sup(mu, scan), eta);
}

FubiniSums fubini_surrogate(const DiscreteMeasure& mu, const CheckerboardScan& scan) {
  std::vector<CheckerboardParams> samples;
  for (int axis = 0; axis < mu.dim(); ++axis) {
    auto s = checkerboard_samples(scan, axis);
    samples.insert(samples.end(), s.begin(), s.end());
  }
  const auto& pts = mu.points();
  FubiniSums f;
  for (const auto& c : samples) {
    for (const auto& e : mu.entries()) {
      if (in_E(pts[e.i][c.axis], pts[e.j][c.axis], c)) f.samples_outer += e.weight;
    }
  }
  for (const auto& e : mu.entries()) {
    for (const auto& c : samples) {
      if (in_E(pts[e.i][c.axis], pts[e.j][c.axis], c)) f.pairs_outer += e.weight;
    }
  }
  return f;
}

}  // namespace nlvar
