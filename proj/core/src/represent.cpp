#include "nlvar/represent.hpp"

#include "nlvar/error.hpp"
#include "nlvar/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

namespace nlvar {

WeightedSample WeightedSample::of(const GridFunction& u) {
  u.validate();
  const Quadrature q = Quadrature::of(u.domain());
  WeightedSample s;
  s.values.assign(u.values().begin(), u.values().end());
  s.weights.assign(u.size(), q.node_weight);
  if (q.boundary_weight > 0.0) {
    s.values.push_back(0.0);
    s.weights.push_back(q.boundary_weight);
  }
  return s;
}

WeightedSample WeightedSample::two_level(double s, double measure) {
  if (!(s >= 0.0 && s <= measure)) fail(ErrorKind::InvalidInput, "need 0 <= s <= measure");
  return WeightedSample{{1.0, 0.0}, {s, measure - s}};
}

double WeightedSample::total_weight() const { return compensated_sum(weights); }

namespace {

struct MedianObjective {
  const WeightedSample& sample;
  AbsPower pw;

  double value(double t) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < sample.values.size(); ++i) {
      s.add(sample.weights[i] * pw(sample.values[i] - t));
    }
    return s.value();
  }
  // d/dt sum w |u - t|^p = sum w phi'(t - u); nondecreasing in t.
  double derivative(double t) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < sample.values.size(); ++i) {
      s.add(sample.weights[i] * pw.derivative(t - sample.values[i]));
    }
    return s.value();
  }
};

}  // namespace

PMedianResult p_median(const WeightedSample& sample, double p) {
  if (sample.values.empty() || sample.values.size() != sample.weights.size()) {
    fail(ErrorKind::InvalidInput, "p_median needs a nonempty weighted sample");
  }
  MedianObjective obj{sample, AbsPower(p)};
  double lo = sample.values[0];
  double hi = sample.values[0];
  bool any_weight = false;
  for (std::size_t i = 0; i < sample.values.size(); ++i) {
    if (!std::isfinite(sample.values[i]) || !(sample.weights[i] >= 0.0)) {
      fail(ErrorKind::InvalidInput, "sample values must be finite and weights nonnegative");
    }
    if (sample.weights[i] > 0.0) {
      if (!any_weight) lo = hi = sample.values[i];
      any_weight = true;
      lo = std::min(lo, sample.values[i]);
      hi = std::max(hi, sample.values[i]);
    }
  }
  if (!any_weight) fail(ErrorKind::InvalidInput, "sample has zero total weight");

  PMedianResult r;
  double d_lo = obj.derivative(lo);
  double d_hi = obj.derivative(hi);
  if (lo == hi || d_lo >= 0.0) {
    r.t = lo;
  } else if (d_hi <= 0.0) {
    r.t = hi;
  } else {
    // Bisect until the bracket cannot be split further in double precision.
    while (r.iterations < 2000) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      ++r.iterations;
      const double dm = obj.derivative(mid);
      if (dm == 0.0) {
        lo = hi = mid;
        d_lo = d_hi = 0.0;
        break;
      }
      if (dm < 0.0) {
        lo = mid;
        d_lo = dm;
      } else {
        hi = mid;
        d_hi = dm;
      }
    }
    r.t = std::abs(d_lo) <= std::abs(d_hi) ? lo : hi;
  }
  r.objective = obj.value(r.t);
  r.derivative = obj.derivative(r.t);
  return r;
}

PMedianResult p_median(const GridFunction& u, double p) {
  return p_median(WeightedSample::of(u), p);
}

double m_p_continuity_probe(const GridFunction& u, double p, double delta, int trials,
                            std::uint64_t seed) {
  if (!(delta >= 0.0)) fail(ErrorKind::InvalidInput, "perturbation scale must be >= 0");
  const double base = p_median(u, p).t;
  if (delta == 0.0) return 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    GridFunction v = u;
    for (double& x : v.values()) x += delta * unif(rng);
    worst = std::max(worst, std::abs(p_median(v, p).t - base));
  }
  return worst;
}

namespace {

void check_level(double s, double measure, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorKind::InvalidInput, "p must be > 1");
  if (!(measure > 0.0)) fail(ErrorKind::InvalidInput, "measure must be positive");
  if (!(s >= 0.0 && s <= measure)) {
    fail(ErrorKind::InvalidInput, "level measure s must lie in [0, |Omega|]");
  }
}

}  // namespace

double m_p_indicator(double s_a, double measure, double p) {
  check_level(s_a, measure, p);
  if (s_a == 0.0) return 0.0;
  if (s_a == measure) return 1.0;
  const double q = 1.0 / (p - 1.0);
  const double a = std::pow(s_a, q);
  return a / (std::pow(measure - s_a, q) + a);
}

double h_p(double s, double measure, double p) {
  check_level(s, measure, p);
  const double q = 1.0 / (p - 1.0);
  return std::pow(s, q) + std::pow(measure - s, q);
}

double phi_p(double s, double measure, double p) {
  check_level(s, measure, p);
  if (s == 0.0 || s == measure) return 0.0;
  return s * (measure - s) / std::pow(h_p(s, measure, p), p - 1.0);
}

double phi_defect(double s, double t, double measure, double p) {
  return phi_p(s, measure, p) + phi_p(t, measure, p) - phi_p(s + t, measure, p);
}

DefectSample additivity_residual(double s1, double s2, double t, double measure, double p) {
  if (!(s1 >= 0.0 && s2 >= 0.0 && t >= 0.0) || s1 + s2 + t > measure) {
    fail(ErrorKind::InvalidInput, "inadmissible triple: need s1, s2, t >= 0 and s1+s2+t <= |Omega|");
  }
  DefectSample d{s1, s2, t, 0.0};
  d.residual = phi_defect(s1 + s2, t, measure, p) - phi_defect(s1, t, measure, p) -
               phi_defect(s2, t, measure, p);
  return d;
}

const char* to_string(Verdict v) noexcept {
  return v == Verdict::RepresentableConsistent ? "REPRESENTABLE-CONSISTENT" : "NOT-REPRESENTABLE";
}

Certificate nonrepresentability_certificate(double p, double measure, double resolution,
                                            double tolerance) {
  if (!(resolution > 0.0 && resolution < 1.0)) {
    fail(ErrorKind::InvalidInput, "scan resolution must lie in (0,1)");
  }
  Certificate c;
  const double step = resolution * measure;
  const int steps = static_cast<int>(std::floor(1.0 / resolution + 1e-9));
  bool have = false;
  auto consider = [&](double s1, double s2, double t) {
    if (!(s1 > 0.0 && s2 > 0.0 && t > 0.0) || !(s1 + s2 + t < measure)) return;
    const DefectSample d = additivity_residual(s1, s2, t, measure, p);
    ++c.triples_scanned;
    const double a = std::abs(d.residual);
    const auto key = std::make_tuple(d.s1, d.s2, d.t);
    const auto best = std::make_tuple(c.witness.s1, c.witness.s2, c.witness.t);
    if (!have || a > c.max_abs_residual || (a == c.max_abs_residual && key < best)) {
      c.max_abs_residual = a;
      c.witness = d;
      have = true;
    }
  };
  for (int i = 1; i < steps; ++i) {
    for (int j = 1; i + j < steps; ++j) {
      for (int k = 1; i + j + k < steps; ++k) consider(i * step, j * step, k * step);
    }
  }
  // Local refinement around the current witness.
  double local = step;
  for (int round = 0; round < 4 && have; ++round) {
    local *= 0.5;
    const DefectSample centre = c.witness;
    for (int a = -2; a <= 2; ++a) {
      for (int b = -2; b <= 2; ++b) {
        for (int e = -2; e <= 2; ++e) {
          consider(centre.s1 + a * local, centre.s2 + b * local, centre.t + e * local);
        }
      }
    }
  }
  if (c.max_abs_residual <= tolerance) {
    c.verdict = Verdict::RepresentableConsistent;
    if (p == 2.0) c.implied = ImpliedRepresentation{1.0 / (2.0 * measure), 0.0, "|s-t|^2"};
  } else {
    c.verdict = Verdict::NotRepresentable;
  }
  return c;
}

double phi_second_derivative(double s, double measure, double p, double step) {
  return (phi_p(s + step, measure, p) - 2.0 * phi_p(s, measure, p) + phi_p(s - step, measure, p)) /
         (step * step);
}

SecondDerivativeProbe phi_second_derivative_probe(double p, double measure, std::size_t samples) {
  if (samples < 2) fail(ErrorKind::InvalidInput, "need at least two samples");
  const double step = 1e-4 * measure;
  SecondDerivativeProbe probe;
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = measure * (0.05 + 0.9 * static_cast<double>(i) / (samples - 1));
    const double v = phi_second_derivative(s, measure, p, step);
    if (i == 0) {
      probe.min = probe.max = v;
    } else {
      probe.min = std::min(probe.min, v);
      probe.max = std::max(probe.max, v);
    }
  }
  return probe;
}

IndicatorApproximation indicator_approx_check(const Domain& domain, const Box& set, double p) {
  const int d = domain.dim();
  for (int a = 0; a < d; ++a) {
    if (!(set.lower[a] >= domain.lower(a) && set.upper[a] <= domain.upper(a))) {
      fail(ErrorKind::InvalidInput, "set A must lie inside the domain");
    }
  }
  IndicatorApproximation out;
  const double h = domain.min_spacing();

  // Distance from an interior node of A to the complement of A (0 outside).
  auto inner_distance = [&](const Point& x) {
    double dist = INFINITY;
    for (int a = 0; a < d; ++a) {
      if (!(x[a] > set.lower[a] && x[a] < set.upper[a])) return 0.0;
      dist = std::min({dist, x[a] - set.lower[a], set.upper[a] - x[a]});
    }
    return dist;
  };

  std::size_t count = 0;
  GridFunction indicator = GridFunction::sample(domain, [&](const Point& x) {
    const bool in = inner_distance(x) > 0.0;
    count += in ? 1 : 0;
    return in ? 1.0 : 0.0;
  });
  for (int a = 0; a < d; ++a) {
    if (set.upper[a] - set.lower[a] < 2.0 * domain.spacing(a)) {
      fail(ErrorKind::Refusal, "set A is not resolved by the grid");
    }
  }
  if (count == 0) fail(ErrorKind::Refusal, "set A contains no grid nodes");

  auto energy = [&](const GridFunction& u) { return p_median(u, p).objective; };
  out.set_measure = static_cast<double>(count) * domain.cell_volume();
  out.direct = energy(indicator);
  out.closed_form = phi_p(out.set_measure, domain.measure(), p);

  out.scales = {8.0 * h, 2.0 * h, 0.5 * h};
  for (double delta : out.scales) {
    GridFunction uk = GridFunction::sample(domain, [&](const Point& x) {
      const double r = std::min(1.0, inner_distance(x) / delta);
      return r * r * (3.0 - 2.0 * r);
    });
    out.mollified.push_back(energy(uk));
  }
  out.monotone = true;
  for (std::size_t k = 1; k < out.mollified.size(); ++k) {
    if (std::abs(out.mollified[k] - out.direct) > std::abs(out.mollified[k - 1] - out.direct) + 1e-14) {
      out.monotone = false;
    }
  }
  const double scale = std::max(std::abs(out.direct), 1e-300);
  out.final_relative_gap = std::abs(out.mollified.back() - out.direct) / scale;
  return out;
}

}  // namespace nlvar
