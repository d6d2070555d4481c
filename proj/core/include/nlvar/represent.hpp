#pragma once

#include "nlvar/grid.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nlvar {

/// Values with nonnegative quadrature weights.
struct WeightedSample {
  std::vector<double> values;
  std::vector<double> weights;

  /// Interior nodes plus the zero-valued boundary atom.
  static WeightedSample of(const GridFunction& u);
  /// 1 on a set of measure s, 0 on the rest of a set of measure `measure`.
  static WeightedSample two_level(double s, double measure);
  double total_weight() const;
};

struct PMedianResult {
  double t = 0.0;
  double objective = 0.0;   // sum w |u - t|^p
  double derivative = 0.0;  // d/dt of the objective at t
  int iterations = 0;
};

/// m_p: the unique minimiser of t -> sum w |u_i - t|^p, by bisection on the
/// (increasing) derivative over [min u, max u].
PMedianResult p_median(const WeightedSample& sample, double p);
PMedianResult p_median(const GridFunction& u, double p);

/// max over `trials` random directions xi (entries uniform in [-1,1]) of
/// |m_p(u + delta xi) - m_p(u)|.
double m_p_continuity_probe(const GridFunction& u, double p, double delta, int trials,
                            std::uint64_t seed);

/// m_p(1_A) as a function of |A|.
double m_p_indicator(double s_a, double measure, double p);

/// Phi_p(s) = s(|O|-s) / ((|O|-s)^{1/(p-1)} + s^{1/(p-1)})^{p-1}, the value of
/// sum |1_A - m_p(1_A)|^p for |A| = s.
double phi_p(double s, double measure, double p);

/// h_p(s) = s^{1/(p-1)} + (|O|-s)^{1/(p-1)}.
double h_p(double s, double measure, double p);

/// D(s,t) = Phi_p(s) + Phi_p(t) - Phi_p(s+t).
double phi_defect(double s, double t, double measure, double p);

struct DefectSample {
  double s1 = 0.0;
  double s2 = 0.0;
  double t = 0.0;
  double residual = 0.0;  // D(s1+s2,t) - D(s1,t) - D(s2,t)
};

DefectSample additivity_residual(double s1, double s2, double t, double measure, double p);

enum class Verdict { RepresentableConsistent, NotRepresentable };
const char* to_string(Verdict v) noexcept;

/// The representation forced in the quadratic case: mu = density * Lebesgue
/// on O x O, nu = 0, f(s,t) = |s-t|^2.
struct ImpliedRepresentation {
  double mu_density = 0.0;
  double nu_mass = 0.0;
  std::string integrand = "|s-t|^2";
};

struct Certificate {
  Verdict verdict = Verdict::RepresentableConsistent;
  double max_abs_residual = 0.0;
  DefectSample witness;
  std::size_t triples_scanned = 0;
  std::optional<ImpliedRepresentation> implied;
};

/// Scans admissible triples (s1, s2, t) on a lattice of step
/// `resolution * measure`, then refines around the worst triple. Ties break
/// towards the lexicographically smallest triple.
Certificate nonrepresentability_certificate(double p, double measure, double resolution = 0.05,
                                            double tolerance = 1e-10);

struct SecondDerivativeProbe {
  double min = 0.0;
  double max = 0.0;
  double spread() const { return max - min; }
};

/// Central-difference Phi_p'' on [0.05, 0.95] * measure.
double phi_second_derivative(double s, double measure, double p, double step);
SecondDerivativeProbe phi_second_derivative_probe(double p, double measure,
                                                  std::size_t samples = 181);

struct IndicatorApproximation {
  double direct = 0.0;       // sum |1_A - m_p(1_A)|^p on the grid
  double closed_form = 0.0;  // Phi_p(discrete |A|)
  double set_measure = 0.0;
  std::vector<double> scales;     // mollification widths, decreasing
  std::vector<double> mollified;  // value along the approximants
  double final_relative_gap = 0.0;
  bool monotone = false;  // |mollified - direct| non-increasing
};

/// Compares the direct value on 1_A with the values along smooth
/// approximants 0 <= u_k <= 1_A, u_k -> 1_A (three widths 8h, 2h, h/2).
IndicatorApproximation indicator_approx_check(const Domain& domain, const Box& set, double p);

}  // namespace nlvar
