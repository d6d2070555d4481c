#pragma once

#include "nlvar/grid.hpp"
#include "nlvar/kernel.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace nlvar {

/// Checkerboard of period beta and offset alpha, lifted along `axis`.
struct CheckerboardParams {
  double alpha = 0.0;
  double beta = 1.0;
  int axis = 0;
};

/// floor((x - alpha)/beta) is even.
bool in_A(double x, const CheckerboardParams& c);
/// floor((x - alpha)/beta) + floor((y - alpha)/beta) is odd.
bool in_E(double x, double y, const CheckerboardParams& c);

/// Length of {alpha in [0,beta) : (0,z) in E_{alpha,beta}} = |z - 2 m beta|,
/// m = floor((z/beta + 1)/2).
double gamma_z(double z, double beta);

/// The same length estimated from `samples` midpoint offsets.
double gamma_z_sampling_oracle(double z, double beta, std::size_t samples);

/// Exact integral of gamma_z over beta in [a, b] (piecewise affine with kinks
/// at |z|/j).
double gamma_integral(double z, double a, double b);

/// Integral of gamma_z over [eps, 2 eps].
double covering_average(double z, double eps);

/// |D_eps| = 3 eps^2 / 2.
double d_eps_measure(double eps);

/// Triangle comparison for m >= 2:
/// int_{|z|/2m}^{|z|/(2m-2)} gamma - int_{|z|/(2m+1)}^{|z|/(2m-1)} (beta - gamma).
double triangle_comparison_slack(double z, int m);

/// covering_average(z, eps) - (|D_eps|/2 - |z| eps / k^2), k = min{m : |z|/2m < 2 eps}.
double averaged_lower_bound_slack(double z, double eps);

/// covering_average(z, eps) - (1/2 - eta) |D_eps|.
double covering_slack(double z, double eps, double eta);

struct MeasureEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 0.0;
};

/// Nonnegative weights on pairs of points; construction merges duplicates and
/// refuses asymmetric weights or mass on the diagonal.
class DiscreteMeasure {
 public:
  DiscreteMeasure(int dim, std::vector<Point> points, std::vector<MeasureEntry> entries);
  static DiscreteMeasure on_grid(const Domain& domain, std::vector<MeasureEntry> entries);
  static DiscreteMeasure from_csv(const Domain& domain, std::istream& in);
  static DiscreteMeasure from_csv(const Domain& domain, const std::string& path);

  int dim() const noexcept { return dim_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<MeasureEntry>& entries() const noexcept { return entries_; }
  double total_mass() const;

 private:
  int dim_;
  std::vector<Point> points_;
  std::vector<MeasureEntry> entries_;
};

/// mu of the pairs (x,y) with (x_axis, y_axis) in E_{alpha,beta}.
double checkerboard_mass(const DiscreteMeasure& mu, const CheckerboardParams& c);

struct CheckerboardScan {
  double eps = 0.0;
  int alpha_samples = 64;
  int beta_samples = 16;
};

/// Offsets alpha_a = (a + 1/2) beta / A and periods beta_b = eps (1 + (b + 1/2)/B).
std::vector<CheckerboardParams> checkerboard_samples(const CheckerboardScan& scan, int axis);

/// max over sampled (alpha, beta, axis) of checkerboard_mass.
double checkerboard_sup(const DiscreteMeasure& mu, const CheckerboardScan& scan);

/// mu of the pairs with sup-norm distance > eta.
double off_diagonal_mass(const DiscreteMeasure& mu, double eta);

struct MassBound {
  double eta = 0.0;
  double m_star = 0.0;
  double off_mass = 0.0;
  double bound = 0.0;   // 2 d m_star / (1 - 2 eta)
  double ratio = 0.0;   // off_mass / bound (0 when both vanish)
  double slack = 0.0;   // bound - off_mass
  bool holds = false;
};

MassBound measure_mass_bound(const DiscreteMeasure& mu, double m_star, double eta,
                             double tolerance = 1e-12);

/// Full pipeline: eps = (3/64) eta^2, 64 x 16 samples per axis, then the bound.
MassBound measure_mass_bound(const DiscreteMeasure& mu, double eta = 0.25);

/// The double sum sum_{samples} sum_{pairs} mu_ij 1_E in both orders.
struct FubiniSums {
  double samples_outer = 0.0;
  double pairs_outer = 0.0;
};
FubiniSums fubini_surrogate(const DiscreteMeasure& mu, const CheckerboardScan& scan);

}  // namespace nlvar
