#pragma once

#include "nlvar/energy.hpp"
#include "nlvar/grid.hpp"
#include "nlvar/kernel.hpp"
#include "nlvar/solve.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace nlvar {

enum class FamilyType { BallAverage, Strip };

/// Kernels indexed by a schedule: ball radii eps around `center`, or strip
/// indices k.
struct KernelFamily {
  Domain domain;
  FamilyType type = FamilyType::BallAverage;
  Point center{};
  SequenceSchedule schedule;

  Kernel at(std::size_t step) const;
  std::size_t size() const noexcept { return schedule.size(); }
};

/// Constant, cos(pi x1), cos(pi x2), and Gaussian bumps of width 0.1 at
/// (0.3, 0.3) and (0.7, 0.6), in coordinates rescaled to the unit box.
std::vector<LinearLoad> standard_loads(const Domain& domain);
std::vector<std::string> standard_load_names();

struct GammaRow {
  std::size_t step = 0;
  double parameter = 0.0;  // eps or k
  std::size_t load = 0;
  double min_value = 0.0;
  double minimizer_norm = 0.0;  // discrete L2 norm
  double gap = 0.0;             // |min_value - limit_min|
  double relative_gap = 0.0;    // gap / |limit_min| (gap itself if limit_min = 0)
  std::size_t iterations = 0;
  bool converged = false;
};

struct GammaSweepReport {
  GammaSweepReport(double p_, SequenceSchedule s) : p(p_), schedule(std::move(s)) {}

  double p = 0.0;
  SequenceSchedule schedule;
  std::vector<double> limit_min;          // per load
  std::vector<double> gradient_only_min;  // per load
  std::vector<GammaRow> rows;             // step-major
  std::vector<bool> eventually_decreasing;  // per load
  bool all_converged = true;

  const GammaRow& row(std::size_t step, std::size_t load) const;
  double final_relative_gap() const;  // max over loads at the last step
  bool trend() const;                 // every load eventually decreasing
};

/// Gaps are eventually decreasing when they are non-increasing from the
/// second step on (the whole sequence if it has fewer than three entries).
bool eventually_decreasing(const std::vector<double>& gaps);

GammaSweepReport gamma_sweep(double p, const KernelFamily& family,
                             const std::vector<LinearLoad>& loads,
                             const SolveOptions& options = {});

struct StripRow {
  double k = 0.0;
  double energy = 0.0;
  double nonlocal = 0.0;
  double gap = 0.0;  // |energy - limit|
};

struct StripReport {
  double limit = 0.0;  // 2 sum u^2 h^d + gradient term
  std::vector<StripRow> rows;
  bool decreasing = false;
};

/// F_k(u) for Strip{k} with p = 2 on the unit square, against the pointwise limit.
StripReport strip_example_check(const GridFunction& u, const SequenceSchedule& ks);

struct VanishingNuReport {
  std::vector<double> sup_defect;  // per compact: max over the family of defect / mass
  bool passes = false;
};

/// Nested boxes [lo + delta, hi - delta]^d for delta = L/4, L/8, ... down to 2h.
std::vector<Box> nested_compacts(const Domain& domain);

/// Passes when some compact brings the relative concentration defect below
/// `tolerance` for every kernel of the family.
VanishingNuReport vanishing_nu_check(const KernelFamily& family, const std::vector<Box>& compacts,
                                     double tolerance = 0.1);
VanishingNuReport vanishing_nu_check(const std::vector<Kernel>& kernels,
                                     const std::vector<Box>& compacts, double tolerance = 0.1);

struct JensenChain {
  double nonlocal = 0.0;      // kernel term
  double ball_mean = 0.0;     // sum w |u - mean_B u|^p
  double median_term = 0.0;   // sum w |u - m_p(u)|^p
  bool holds = false;
};

/// nonlocal >= ball_mean >= median_term for a BallAverage kernel.
JensenChain jensen_chain(const Kernel& ball, const GridFunction& u, double p);

struct RecoveryRow {
  double eps = 0.0;
  double energy = 0.0;    // F_k(u + m_p(u) v_k)
  double capacity = 0.0;  // energy of v_k
  double gap = 0.0;       // |energy - F(u)|
};

struct RecoveryReport {
  double limit = 0.0;
  std::vector<RecoveryRow> rows;
  bool decreasing = false;
};

/// Recovery sequence u_k = u + m_p(u) v_k with v_k the capacitary potential of
/// B(center, eps_k); u must vanish on every ball.
RecoveryReport recovery_check(const GridFunction& u, double p, const Point& center,
                              const SequenceSchedule& radii, const SolveOptions& options = {});

}  // namespace nlvar
