#pragma once

#include "nlvar/energy.hpp"
#include "nlvar/grid.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

namespace nlvar {

/// Load density g paired as <g, u> = sum_i g_i u_i h^d.
class LinearLoad {
 public:
  explicit LinearLoad(GridFunction g);
  static LinearLoad zero(const Domain& domain);

  const GridFunction& density() const noexcept { return g_; }
  const Domain& domain() const noexcept { return g_.domain(); }
  double pairing(std::span<const double> u) const;
  bool is_zero() const noexcept;

 private:
  GridFunction g_;
};

struct SolveOptions {
  double cg_tolerance = 1e-10;        // relative residual, p = 2
  double gradient_tolerance = 1e-8;   // sup-norm of the gradient density, p != 2
  double decrease_tolerance = 1e-10;  // relative energy decrease, p != 2
  std::size_t cg_max_iterations = 0;  // 0 means 10 N
  std::size_t max_iterations = 5000;
  int memory = 10;
};

/// `gradient_residual` is the sup-norm of the objective gradient divided by
/// the cell volume h^d, i.e. of the gradient density.
struct SolveReport {
  explicit SolveReport(GridFunction u) : minimizer(std::move(u)) {}

  GridFunction minimizer;
  double energy = 0.0;      // objective: F(u) - <g,u>
  double functional = 0.0;  // F(u)
  std::size_t iterations = 0;
  double gradient_residual = 0.0;
  double relative_residual = 0.0;
  bool converged = false;
  std::optional<double> level;  // t for the joint limit problem
};

/// argmin F(u) - <g,u>. A limit spec is forwarded to minimize_limit.
SolveReport minimize(const FunctionalSpec& spec, const LinearLoad& load,
                     const std::optional<GridFunction>& warm_start = std::nullopt,
                     const SolveOptions& options = {});

/// Joint minimization over (u, t) of sum w|u - t|^p + gradient - <g,u>.
SolveReport minimize_limit(double p, const LinearLoad& load, const SolveOptions& options = {});

/// Discrete p-capacitary potential of the closed ball B(center, eps): v = 1 on
/// nodes in the ball, zero trace, 0 <= v <= 1. `energy` is the capacity.
SolveReport capacitary_potential(const Domain& domain, double p, double eps,
                                 const SolveOptions& options = {});
SolveReport capacitary_potential(const Domain& domain, double p, double eps, const Point& center,
                                 const SolveOptions& options = {});

/// Side of the square whose conformal radius at its centre is 1,
/// 4 pi^{3/2} / Gamma(1/4)^2. Small balls at its centre have the same p = 2
/// capacity asymptotics 2 pi / ln(1/eps) as in the unit disk.
double unit_conformal_square_side();

}  // namespace nlvar
