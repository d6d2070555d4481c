#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nlvar::detail {

// f(x), writing the gradient into g.
using Objective = std::function<double(std::span<const double> x, std::span<double> g)>;

// Stationarity measure of a gradient, compared against the tolerance.
using Residual = std::function<double(std::span<const double> g)>;

struct OptimizeResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t iterations = 0;
  double grad_sup = 0.0;  // residual(gradient) at x
  double relative_residual = 0.0;
  bool converged = false;
};

// Objective must be quadratic with a positive-definite Hessian.
OptimizeResult conjugate_gradient(const Objective& f, std::vector<double> x0, double rtol,
                                  std::size_t max_iterations, const Residual& residual);

// Positive diagonal approximating the Hessian at x; used as the initial
// inverse-Hessian scaling of L-BFGS when set.
using Diagonal = std::function<void(std::span<const double> x, std::span<double> diag)>;

struct LbfgsOptions {
  double gradient_tolerance = 1e-8;
  double decrease_tolerance = 1e-10;
  std::size_t max_iterations = 5000;
  int memory = 10;
};

OptimizeResult lbfgs(const Objective& f, std::vector<double> x0, const LbfgsOptions& options,
                     const Residual& residual, const Diagonal& diagonal = {});

}  // namespace nlvar::detail
