#pragma once

#include "nlvar/grid.hpp"
#include "nlvar/kernel.hpp"

#include <functional>
#include <optional>
#include <span>

namespace nlvar {

/// Determines an energy: gradient term plus one of no nonlocal term, a
/// kernel double sum, or the limit term sum |u - m_p(u)|^p.
class FunctionalSpec {
 public:
  enum class Kind { GradientOnly, WithKernel, Limit };

  static FunctionalSpec gradient_only(Domain domain, double p);
  static FunctionalSpec with_kernel(Kernel kernel, double p);
  static FunctionalSpec limit(Domain domain, double p);

  Kind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  const Domain& domain() const noexcept { return domain_; }
  const Kernel& kernel() const;  // throws unless kind() == WithKernel

  /// Upper bound M on the nonlocal weight mass: kernel mass, |Omega| for the
  /// limit term, 0 for the gradient-only energy.
  double nonlocal_mass() const;

 private:
  FunctionalSpec(Kind kind, Domain domain, double p, std::optional<Kernel> kernel);

  Kind kind_;
  Domain domain_;
  double p_;
  std::optional<Kernel> kernel_;
};

struct EnergyBreakdown {
  double nonlocal = 0.0;
  double gradient = 0.0;
  double total = 0.0;
};

/// Energy of u under any spec.
EnergyBreakdown evaluate(const FunctionalSpec& spec, const GridFunction& u);

/// F_k: requires a kernel spec.
EnergyBreakdown eval_Fk(const FunctionalSpec& spec, const GridFunction& u);

/// The limit functional: nonlocal slot sum_x w_x |u_x - m_p(u)|^p.
EnergyBreakdown eval_F_limit(double p, const GridFunction& u);

/// sum_{x,y} |u_x - u_y|^p a(x,y) w_x w_y; if `grad` is non-empty it receives
/// the derivative with respect to the interior values.
double kernel_energy(const Kernel& kernel, std::span<const double> u, double p,
                     std::span<double> grad = {});

/// The same double sum without any algebraic shortcut (O(N * support)); used
/// to cross-check the p = 2 moment formulas.
double kernel_energy_direct(const Kernel& kernel, std::span<const double> u, double p);

/// sum_x w_x |u_x - t|^p (boundary atom included) and, optionally, its
/// derivative in u (written to grad_u) and in t (returned via dt).
double level_energy(const Domain& domain, std::span<const double> u, double p, double t,
                    std::span<double> grad_u = {}, double* dt = nullptr);

/// Total energy and its gradient with respect to the interior values. For the
/// limit spec the level is m_p(u) and the gradient is the envelope gradient.
double energy_and_gradient(const FunctionalSpec& spec, std::span<const double> u,
                           std::span<double> grad);

struct BoundCheck {
  bool holds = false;
  double slack = 0.0;
};

/// total <= M osc(u)^p + gradient, with slack = rhs - total. For p = 2 this is
/// the classical oscillation bound; for p != 2 it is the power-p surrogate.
BoundCheck check_oscillation_bound(const FunctionalSpec& spec, const GridFunction& u, double M);

/// F(Psi(u)) <= F(u) + 1e-10; slack = F(u) - F(Psi(u)).
BoundCheck check_truncation_monotone(const FunctionalSpec& spec, const GridFunction& u,
                                     const std::function<double(double)>& psi);

/// F(u+v) + F(u-v) - 2F(u) - 2F(v).
double parallelogram_defect(const FunctionalSpec& spec, const GridFunction& u,
                            const GridFunction& v);

}  // namespace nlvar
