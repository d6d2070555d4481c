#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace nlvar::detail {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sup_norm(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

OptimizeResult conjugate_gradient(const Objective& f, std::vector<double> x0, double rtol,
                                  std::size_t max_iterations, const Residual& residual) {
  const std::size_t n = x0.size();
  OptimizeResult out;
  std::vector<double> zero(n, 0.0);
  std::vector<double> g0(n);
  const double f0 = f(zero, g0);
  const double bnorm = std::sqrt(dot(g0, g0));
  if (bnorm == 0.0) {
    out.x = std::move(zero);
    out.f = f0;
    out.converged = true;
    return out;
  }

  std::vector<double> x = std::move(x0);
  std::vector<double> r(n), p(n), ap(n), g(n);
  auto true_residual = [&] {
    f(x, g);
    for (std::size_t i = 0; i < n; ++i) r[i] = -g[i];
  };
  auto apply = [&](std::span<const double> v, std::span<double> av) {
    f(v, av);
    for (std::size_t i = 0; i < n; ++i) av[i] -= g0[i];
  };

  std::size_t it = 0;
  double rel = 0.0;
  while (true) {
    true_residual();
    rel = std::sqrt(dot(r, r)) / bnorm;
    if (rel <= rtol || it >= max_iterations) break;
    p = r;
    double rr = dot(r, r);
    while (it < max_iterations) {
      if (std::sqrt(rr) <= 0.5 * rtol * bnorm) break;
      apply(p, ap);
      const double pap = dot(p, ap);
      if (!(pap > 0.0)) break;
      const double a = rr / pap;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += a * p[i];
        r[i] -= a * ap[i];
      }
      ++it;
      if (it % 64 == 0) true_residual();
      const double rr_new = dot(r, r);
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
  }
  out.f = f(x, g);
  out.grad_sup = residual(g);
  out.relative_residual = rel;
  out.iterations = it;
  out.converged = rel <= rtol;
  out.x = std::move(x);
  return out;
}

OptimizeResult lbfgs(const Objective& f, std::vector<double> x0, const LbfgsOptions& options,
                     const Residual& residual, const Diagonal& diagonal) {
  const std::size_t n = x0.size();
  constexpr double kArmijo = 1e-4;
  std::vector<double> x = std::move(x0);
  std::vector<double> g(n), xn(n), gn(n), d(n), alpha;
  std::vector<double> inv_diag(diagonal ? n : 0);
  double fx = f(x, g);

  std::deque<std::vector<double>> S, Y;
  std::deque<double> rho;
  double rel_decrease = std::numeric_limits<double>::infinity();
  bool stalled = false;
  std::size_t it = 0;

  OptimizeResult out;
  while (true) {
    const double gsup = residual(g);
    if (gsup <= options.gradient_tolerance &&
        (rel_decrease <= options.decrease_tolerance || stalled || gsup == 0.0)) {
      out.converged = true;
      break;
    }
    if (stalled || it >= options.max_iterations) break;

    // Two-loop recursion.
    for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
    alpha.assign(S.size(), 0.0);
    for (std::size_t k = S.size(); k-- > 0;) {
      alpha[k] = rho[k] * dot(S[k], d);
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * Y[k][i];
    }
    if (diagonal) {
      diagonal(x, inv_diag);
      for (double& v : inv_diag) v = 1.0 / v;
      double h0 = 1.0;
      if (!S.empty()) {
        double yhy = 0.0;
        for (std::size_t i = 0; i < n; ++i) yhy += Y.back()[i] * inv_diag[i] * Y.back()[i];
        h0 = dot(S.back(), Y.back()) / yhy;
      }
      for (std::size_t i = 0; i < n; ++i) d[i] *= h0 * inv_diag[i];
    } else {
      const double h0 = S.empty() ? 1.0 / std::sqrt(dot(g, g))
                                  : dot(S.back(), Y.back()) / dot(Y.back(), Y.back());
      for (double& v : d) v *= h0;
    }
    for (std::size_t k = 0; k < S.size(); ++k) {
      const double b = rho[k] * dot(Y[k], d);
      for (std::size_t i = 0; i < n; ++i) d[i] += (alpha[k] - b) * S[k][i];
    }
    double gd = dot(g, d);
    if (!(gd < 0.0)) {
      S.clear();
      Y.clear();
      rho.clear();
      const double s = 1.0 / std::sqrt(dot(g, g));
      for (std::size_t i = 0; i < n; ++i) d[i] = -s * g[i];
      gd = dot(g, d);
    }

    // Armijo backtracking; near the optimum the energy is flat to rounding, so a
    // step that keeps f within noise and shrinks the gradient is also taken.
    double step = 1.0;
    bool accepted = false;
    double fn = fx;
    const double gsup_raw = sup_norm(g);
    for (int trial = 0; trial < 60; ++trial) {
      for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + step * d[i];
      fn = f(xn, gn);
      if (std::isfinite(fn)) {
        if (fn <= fx + kArmijo * step * gd) {
          accepted = true;
          break;
        }
        if (fn <= fx + 1e-14 * std::abs(fx) && sup_norm(gn) < gsup_raw) {
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!S.empty()) {
        S.clear();
        Y.clear();
        rho.clear();
        continue;
      }
      stalled = true;
      rel_decrease = 0.0;
      continue;
    }

    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-300) {
      if (static_cast<int>(S.size()) == options.memory) {
        S.pop_front();
        Y.pop_front();
        rho.pop_front();
      }
      S.push_back(std::move(s));
      Y.push_back(std::move(y));
      rho.push_back(1.0 / sy);
    }
    const double scale = std::max({std::abs(fx), std::abs(fn), 1e-300});
    rel_decrease = std::max(0.0, fx - fn) / scale;
    x.swap(xn);
    g.swap(gn);
    fx = fn;
    ++it;
  }
  out.f = fx;
  out.grad_sup = residual(g);
  out.iterations = it;
  out.x = std::move(x);
  return out;
}

}  // namespace nlvar::detail
