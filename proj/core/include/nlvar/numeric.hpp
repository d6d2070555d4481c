#pragma once

#include <cmath>
#include <span>

namespace nlvar {

/// Neumaier-compensated accumulator. All energy reductions go through this so
/// that results do not depend on anything but the (fixed) iteration order.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double compensated_sum(std::span<const double> xs) noexcept;

/// |x|^p. Integer and half-integer exponents avoid std::pow.
class AbsPower {
 public:
  explicit AbsPower(double p);

  double p() const noexcept { return p_; }

  double operator()(double x) const noexcept {
    const double a = std::abs(x);
    switch (mode_) {
      case Mode::Two:
        return a * a;
      case Mode::Integer:
        return ipow(a, ip_);
      case Mode::HalfInteger:
        return ipow(a, ip_) * std::sqrt(a);
      case Mode::General:
        break;
    }
    return a == 0.0 ? 0.0 : std::exp(p_ * std::log(a));
  }

  /// d/dx |x|^p = p |x|^{p-2} x, defined as 0 at x = 0.
  double derivative(double x) const noexcept {
    const double a = std::abs(x);
    if (a == 0.0) return 0.0;
    double mag;
    switch (mode_) {
      case Mode::Two:
        return 2.0 * x;
      case Mode::Integer:
        mag = ipow(a, ip_ - 1);
        break;
      case Mode::HalfInteger:
        // |x|^{p-1} = |x|^{ip-1} * sqrt|x|, ip = floor(p)
        mag = ipow(a, ip_ - 1) * std::sqrt(a);
        break;
      default:
        mag = std::exp((p_ - 1.0) * std::log(a));
        break;
    }
    return x > 0 ? p_ * mag : -p_ * mag;
  }

  /// (r2)^{p/2} for a squared Euclidean norm r2 >= 0.
  double of_squared(double r2) const noexcept {
    if (r2 <= 0.0) return 0.0;
    if (mode_ == Mode::Two) return r2;
    return (*this)(std::sqrt(r2));
  }

  /// p |g|^{p-2} given |g|^2, the factor multiplying g in the gradient of |g|^p.
  double gradient_factor_of_squared(double r2) const noexcept {
    if (r2 <= 0.0) return 0.0;
    if (mode_ == Mode::Two) return 2.0;
    const double r = std::sqrt(r2);
    return derivative(r) / r;
  }

  /// Calls f with a policy object whose `eval(x, value, derivative)` computes
  /// |x|^p and its derivative in one pass; the mode switch stays outside the
  /// caller's loop.
  template <class F>
  decltype(auto) visit(F&& f) const {
    switch (mode_) {
      case Mode::Two:
        return f(TwoPolicy{});
      case Mode::Integer:
        return f(IntegerPolicy{ip_, p_});
      case Mode::HalfInteger:
        return f(HalfIntegerPolicy{ip_, p_});
      case Mode::General:
        break;
    }
    return f(GeneralPolicy{p_});
  }

  struct TwoPolicy {
    void eval(double x, double& v, double& d) const noexcept {
      v = x * x;
      d = 2.0 * x;
    }
  };
  struct IntegerPolicy {
    int n;
    double p;
    void eval(double x, double& v, double& d) const noexcept {
      const double a = std::abs(x);
      const double m = ipow(a, n - 1);
      v = m * a;
      d = std::copysign(p * m, x);
    }
  };
  struct HalfIntegerPolicy {
    int n;
    double p;
    void eval(double x, double& v, double& d) const noexcept {
      const double a = std::abs(x);
      const double m = ipow(a, n - 1) * std::sqrt(a);  // |x|^{p-1}
      v = m * a;
      d = std::copysign(p * m, x);
    }
  };
  struct GeneralPolicy {
    double p;
    void eval(double x, double& v, double& d) const noexcept {
      const double a = std::abs(x);
      if (a == 0.0) {
        v = 0.0;
        d = 0.0;
        return;
      }
      const double m = std::exp((p - 1.0) * std::log(a));
      v = m * a;
      d = std::copysign(p * m, x);
    }
  };

 private:
  enum class Mode { Two, Integer, HalfInteger, General };

  static double ipow(double a, int n) noexcept {
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= a;
    return r;
  }

  double p_;
  int ip_ = 0;
  Mode mode_ = Mode::General;
};

}  // namespace nlvar
