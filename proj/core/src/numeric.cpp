#include "nlvar/numeric.hpp"

#include "nlvar/error.hpp"

#include <string>

namespace nlvar {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::ContractViolation: return "contract-violation";
    case ErrorKind::Refusal: return "refusal";
    case ErrorKind::Io: return "io";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

AbsPower::AbsPower(double p) : p_(p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    fail(ErrorKind::InvalidInput, "exponent p must be finite and > 1, got " + std::to_string(p));
  }
  if (p == 2.0) {
    mode_ = Mode::Two;
  } else if (p == std::floor(p) && p <= 16) {
    mode_ = Mode::Integer;
    ip_ = static_cast<int>(p);
  } else if (2.0 * p == std::floor(2.0 * p) && p <= 16) {
    mode_ = Mode::HalfInteger;
    ip_ = static_cast<int>(std::floor(p));
  }
}

}  // namespace nlvar
