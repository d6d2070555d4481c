#pragma once

#include <stdexcept>
#include <string>

namespace nlvar {

enum class ErrorKind {
  InvalidInput,       // non-finite values, out-of-range parameters
  ShapeMismatch,      // grid functions or kernels on different domains
  ContractViolation,  // caller-supplied map breaks its contract (e.g. Psi(0) != 0)
  Refusal,            // request outside the regime where a claim is meaningful
  Io,
  Config,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace nlvar
