#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobroot {

enum class ErrorKind {
  InvalidInput,
  InsufficientPrecision,
  IterationLimit,
  NotUnit,
  NotClosed,
  WildRamification,
  UnsupportedVariant,
  BoxTooLarge,
  BoxBoundaryHit,
  NonIntegralDegree,
  RepresentativeMismatch,
  Degenerate,
  Undetermined,
  Schema,
  Internal,
};

const char* to_string(ErrorKind kind);

/// Error raised by every library module. `module()` names the module that
/// detected the failure (arith, semilin, local, catalog, global, oracle, cli).
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, std::string module, const std::string& what);

  ErrorKind kind() const { return kind_; }
  const std::string& module() const { return module_; }

  /// Elementary-divisor exponents attached to NotUnit errors.
  std::vector<int64_t> divisors;

 private:
  ErrorKind kind_;
  std::string module_;
};

[[noreturn]] void fail(ErrorKind kind, const char* module, const std::string& what);

/// Writes a one-line warning to the diagnostic stream (stderr by default).
void warn(const std::string& message);
void set_warning_sink(void (*sink)(const std::string&));

}  // namespace frobroot
