#include "frobroot/errors.hpp"

#include <atomic>
#include <iostream>

namespace frobroot {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::IterationLimit: return "IterationLimit";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::WildRamification: return "WildRamification";
    case ErrorKind::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorKind::BoxTooLarge: return "BoxTooLarge";
    case ErrorKind::BoxBoundaryHit: return "BoxBoundaryHit";
    case ErrorKind::NonIntegralDegree: return "NonIntegralDegree";
    case ErrorKind::RepresentativeMismatch: return "RepresentativeMismatch";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::Undetermined: return "Undetermined";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

DomainError::DomainError(ErrorKind kind, std::string module, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + " [" + module + "]: " + what),
      kind_(kind),
      module_(std::move(module)) {}

void fail(ErrorKind kind, const char* module, const std::string& what) {
  throw DomainError(kind, module, what);
}

namespace {
void default_sink(const std::string& message) { std::cerr << "warning: " << message << '\n'; }
std::atomic<void (*)(const std::string&)> g_sink{&default_sink};
}  // namespace

void warn(const std::string& message) { g_sink.load()(message); }

void set_warning_sink(void (*sink)(const std::string&)) { g_sink.store(sink ? sink : &default_sink); }

}  // namespace frobroot
