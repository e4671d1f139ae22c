#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frobroot/arith/rational.hpp"

namespace frobroot::cli {

inline constexpr int kSchemaVersion = 1;

enum class Mode { LocalIndex, Global, BoundOnly };

/// A parsed case file. Sheaf and module data stay as JSON until the field is
/// known, so command-line overrides of p and r apply before interpretation.
struct CaseFile {
  std::string name;
  uint32_t p = 5;
  uint32_t r = 1;
  int64_t precision = 64;
  uint32_t field_ext = 1;
  Mode mode = Mode::Global;
  bool oracle = false;
  nlohmann::json spec;   // mode global
  nlohmann::json local;  // mode local-index: {m, s, B}
  nlohmann::json bound;  // mode bound-only: {n, g, indices}
};

/// SchemaError on malformed input.
CaseFile parse_case(const nlohmann::json& j);
CaseFile load_case(const std::string& path);

/// example:shriek, example:quad-cover, example:elliptic(f[,p]).
std::optional<CaseFile> builtin_case(const std::string& name, uint32_t p, uint32_t r);

struct RunResult {
  nlohmann::ordered_json report;
  std::string table;
  int exit_code = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitOracle = 2;
inline constexpr int kExitSchema = 3;

/// Runs one case; domain and schema errors become an error report with the
/// matching exit code.
RunResult run_case(const CaseFile& c);

/// Random direct-sum specs for batch statistics.
std::vector<CaseFile> random_cases(uint32_t p, uint32_t r, size_t count, uint64_t seed);

/// Command-line entry point.
int main(int argc, char** argv);

}  // namespace frobroot::cli
