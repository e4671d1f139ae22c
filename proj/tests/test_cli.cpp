#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "frobroot/cli/cli.hpp"
#include "frobroot/errors.hpp"

using namespace frobroot;
using namespace frobroot::cli;
using json = nlohmann::ordered_json;

namespace {

CaseFile builtin(const std::string& name, uint32_t p, bool oracle = true) {
  auto c = builtin_case(name, p, 1);
  REQUIRE(c);
  c->oracle = oracle;
  return *c;
}

int run_main(std::vector<std::string> args) {
  args.insert(args.begin(), "frobroot");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("built-in examples") {
  for (uint32_t p : {5u, 7u}) {
    const auto sh = run_case(builtin("example:shriek", p));
    CHECK(sh.exit_code == kExitOk);
    CHECK(sh.report["chi"] == -2);
    CHECK(sh.report["bound"] == json{{"num", -2}, {"den", 1}});
    CHECK(sh.report["equality"] == true);
    CHECK(sh.report["degree_root"] == 4);
    CHECK(sh.report["oracle"]["chi_top"] == -2);

    const auto qc = run_case(builtin("example:quad-cover", p));
    CHECK(qc.report["chi"] == 1);
    CHECK(qc.report["bound"]["num"] == 1);
    CHECK(qc.report["equality"] == true);
    REQUIRE(qc.report["local_indices"].size() == 2);
    for (const auto& li : qc.report["local_indices"]) {
      CHECK(li["num"] == 1);
      CHECK(li["den"] == 2);
    }
  }
  const auto ell = run_case(builtin("example:elliptic(x^3+1)", 5));
  CHECK(ell.report["chi"] == 1);
  CHECK(ell.report["bound"]["num"] == 0);
  CHECK(ell.report["equality"] == false);
  CHECK(ell.report["oracle"]["p_rank"] == 0);
  const auto ell7 = run_case(builtin("example:elliptic(x^3+1,7)", 5));
  CHECK(ell7.report["p"] == 7);
  CHECK(ell7.report["chi"] == 0);
  CHECK(ell7.report["equality"] == true);
  CHECK_FALSE(builtin_case("example:nothing", 5, 1));
}

TEST_CASE("report layout") {
  const auto r = run_case(builtin("example:shriek", 5, false));
  std::vector<std::string> keys;
  for (auto it = r.report.begin(); it != r.report.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"schema_version", "p", "r", "case", "n", "local_indices", "degree_root",
                                         "splitting", "h0", "h1", "chi", "bound", "bound_ceil", "equality"});
  CHECK(r.report["schema_version"] == kSchemaVersion);
  CHECK(r.table.find("2") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
  for (const auto& c : random_cases(5, 1, 5, 42)) {
    const auto a = run_case(c).report.dump(), b = run_case(c).report.dump();
    CHECK(a == b);
  }
  const auto x = random_cases(7, 1, 3, 9), y = random_cases(7, 1, 3, 9);
  for (size_t i = 0; i < x.size(); ++i) CHECK(x[i].spec == y[i].spec);
}

TEST_CASE("case parsing") {
  const auto c = parse_case(json::parse(R"({"name": "t", "p": 7, "r": 2, "oracle": true,
      "spec": {"type": "rank1-twist", "twists": [{"place": "0", "d": 24}, {"place": "inf", "d": 24}]}})"));
  CHECK(c.p == 7);
  CHECK(c.r == 2);
  CHECK(c.mode == Mode::Global);
  CHECK(c.oracle);

  auto schema_kind = [](const char* text) {
    try {
      parse_case(json::parse(text));
    } catch (const DomainError& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  CHECK(schema_kind(R"({"spec": {"type": "constant", "rank": 1}})") == ErrorKind::Schema);
  CHECK(schema_kind(R"({"p": 5, "spec": {"type": "constant"}})") == ErrorKind::Schema);
  CHECK(schema_kind(R"({"p": 5, "spec": {"type": "cyclic", "rank": 1}})") == ErrorKind::Schema);
  CHECK(schema_kind(R"({"p": 5, "mode": "fast", "spec": {"type": "constant", "rank": 1}})") == ErrorKind::Schema);
  CHECK(schema_kind(R"({"p": 5, "extra": 1, "spec": {"type": "constant", "rank": 1}})") == ErrorKind::Schema);
  CHECK(schema_kind(R"({"p": 5, "mode": "local-index", "local": {"m": 1, "s": 0, "B": [["1", "2"]]}})") ==
        ErrorKind::Schema);
  CHECK(schema_kind(R"({"p": 5, "mode": "bound-only", "bound": {"n": 1, "g": -1, "indices": []}})") ==
        ErrorKind::Schema);
}

TEST_CASE("local-index and bound-only modes") {
  const auto loc = run_case(parse_case(json::parse(
      R"({"p": 11, "r": 2, "mode": "local-index", "local": {"m": 1, "s": 0, "B": [["t^60"]]}})")));
  CHECK(loc.exit_code == kExitOk);
  CHECK(loc.report["index"] == json{{"num", 1}, {"den", 2}});
  CHECK(loc.report["minimal_root"] == json{{"t^-1"}});
  CHECK(loc.report["colengths"] == json{60, 7260});

  const auto b = run_case(parse_case(json::parse(
      R"({"p": 5, "mode": "bound-only", "bound": {"n": 3, "g": 2, "indices": ["1/2", "2/3", "3"]}})")));
  // (1 - 2) * 3 - 1/2 - 2/3 - 3
  CHECK(b.report["bound"] == json{{"num", -43}, {"den", 6}});
  CHECK(b.report["bound_ceil"] == -7);
}

TEST_CASE("domain errors become error reports") {
  const auto r = run_case(parse_case(json::parse(R"({"p": 5, "spec": {"type": "tame-cover", "f": "x^2"}})")));
  CHECK(r.exit_code == kExitDomain);
  CHECK(r.report.contains("error"));
  CHECK(r.report["error"]["module"] == "catalog");
  const auto nc = run_case(parse_case(json::parse(
      R"({"p": 5, "mode": "local-index", "local": {"m": 0, "s": 1, "B": [["t^-1"]]}})")));
  CHECK(nc.exit_code == kExitDomain);
  CHECK(nc.report["error"]["module"] == "local");
}

TEST_CASE("command line exit codes") {
  const auto dir = std::filesystem::temp_directory_path() / "frobroot_test_cli";
  std::filesystem::create_directories(dir);
  const auto good = dir / "good.json", bad = dir / "bad.json", broken = dir / "broken.json";
  std::ofstream(good) << R"({"p": 5, "spec": {"type": "constant", "rank": 2}})";
  std::ofstream(bad) << R"({"p": 5, "spec": {"type": "tame-cover", "f": "x^2"}})";
  std::ofstream(broken) << R"({"p": 5, "spec": )";
  CHECK(run_main({good.string()}) == kExitOk);
  CHECK(run_main({bad.string()}) == kExitDomain);
  CHECK(run_main({broken.string()}) == kExitSchema);
  CHECK(run_main({"example:shriek", "--p", "7", "--oracle"}) == kExitOk);
  CHECK(run_main({"example:shriek", "--bogus"}) == kExitSchema);

  const auto out = dir / "report.json";
  CHECK(run_main({good.string(), "--json", out.string()}) == kExitOk);
  std::ifstream in(out);
  const json rep = json::parse(in);
  CHECK(rep["chi"] == 2);
  std::filesystem::remove_all(dir);
}
