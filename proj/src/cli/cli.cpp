#include "frobroot/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "frobroot/arith/parse.hpp"
#include "frobroot/errors.hpp"
#include "frobroot/global/pipeline.hpp"
#include "frobroot/oracle/random.hpp"
#include "frobroot/oracle/topological.hpp"

namespace frobroot::cli {

using nlohmann::json;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  fail(ErrorKind::Schema, "cli", where + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing field '") + key + "'");
  return *it;
}

int64_t as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  return j.get<int64_t>();
}

uint32_t as_positive(const json& j, const std::string& where) {
  const int64_t v = as_int(j, where);
  if (v < 1 || v > 1'000'000) schema_error(where, "expected a positive integer");
  return static_cast<uint32_t>(v);
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; }) == allowed.end())
      schema_error(where, "unknown field '" + it.key() + "'");
}

void check_spec_shape(const json& j, const std::string& where) {
  const std::string type = as_string(require(j, "type", where), where + ".type");
  if (type == "constant") {
    check_keys(j, {"type", "rank"}, where);
    as_positive(require(j, "rank", where), where + ".rank");
  } else if (type == "shriek") {
    check_keys(j, {"type", "rank", "punctures"}, where);
    as_positive(require(j, "rank", where), where + ".rank");
    const json& ps = require(j, "punctures", where);
    if (!ps.is_array()) schema_error(where + ".punctures", "expected an array");
    for (size_t i = 0; i < ps.size(); ++i) as_string(ps[i], where + ".punctures[" + std::to_string(i) + "]");
  } else if (type == "tame-cover") {
    check_keys(j, {"type", "f"}, where);
    as_string(require(j, "f", where), where + ".f");
  } else if (type == "rank1-twist") {
    check_keys(j, {"type", "twists"}, where);
    const json& ts = require(j, "twists", where);
    if (!ts.is_array() || ts.empty()) schema_error(where + ".twists", "expected a nonempty array");
    for (size_t i = 0; i < ts.size(); ++i) {
      const std::string w = where + ".twists[" + std::to_string(i) + "]";
      check_keys(ts[i], {"place", "d"}, w);
      as_string(require(ts[i], "place", w), w + ".place");
      as_int(require(ts[i], "d", w), w + ".d");
    }
  } else if (type == "direct-sum") {
    check_keys(j, {"type", "parts"}, where);
    const json& ps = require(j, "parts", where);
    if (!ps.is_array() || ps.empty()) schema_error(where + ".parts", "expected a nonempty array");
    for (size_t i = 0; i < ps.size(); ++i) check_spec_shape(ps[i], where + ".parts[" + std::to_string(i) + "]");
  } else {
    schema_error(where + ".type", "unknown sheaf type '" + type + "'");
  }
}

void check_local_shape(const json& j) {
  check_keys(j, {"m", "s", "B"}, "local");
  const int64_t m = as_int(require(j, "m", "local"), "local.m");
  const int64_t s = as_int(require(j, "s", "local"), "local.s");
  if (m < 0 || s < 0 || m + s < 1) schema_error("local", "need m, s >= 0 and m + s >= 1");
  const json& B = require(j, "B", "local");
  if (!B.is_array() || B.size() != static_cast<size_t>(m + s)) schema_error("local.B", "expected n rows");
  for (size_t i = 0; i < B.size(); ++i) {
    if (!B[i].is_array() || B[i].size() != static_cast<size_t>(m + s))
      schema_error("local.B[" + std::to_string(i) + "]", "expected n entries");
    for (size_t k = 0; k < B[i].size(); ++k)
      as_string(B[i][k], "local.B[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
}

void check_bound_shape(const json& j) {
  check_keys(j, {"n", "g", "indices"}, "bound");
  as_positive(require(j, "n", "bound"), "bound.n");
  if (as_int(require(j, "g", "bound"), "bound.g") < 0) schema_error("bound.g", "genus must be >= 0");
  const json& idx = require(j, "indices", "bound");
  if (!idx.is_array()) schema_error("bound.indices", "expected an array");
  for (size_t i = 0; i < idx.size(); ++i) as_string(idx[i], "bound.indices[" + std::to_string(i) + "]");
}

arith::Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    size_t pos = 0;
    if (slash == std::string::npos) {
      const int64_t n = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return arith::Rational(n);
    }
    const int64_t n = std::stoll(s.substr(0, slash), &pos);
    if (pos != slash) throw std::invalid_argument(s);
    const std::string ds = s.substr(slash + 1);
    const int64_t d = std::stoll(ds, &pos);
    if (pos != ds.size()) throw std::invalid_argument(s);
    return arith::Rational(n, d);
  } catch (const std::logic_error&) {
    fail(ErrorKind::Schema, "cli", "malformed rational '" + s + "'");
  }
}

catalog::SheafSpec spec_from_json(const arith::Field* F, const json& j) {
  using catalog::SheafSpec;
  const std::string type = j.at("type").get<std::string>();
  if (type == "constant") return SheafSpec::constant(F, j.at("rank").get<size_t>());
  if (type == "shriek") {
    std::vector<catalog::Place> ys;
    for (const auto& s : j.at("punctures")) ys.push_back(catalog::parse_place(F, s.get<std::string>()));
    return SheafSpec::shriek(F, ys, j.at("rank").get<size_t>());
  }
  if (type == "tame-cover") return SheafSpec::tame_cover(arith::parse_poly(F, j.at("f").get<std::string>()));
  if (type == "rank1-twist") {
    std::vector<std::pair<catalog::Place, int64_t>> tw;
    for (const auto& t : j.at("twists"))
      tw.push_back({catalog::parse_place(F, t.at("place").get<std::string>()), t.at("d").get<int64_t>()});
    return SheafSpec::rank1_twist(F, tw);
  }
  std::vector<SheafSpec> parts;
  for (const auto& p : j.at("parts")) parts.push_back(spec_from_json(F, p));
  return SheafSpec::direct_sum(std::move(parts));
}

json spec_to_json(const catalog::SheafSpec& s) {
  using catalog::SheafKind;
  const arith::Field& F = *s.field;
  json j;
  j["type"] = catalog::to_string(s.kind);
  switch (s.kind) {
    case SheafKind::Constant: j["rank"] = s.rank; break;
    case SheafKind::Shriek: {
      j["rank"] = s.rank;
      j["punctures"] = json::array();
      for (const auto& y : s.punctures) j["punctures"].push_back(catalog::to_string(F, y));
      break;
    }
    case SheafKind::TameCover: j["f"] = s.f.to_string("x"); break;
    case SheafKind::Rank1Twist: {
      j["twists"] = json::array();
      for (const auto& [y, d] : s.twists) j["twists"].push_back({{"place", catalog::to_string(F, y)}, {"d", d}});
      break;
    }
    case SheafKind::DirectSum: {
      j["parts"] = json::array();
      for (const auto& p : s.parts) j["parts"].push_back(spec_to_json(p));
      break;
    }
  }
  return j;
}

ordered_json rational_json(const arith::Rational& x) { return ordered_json{{"num", x.num()}, {"den", x.den()}}; }

ordered_json header(const CaseFile& c) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["p"] = c.p;
  j["r"] = c.r;
  j["case"] = c.name;
  return j;
}

std::string join(const std::vector<int64_t>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

RunResult run_global(const CaseFile& c, const arith::Field* F) {
  RunResult res;
  const catalog::SheafSpec spec = spec_from_json(F, c.spec);
  const auto gm = catalog::global_dual_of_sheaf(spec);
  const auto rep = global::etale_chi(gm);

  ordered_json j = header(c);
  j["n"] = rep.n;
  j["local_indices"] = ordered_json::array();
  for (const auto& li : rep.local_indices)
    j["local_indices"].push_back({{"place", li.place}, {"num", li.index.num()}, {"den", li.index.den()}});
  j["degree_root"] = rep.degree_root;
  j["splitting"] = rep.splitting;
  j["h0"] = rep.h0;
  j["h1"] = rep.h1;
  j["chi"] = rep.chi;
  j["bound"] = rational_json(rep.bound);
  j["bound_ceil"] = rep.bound_ceil;
  j["equality"] = rep.equality;

  std::ostringstream t;
  t << "case " << c.name << "  (p=" << c.p << ", r=" << c.r << ", working field " << gm.field->describe() << ")\n";
  t << "  sheaf        " << gm.spec.describe() << "\n";
  t << "  place        index\n";
  for (const auto& li : rep.local_indices) t << "  " << li.place << std::string(13 - std::min<size_t>(12, li.place.size()), ' ') << li.index.to_string() << "\n";
  t << "  degree_root  " << rep.degree_root << "\n";
  t << "  splitting    [" << join(rep.splitting) << "]\n";
  t << "  h0 " << rep.h0 << "  h1 " << rep.h1 << "  chi " << rep.chi << "\n";
  t << "  bound        " << rep.bound.to_string() << "  (ceil " << rep.bound_ceil << ")  equality "
    << (rep.equality ? "true" : "false") << "\n";

  if (c.oracle) {
    ordered_json o;
    try {
      const auto orc = oracle::chi_topological(spec);
      o["chi_top"] = orc.chi_top;
      o["p_rank"] = orc.p_rank ? ordered_json(*orc.p_rank) : ordered_json(nullptr);
      t << "  oracle       chi_top " << orc.chi_top << "  (" << orc.details << ")\n";
      if (orc.chi_top != rep.chi) {
        res.exit_code = kExitOracle;
        t << "  ORACLE MISMATCH: pipeline chi " << rep.chi << " vs topological " << orc.chi_top << "\n";
      }
    } catch (const DomainError& e) {
      if (e.kind() != ErrorKind::UnsupportedVariant) throw;
      o["chi_top"] = nullptr;
      o["p_rank"] = nullptr;
      t << "  oracle       unavailable (" << e.what() << ")\n";
    }
    j["oracle"] = o;
  }
  res.report = std::move(j);
  res.table = t.str();
  return res;
}

RunResult run_local(const CaseFile& c, const arith::Field* F) {
  RunResult res;
  const size_t m = c.local.at("m").get<size_t>(), s = c.local.at("s").get<size_t>();
  std::vector<std::vector<std::string>> B;
  for (const auto& row : c.local.at("B")) B.push_back(row.get<std::vector<std::string>>());
  const auto W = local::make_module(F, m, s, B);
  local::check_unit(W);
  local::MinimalRootOptions opts;
  if (c.oracle) opts.certify = local::Certification::Required;
  const auto mr = local::minimal_root_detailed(W, opts);
  const auto idx = local::root_index(W, mr.lattice);
  const auto filt = local::root_filtration(W, mr.lattice, 2);
  const auto homs = local::local_invariant_homs(W, c.precision);

  ordered_json j = header(c);
  j["mode"] = "local-index";
  j["n"] = W.n();
  j["m"] = m;
  j["s"] = s;
  ordered_json basis = ordered_json::array();
  const auto& G = mr.lattice.basis();
  for (size_t i = 0; i < G.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (size_t k = 0; k < G.cols(); ++k) row.push_back(G(i, k).to_string("t"));
    basis.push_back(row);
  }
  j["minimal_root"] = basis;
  j["index"] = rational_json(idx);
  j["colengths"] = filt.colengths;
  j["invariant_homs"] = homs.dimension;
  j["certification"] = mr.certification;

  std::ostringstream t;
  t << "case " << c.name << "  (p=" << c.p << ", r=" << c.r << ", local module n=" << W.n() << ", m=" << m << ")\n";
  t << "  minimal root  " << mr.lattice.to_string() << "\n";
  t << "  index         " << idx.to_string() << "\n";
  t << "  colengths     [" << join(filt.colengths) << "]\n";
  t << "  invariant homs " << homs.dimension << "\n";
  t << "  certification " << mr.certification << "\n";
  res.report = std::move(j);
  res.table = t.str();
  return res;
}

RunResult run_bound(const CaseFile& c) {
  RunResult res;
  std::vector<arith::Rational> idx;
  for (const auto& s : c.bound.at("indices")) idx.push_back(parse_rational(s.get<std::string>()));
  const int64_t n = c.bound.at("n").get<int64_t>(), g = c.bound.at("g").get<int64_t>();
  const auto b = global::chi_lower_bound(n, g, idx);
  ordered_json j = header(c);
  j["mode"] = "bound-only";
  j["n"] = n;
  j["g"] = g;
  j["bound"] = rational_json(b);
  j["bound_ceil"] = b.ceil();
  res.report = std::move(j);
  res.table = "case " + c.name + "  bound " + b.to_string() + "  (ceil " + std::to_string(b.ceil()) + ")\n";
  return res;
}

}  // namespace

CaseFile parse_case(const json& j) {
  if (!j.is_object()) schema_error("case", "expected an object");
  check_keys(j, {"name", "p", "r", "precision", "field_ext", "mode", "oracle", "spec", "local", "bound"}, "case");
  CaseFile c;
  c.name = j.contains("name") ? as_string(j["name"], "case.name") : "unnamed";
  c.p = as_positive(require(j, "p", "case"), "case.p");
  c.r = j.contains("r") ? as_positive(j["r"], "case.r") : 1;
  if (j.contains("precision")) c.precision = as_positive(j["precision"], "case.precision");
  if (j.contains("field_ext")) c.field_ext = as_positive(j["field_ext"], "case.field_ext");
  if (j.contains("oracle")) {
    if (!j["oracle"].is_boolean()) schema_error("case.oracle", "expected a boolean");
    c.oracle = j["oracle"].get<bool>();
  }
  const std::string mode = j.contains("mode") ? as_string(j["mode"], "case.mode") : "global";
  if (mode == "global") {
    c.mode = Mode::Global;
    c.spec = require(j, "spec", "case");
    check_spec_shape(c.spec, "spec");
  } else if (mode == "local-index") {
    c.mode = Mode::LocalIndex;
    c.local = require(j, "local", "case");
    check_local_shape(c.local);
  } else if (mode == "bound-only") {
    c.mode = Mode::BoundOnly;
    c.bound = require(j, "bound", "case");
    check_bound_shape(c.bound);
  } else {
    schema_error("case.mode", "unknown mode '" + mode + "'");
  }
  return c;
}

CaseFile load_case(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Schema, "cli", "cannot read case file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Schema, "cli", path + ": " + e.what());
  }
  return parse_case(j);
}

std::optional<CaseFile> builtin_case(const std::string& name, uint32_t p, uint32_t r) {
  CaseFile c;
  c.name = name;
  c.p = p;
  c.r = r;
  c.mode = Mode::Global;
  if (name == "example:shriek") {
    c.spec = {{"type", "shriek"}, {"rank", 2}, {"punctures", {"0", "inf"}}};
    return c;
  }
  if (name == "example:quad-cover") {
    c.spec = {{"type", "tame-cover"}, {"f", "x"}};
    return c;
  }
  const std::string prefix = "example:elliptic";
  if (name.rfind(prefix, 0) == 0) {
    std::string args = name.substr(prefix.size());
    std::string f = "x^3 + 1";
    if (!args.empty()) {
      if (args.front() != '(' || args.back() != ')') fail(ErrorKind::Schema, "cli", "expected example:elliptic(f[,p])");
      args = args.substr(1, args.size() - 2);
      const auto comma = args.find(',');
      f = args.substr(0, comma);
      if (comma != std::string::npos) {
        try {
          c.p = static_cast<uint32_t>(std::stoul(args.substr(comma + 1)));
        } catch (const std::logic_error&) {
          fail(ErrorKind::Schema, "cli", "bad prime in " + name);
        }
      }
    }
    c.spec = {{"type", "tame-cover"}, {"f", f}};
    return c;
  }
  return std::nullopt;
}

RunResult run_case(const CaseFile& c) {
  try {
    const auto F = arith::Field::get(c.p, c.r, c.field_ext);
    switch (c.mode) {
      case Mode::Global: return run_global(c, F.get());
      case Mode::LocalIndex: return run_local(c, F.get());
      case Mode::BoundOnly: return run_bound(c);
    }
    fail(ErrorKind::Internal, "cli", "unknown mode");
  } catch (const DomainError& e) {
    RunResult res;
    res.exit_code = e.kind() == ErrorKind::Schema ? kExitSchema : kExitDomain;
    ordered_json j = header(c);
    j["error"] = {{"kind", to_string(e.kind())}, {"module", e.module()}, {"message", e.what()}};
    res.report = std::move(j);
    res.table = "case " + c.name + "  error: " + e.what() + "\n";
    return res;
  }
}

std::vector<CaseFile> random_cases(uint32_t p, uint32_t r, size_t count, uint64_t seed) {
  const auto F = arith::Field::get(p, r);
  std::mt19937_64 rng(seed);
  std::vector<CaseFile> out;
  for (size_t i = 0; i < count; ++i) {
    CaseFile c;
    c.name = "random:" + std::to_string(seed) + ":" + std::to_string(i);
    c.p = p;
    c.r = r;
    c.spec = spec_to_json(oracle::random_sheaf_spec(F.get(), rng));
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

std::vector<RunResult> run_parallel(const std::vector<CaseFile>& cases) {
  std::vector<RunResult> results(cases.size());
  std::atomic<size_t> next{0};
  const size_t workers = std::max<size_t>(1, std::min<size_t>(cases.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next++; i < cases.size(); i = next++) results[i] = run_case(cases[i]);
    });
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal roots, local indices and Euler characteristics of unit F-modules on P^1"};
  std::string input;
  std::optional<uint32_t> p, r, field_ext;
  std::optional<int64_t> precision;
  bool use_oracle = false;
  std::string json_path, batch_dir;
  uint64_t seed = 1;
  app.add_option("case", input,
                 "Case file, or a built-in: example:shriek, example:quad-cover, example:elliptic(f[,p]), random:<count>");
  app.add_option("--p", p, "Characteristic");
  app.add_option("--r", r, "Frobenius exponent (q = p^r)");
  app.add_option("--precision", precision, "Series precision for invariant homomorphisms");
  app.add_option("--field-ext", field_ext, "Extension degree of the working field over F_q");
  app.add_flag("--oracle", use_oracle, "Compare with the independent oracles (exit 2 on mismatch)");
  app.add_option("--json", json_path, "Write the JSON report here ('-' for stdout; a directory in batch mode)");
  app.add_option("--seed", seed, "Seed for random:<count>");
  app.add_option("--batch", batch_dir, "Run every *.json case in this directory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSchema;
  }

  auto apply_overrides = [&](CaseFile& c) {
    if (p) c.p = *p;
    if (r) c.r = *r;
    if (field_ext) c.field_ext = *field_ext;
    if (precision) c.precision = *precision;
    if (use_oracle) c.oracle = true;
  };

  std::vector<CaseFile> cases;
  std::vector<fs::path> outputs;
  try {
    if (!batch_dir.empty()) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(batch_dir))
        if (entry.path().extension() == ".json" && entry.path().string().find(".report.") == std::string::npos)
          files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        CaseFile c = load_case(f.string());
        apply_overrides(c);
        cases.push_back(std::move(c));
        const fs::path dir = json_path.empty() ? f.parent_path() : fs::path(json_path);
        outputs.push_back(dir / (f.stem().string() + ".report.json"));
      }
    } else if (input.rfind("random:", 0) == 0) {
      size_t count = 0;
      try {
        count = std::stoul(input.substr(7));
      } catch (const std::logic_error&) {
        fail(ErrorKind::Schema, "cli", "expected random:<count>");
      }
      cases = random_cases(p.value_or(5), r.value_or(1), count, seed);
      for (auto& c : cases) apply_overrides(c);
    } else if (!input.empty()) {
      std::optional<CaseFile> c = builtin_case(input, p.value_or(5), r.value_or(1));
      if (!c) c = load_case(input);
      apply_overrides(*c);
      cases.push_back(std::move(*c));
    } else {
      std::cerr << app.help();
      return kExitSchema;
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Schema ? kExitSchema : kExitDomain;
  }

  const std::vector<RunResult> results = run_parallel(cases);
  int exit_code = kExitOk;
  for (const auto& res : results) exit_code = std::max(exit_code, res.exit_code);
  // Keep stdout parseable when the JSON report goes there.
  std::ostream& human = json_path == "-" && outputs.empty() ? std::cerr : std::cout;
  for (const auto& res : results) human << res.table;

  if (!outputs.empty()) {
    std::error_code ec;
    if (!json_path.empty()) fs::create_directories(json_path, ec);
    for (size_t i = 0; i < results.size(); ++i)
      if (!write_file(outputs[i], results[i].report.dump(2) + "\n")) {
        std::cerr << "error: cannot write " << outputs[i] << "\n";
        exit_code = std::max(exit_code, kExitDomain);
      }
  } else if (!json_path.empty()) {
    const std::string text = results.size() == 1 ? results[0].report.dump(2) + "\n" : [&] {
      ordered_json arr = ordered_json::array();
      for (const auto& res : results) arr.push_back(res.report);
      return arr.dump(2) + "\n";
    }();
    if (json_path == "-") {
      std::cout << text;
    } else if (!write_file(json_path, text)) {
      std::cerr << "error: cannot write " << json_path << "\n";
      exit_code = std::max(exit_code, kExitDomain);
    }
  }

  if (results.size() > 1) {
    size_t ok = 0, eq = 0;
    for (const auto& res : results) {
      if (!res.report.contains("equality")) continue;
      ++ok;
      if (res.report["equality"].get<bool>()) ++eq;
    }
    human << "batch: " << results.size() << " cases, " << ok << " completed, equality in " << eq << "\n";
  }
  return exit_code;
}

}  // namespace frobroot::cli
