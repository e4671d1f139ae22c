// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "frobroot/arith/parse.hpp"
#include "frobroot/errors.hpp"
#include "frobroot/global/pipeline.hpp"
#include "frobroot/local/roots.hpp"
#include "frobroot/oracle/brute_force.hpp"
#include "frobroot/oracle/random.hpp"
#include "frobroot/oracle/topological.hpp"
#include "frobroot/semilin/semilin.hpp"

using namespace frobroot;
using arith::Fe;
using arith::FeMatrix;
using arith::FeVector;
using arith::Rational;
using catalog::Place;
using catalog::SheafSpec;
using global::CohomReport;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failures of one criterion.
struct Check {
  std::vector<std::string> failures;
  size_t count = 0;
  void expect(bool ok, const std::string& what) {
    ++count;
    if (!ok) failures.push_back(what);
  }
};

template <class T>
std::string str(const T& x) {
  std::ostringstream s;
  s << x;
  return s.str();
}
std::string str(const Rational& x) { return x.to_string(); }

std::vector<Rational> sorted_indices(const CohomReport& r) {
  std::vector<Rational> v;
  for (const auto& li : r.local_indices) v.push_back(li.index);
  std::sort(v.begin(), v.end());
  return v;
}

std::string summary(const CohomReport& r) {
  std::string s = "n=" + str(r.n) + " idx=[";
  for (const auto& x : sorted_indices(r)) s += x.to_string() + " ";
  s += "] deg=" + str(r.degree_root) + " split=[";
  for (auto d : r.splitting) s += str(d) + " ";
  s += "] h0=" + str(r.h0) + " h1=" + str(r.h1) + " chi=" + str(r.chi) + " bound=" + r.bound.to_string() +
       " eq=" + (r.equality ? "1" : "0");
  return s;
}

CohomReport run(const SheafSpec& spec) { return global::etale_chi(catalog::global_dual_of_sheaf(spec)); }

// Every generated global instance, for the inequality criterion.
struct Instance {
  std::string name;
  CohomReport report;
};
std::vector<Instance> g_instances;

CohomReport run_recorded(const std::string& name, const SheafSpec& spec) {
  CohomReport r = run(spec);
  g_instances.push_back({name, r});
  return r;
}

// ---- criterion 1 ----

void criterion1(Check& c) {
  for (uint32_t p : {5u, 7u, 11u, 13u})
    for (uint32_t r : {1u, 2u}) {
      auto F = arith::Field::get(p, r);
      const uint64_t q = F->twist();
      const std::string tag = "p=" + str(p) + " r=" + str(r);
      const auto t0 = Clock::now();
      const auto W = local::make_module(F.get(), 1, 0, {{"t^" + str((q - 1) / 2)}});
      const auto mr = local::minimal_root_detailed(W);
      const Rational idx = local::root_index(W, mr.lattice);
      const double secs = seconds_since(t0);
      c.expect(idx == Rational(1, 2), tag + ": index " + idx.to_string());
      c.expect(mr.lattice == local::Lattice::diagonal(F.get(), {-1}), tag + ": minimal root " + mr.lattice.to_string());
      c.expect(secs < 1.0, tag + ": took " + str(secs) + " s");
    }
}

// ---- criteria 2-4 ----

SheafSpec shriek_example(const arith::Field* F) {
  return SheafSpec::shriek(F, {Place::at(Fe{}), Place::infinity()}, 2);
}

void criterion2(Check& c) {
  for (uint32_t p : {5u, 7u}) {
    auto F = arith::Field::get(p, 1);
    const std::string tag = "p=" + str(p);
    const auto t0 = Clock::now();
    const auto spec = shriek_example(F.get());
    const auto r = run_recorded("shriek " + tag, spec);
    const auto o = oracle::chi_topological(spec);
    const double secs = seconds_since(t0);
    c.expect(sorted_indices(r) == std::vector<Rational>{Rational(2), Rational(2)}, tag + ": " + summary(r));
    c.expect(r.degree_root == 4, tag + ": degree " + str(r.degree_root));
    c.expect(r.bound == Rational(-2), tag + ": bound " + r.bound.to_string());
    c.expect(r.chi == -2, tag + ": chi " + str(r.chi));
    c.expect(r.equality, tag + ": equality flag");
    c.expect(o.chi_top == -2, tag + ": oracle " + str(o.chi_top));
    c.expect(secs < 5.0, tag + ": took " + str(secs) + " s");
  }
}

void criterion3(Check& c) {
  for (uint32_t p : {5u, 7u}) {
    auto F = arith::Field::get(p, 1);
    const std::string tag = "p=" + str(p);
    const auto t0 = Clock::now();
    const auto spec = SheafSpec::tame_cover(arith::parse_poly(F.get(), "x"));
    const auto r = run_recorded("quad-cover " + tag, spec);
    const double secs = seconds_since(t0);
    c.expect(sorted_indices(r) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)}, tag + ": " + summary(r));
    c.expect(r.bound == Rational(1), tag + ": bound " + r.bound.to_string());
    c.expect(r.chi == 1, tag + ": chi " + str(r.chi));
    c.expect(r.equality, tag + ": equality flag");
    c.expect(oracle::chi_topological(spec).chi_top == 1, tag + ": oracle");
    c.expect(secs < 5.0, tag + ": took " + str(secs) + " s");
  }
}

// Point count of y^2 = f(x) over F_p with one point at infinity (deg f = 3).
int64_t trace_of_frobenius(uint32_t p, const std::vector<int64_t>& f) {
  int64_t count = 1;
  for (int64_t x = 0; x < p; ++x) {
    int64_t v = 0;
    for (size_t i = f.size(); i-- > 0;) v = (v * x + f[i]) % p;
    for (int64_t y = 0; y < p; ++y)
      if (y * y % p == v) ++count;
  }
  return static_cast<int64_t>(p) + 1 - count;
}

void criterion4(Check& c) {
  struct Case {
    uint32_t p;
    const char* f;
    std::vector<int64_t> coeffs;
    bool ordinary;
  };
  const std::vector<Case> cases{{5, "x^3 + 1", {1, 0, 0, 1}, false},
                                {5, "x^3 + x", {0, 1, 0, 1}, true},
                                {7, "x^3 + 1", {1, 0, 0, 1}, true}};
  const auto t0 = Clock::now();
  for (const auto& k : cases) {
    auto F = arith::Field::get(k.p, 1);
    const std::string tag = "p=" + str(k.p) + " f=" + k.f;
    const auto fp = arith::parse_poly(F.get(), k.f);
    const auto spec = SheafSpec::tame_cover(fp);
    const auto r = run_recorded("elliptic " + tag, spec);
    const auto h = oracle::hasse_witt_genus1(fp);
    const auto o = oracle::chi_topological(spec);
    // supersingular iff p divides the trace of Frobenius
    const bool ordinary_by_count = trace_of_frobenius(k.p, k.coeffs) % k.p != 0;
    c.expect(h.ordinary == k.ordinary && ordinary_by_count == k.ordinary, tag + ": ordinarity");
    c.expect(r.bound == Rational(0), tag + ": bound " + r.bound.to_string());
    c.expect(r.chi == (k.ordinary ? 0 : 1), tag + ": chi " + str(r.chi));
    c.expect(r.equality == k.ordinary, tag + ": equality flag");
    c.expect(r.chi == 1 - h.p_rank, tag + ": Hasse-Witt oracle chi " + str(1 - h.p_rank));
    c.expect(o.chi_top == r.chi, tag + ": topological oracle " + str(o.chi_top));
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 10.0, "took " + str(secs) + " s");
}

// ---- criterion 5 ----

void criterion5(Check& c) {
  for (auto [p, r] : std::vector<std::pair<uint32_t, uint32_t>>{{5, 1}, {7, 1}, {5, 2}}) {
    auto F = arith::Field::get(p, r);
    const uint64_t q = F->twist();
    std::mt19937_64 rng(1000 * p + r);
    for (int it = 0; it < 50; ++it) {
      const auto W = oracle::random_monomial_module(F.get(), rng);
      const std::string tag = "q=" + str(q) + " #" + str(it) + " " + W.describe();
      try {
        local::MinimalRootOptions off;
        off.certify = local::Certification::Off;
        const auto greedy = local::minimal_root_detailed(W, off);
        const auto box = oracle::default_box(W, greedy.start);
        const auto brute = oracle::brute_force_minimal_root(W, box);
        c.expect(greedy.lattice == brute, tag + ": greedy " + greedy.lattice.to_string() + " brute " + brute.to_string());
        const auto filt = local::root_filtration(W, greedy.lattice, 3);
        bool scales = filt.colengths.size() == 3;
        for (size_t i = 1; scales && i < filt.colengths.size(); ++i)
          scales = filt.colengths[i] == static_cast<int64_t>(q) * filt.colengths[i - 1];
        c.expect(scales, tag + ": colengths do not scale by q");
        const auto sampled = oracle::sample_roots(W, oracle::exponent_box(W, -box.max_colength - 2, 2), 16, it);
        const auto more = oracle::sample_roots(W, box, 16, it + 7);
        bool contained = true;
        for (const auto* set : {&sampled, &more})
          for (const auto& L : *set) contained = contained && L.contains(greedy.lattice);
        c.expect(contained, tag + ": a sampled root misses the minimal root");
      } catch (const DomainError& e) {
        c.expect(false, tag + ": " + e.what());
      }
    }
  }
}

// ---- criterion 6 ----

bool same_report(const CohomReport& a, const CohomReport& b) {
  return a.n == b.n && sorted_indices(a) == sorted_indices(b) && a.degree_root == b.degree_root &&
         a.splitting == b.splitting && a.h0 == b.h0 && a.h1 == b.h1 && a.chi == b.chi && a.bound == b.bound &&
         a.equality == b.equality;
}

void check_global(Check& c, const std::string& tag, const SheafSpec& spec, const CohomReport& r) {
  Rational total(0);
  for (const auto& li : r.local_indices) total = total + li.index;
  c.expect(total == Rational(r.degree_root), tag + ": degree " + str(r.degree_root) + " vs sum " + total.to_string());
  c.expect(Rational(r.chi) >= r.bound, tag + ": chi below bound");
  const auto sw = run(catalog::swapped(spec));
  c.expect(same_report(r, sw), tag + ": swap changed " + summary(r) + " -> " + summary(sw));
  const auto ext = run(catalog::over(spec, *spec.field->extension(2)));
  c.expect(same_report(r, ext), tag + ": extension changed " + summary(r) + " -> " + summary(ext));
}

void criterion6(Check& c) {
  for (uint32_t p : {5u, 7u}) {
    auto F = arith::Field::get(p, 1);
    const auto a = shriek_example(F.get());
    check_global(c, "shriek p=" + str(p), a, run(a));
    const auto b = SheafSpec::tame_cover(arith::parse_poly(F.get(), "x"));
    check_global(c, "quad-cover p=" + str(p), b, run(b));
  }
  for (auto [p, f] : std::vector<std::pair<uint32_t, const char*>>{{5, "x^3 + 1"}, {5, "x^3 + x"}, {7, "x^3 + 1"}}) {
    auto F = arith::Field::get(p, 1);
    const auto s = SheafSpec::tame_cover(arith::parse_poly(F.get(), f));
    check_global(c, "elliptic p=" + str(p) + " " + f, s, run(s));
  }
  size_t sums = 0;
  for (auto [p, r] : std::vector<std::pair<uint32_t, uint32_t>>{{5, 1}, {7, 1}, {5, 2}}) {
    auto F = arith::Field::get(p, r);
    std::mt19937_64 rng(77 * p + r);
    for (int made = 0; made < 8;) {
      const auto spec = oracle::random_sheaf_spec(F.get(), rng);
      if (spec.kind != catalog::SheafKind::DirectSum) continue;
      ++made;
      const std::string tag = "q=" + str(F->twist()) + " " + spec.describe();
      try {
        check_global(c, tag, spec, run_recorded(tag, spec));
        ++sums;
      } catch (const DomainError& e) {
        c.expect(false, tag + ": " + e.what());
      }
    }
  }
  c.expect(sums >= 20, "only " + str(sums) + " random direct sums");
}

// ---- criterion 7 ----

// Rank over F_p of a matrix with entries in [0, p).
size_t rank_mod_p(std::vector<std::vector<int64_t>> a, int64_t p) {
  size_t rank = 0;
  const size_t cols = a.empty() ? 0 : a[0].size();
  for (size_t col = 0; col < cols && rank < a.size(); ++col) {
    size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    int64_t inv = 1;
    for (int64_t e = p - 2, b = a[rank][col]; e > 0; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (auto& x : a[rank]) x = x * inv % p;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == rank || a[i][col] == 0) continue;
      const int64_t f = a[i][col];
      for (size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// log_p of the number of x over op.field with op(x) = x, from the F_p-linear
// map x -> M x^(q) - x written out on an F_p-basis.
size_t fixed_points_log_p(const semilin::SemilinearOp& op) {
  const arith::Field& E = *op.field;
  const size_t n = op.dim(), D = E.degree();
  std::vector<std::vector<int64_t>> cols;
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < D; ++k) {
      std::vector<uint32_t> unit(D, 0);
      unit[k] = 1;
      FeVector v(n);
      v[i] = E.from_coords(unit);
      const FeVector w = op.apply(v);
      std::vector<int64_t> col;
      for (size_t j = 0; j < n; ++j) {
        const auto cw = E.coords(E.sub(w[j], v[j]));
        for (size_t l = 0; l < D; ++l) col.push_back(l < cw.size() ? cw[l] : 0);
      }
      cols.push_back(col);
    }
  return n * D - rank_mod_p(cols, E.p());
}

FeMatrix random_matrix(const arith::Field& F, size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> pick(0, F.size() - 1);
  FeMatrix m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = F.element(pick(rng));
  return m;
}

void criterion7(Check& c) {
  size_t operators = 0, big_extensions = 0;
  for (auto [p, r] : std::vector<std::pair<uint32_t, uint32_t>>{{5, 1}, {5, 2}, {7, 2}}) {
    auto F = arith::Field::get(p, r);
    std::mt19937_64 rng(31 * p + r);
    for (int it = 0; it < 70; ++it) {
      const size_t n = 1 + it % 4;
      const std::string tag = "q=" + str(F->twist()) + " #" + str(it) + " n=" + str(n);
      const char* stage = "rank";
      try {
        // rank stabilization and solver residuals on fully random operators
        const semilin::SemilinearOp op{F.get(), random_matrix(*F, n, rng)};
        const size_t rk = arith::rank(*F, op.power_matrix(n));
        c.expect(rk == arith::rank(*F, op.power_matrix(n + 1)), tag + ": rank does not stabilize");
        c.expect(semilin::ss_nil_dims(op).ss == rk, tag + ": ss");
        stage = "field solver";
        if (n <= 3) {
          const FeVector v = random_matrix(*F, n, rng).col(0);
          const auto sol = semilin::artin_schreier_solve_field(op, v);
          bool ok = true;
          if (sol.poly_field) {
            const auto& P = *sol.poly_field;
            for (size_t i = 0; i < n; ++i) {
              auto phi = P.zero();
              for (size_t j = 0; j < n; ++j) phi = P.add(phi, P.scale(P.frob(sol.poly_solution[j]), op.matrix(i, j)));
              ok = ok && P.sub(sol.poly_solution[i], phi) == P.from_base(v[i]);
            }
            ++big_extensions;
          } else {
            const auto big = op.base_change(*sol.field);
            const auto emb = arith::Embedding::get(*F, *sol.field);
            const FeVector phi = big.apply(sol.solution);
            for (size_t i = 0; i < n; ++i) ok = ok && sol.field->sub(sol.solution[i], phi[i]) == (*emb)(v[i]);
          }
          c.expect(ok, tag + ": field solver residual");
        }

        // fixed points over the splitting extension
        stage = "splitting";
        const auto sop = oracle::random_split_operator(F.get(), rng, n);
        const auto ss = semilin::ss_nil_dims(sop).ss;
        const auto sp = semilin::splitting_extension(sop);
        const size_t logp = fixed_points_log_p(sop.base_change(*sp.field));
        c.expect(logp == r * ss, tag + ": fixed points p^" + str(logp) + " vs p^(r ss) = p^" + str(r * ss));
        c.expect(sp.fixed.dim() == ss, tag + ": fixed basis size");

        stage = "series solver";
        // series solver: constant term from the split operator, random higher terms
        const int64_t prec = 24;
        arith::Matrix<semilin::Series> a(n, n);
        std::uniform_int_distribution<uint64_t> pick(0, F->size() - 1);
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j) {
            std::vector<semilin::Series::Term> terms;
            if (!sop.matrix(i, j).is_zero()) terms.push_back({0, sop.matrix(i, j)});
            for (int64_t e = 1; e < 4; ++e)
              if (const Fe x = F->element(pick(rng)); !x.is_zero()) terms.push_back({e, x});
            a(i, j) = semilin::Series(F.get(), terms);
          }
        std::vector<semilin::Series> b(n);
        for (size_t i = 0; i < n; ++i) {
          std::vector<semilin::Series::Term> terms;
          for (int64_t e = 0; e < 5; ++e)
            if (const Fe x = F->element(pick(rng)); !x.is_zero()) terms.push_back({e, x});
          b[i] = semilin::Series(F.get(), terms);
        }
        const auto ssol = semilin::artin_schreier_solve_series(a, b, prec);
        bool ok = true;
        if (ssol.poly_field) {
          // coefficientwise: x_m - sum_{j q + k = m} a_k^T x_j^q = b_m
          const auto& P = *ssol.poly_field;
          for (size_t i = 0; i < n; ++i)
            for (int64_t m = 0; m < prec; ++m) {
              auto lhs = ssol.coefficients[i][static_cast<size_t>(m)];
              for (int64_t j = 0; j * static_cast<int64_t>(F->twist()) <= m; ++j)
                for (size_t l = 0; l < n; ++l) {
                  const Fe coef = a(l, i).coeff(m - j * static_cast<int64_t>(F->twist()));
                  lhs = P.sub(lhs, P.scale(P.frob(ssol.coefficients[l][static_cast<size_t>(j)]), coef));
                }
              ok = ok && lhs == P.from_base(b[i].coeff(m));
            }
          ++big_extensions;
        } else {
          const auto emb = arith::Embedding::get(*F, *ssol.field);
          for (size_t i = 0; i < n; ++i) {
            semilin::Series lhs = ssol.solution[i];
            for (size_t j = 0; j < n; ++j) lhs = lhs - ssol.solution[j].frobenius() * semilin::embed(*emb, a(j, i));
            ok = ok && lhs.truncated(prec).agrees_with(semilin::embed(*emb, b[i]).truncated(prec)) &&
                 ssol.solution[i].precision() >= prec;
          }
        }
        c.expect(ok, tag + ": series solver residual");
        ++operators;
      } catch (const DomainError& e) {
        c.expect(false, tag + " (" + stage + "): " + e.what());
      }
    }
  }
  c.expect(operators >= 200, "only " + str(operators) + " operators");
  std::printf("   (%zu operators, %zu solves in polynomial-basis extensions)\n", operators, big_extensions);
}

// ---- criterion 8 ----

void criterion8(Check& c) {
  // further random global instances over several fields
  for (auto [p, r] : std::vector<std::pair<uint32_t, uint32_t>>{{5, 1}, {7, 1}, {11, 1}, {5, 2}}) {
    auto F = arith::Field::get(p, r);
    std::mt19937_64 rng(313 * p + r);
    for (int it = 0; it < 10; ++it) {
      const auto spec = oracle::random_sheaf_spec(F.get(), rng);
      try {
        run_recorded("q=" + str(F->twist()) + " " + spec.describe(), spec);
      } catch (const DomainError& e) {
        c.expect(false, spec.describe() + ": " + e.what());
      }
    }
  }
  size_t strict = 0;
  for (const auto& inst : g_instances) {
    c.expect(Rational(inst.report.chi) >= inst.report.bound, inst.name + ": " + summary(inst.report));
    c.expect(inst.report.equality == (Rational(inst.report.chi) == inst.report.bound), inst.name + ": equality flag");
    if (!inst.report.equality) ++strict;
  }
  c.expect(g_instances.size() >= 50, "only " + str(g_instances.size()) + " instances");
  // the exact examples: equality for 4.8, 4.9 and the ordinary curves, strict for the supersingular one
  size_t exact = 0;
  for (const auto& inst : g_instances) {
    const auto& n = inst.name;
    if (n.rfind("shriek", 0) == 0 || n.rfind("quad-cover", 0) == 0) {
      c.expect(inst.report.equality, n + ": expected equality");
      ++exact;
    } else if (n.rfind("elliptic", 0) == 0) {
      const bool supersingular = n == "elliptic p=5 f=x^3 + 1";
      c.expect(inst.report.equality != supersingular, n + ": equality flag");
      ++exact;
    }
  }
  c.expect(exact == 7, "exact examples seen: " + str(exact));
  std::printf("   (%zu global instances, %zu with strict inequality)\n", g_instances.size(), strict);
}

}  // namespace

int main() {
  set_warning_sink([](const std::string&) {});
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"1 local index of the quadratic twist", criterion1},
      {"2 extension by zero from two points", criterion2},
      {"3 double cover branched at 0 and infinity", criterion3},
      {"4 elliptic curves and the Hasse invariant", criterion4},
      {"5 random local modules: greedy vs brute force, filtration, sampled roots", criterion5},
      {"6 global invariants: degree, bound, swap and extension", criterion6},
      {"7 semilinear kernel on random operators", criterion7},
      {"8 lower bound on every generated instance", criterion8},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    const auto t0 = Clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("uncaught: ") + e.what());
    }
    const bool ok = c.failures.empty();
    if (!ok) ++failed;
    std::printf("criterion %s: %s (%zu checks, %.2f s)\n", name, ok ? "PASS" : "FAIL", c.count, seconds_since(t0));
    for (size_t i = 0; i < std::min<size_t>(c.failures.size(), 200); ++i) std::printf("   %s\n", c.failures[i].c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
