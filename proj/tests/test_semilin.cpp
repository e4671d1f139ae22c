#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "frobroot/errors.hpp"
#include "frobroot/semilin/semilin.hpp"

using namespace frobroot;
using namespace frobroot::semilin;
using arith::Embedding;

namespace {

FeMatrix random_matrix(const Field& F, size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> u(0, F.size() - 1);
  FeMatrix M(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) M(i, j) = F.element(u(rng));
  return M;
}

// Counts v with phi(v) = v by enumerating every vector over the field.
uint64_t count_fixed_points(const SemilinearOp& op) {
  const Field& F = *op.field;
  const size_t n = op.dim();
  uint64_t total = 1;
  for (size_t i = 0; i < n; ++i) total *= F.size();
  uint64_t count = 0;
  FeVector v(n);
  for (uint64_t idx = 0; idx < total; ++idx) {
    uint64_t x = idx;
    for (size_t i = 0; i < n; ++i) {
      v[i] = F.element(x % F.size());
      x /= F.size();
    }
    if (op.apply(v) == v) ++count;
  }
  return count;
}

uint64_t ipow(uint64_t b, uint64_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("ss/nil basic cases") {
  auto F = Field::get(5, 1);
  CHECK(ss_nil_dims({F.get(), arith::identity(*F, 3)}).ss == 3);
  FeMatrix N(3, 3);
  N(0, 1) = F->one();
  N(1, 2) = F->from_int(3);
  CHECK(ss_nil_dims({F.get(), N}).ss == 0);
  CHECK(ss_nil_dims({F.get(), N}).nil == 3);
  FeMatrix D(2, 2);
  D(0, 0) = F->one();
  const auto sn = ss_nil_dims({F.get(), D});
  CHECK(sn.ss == 1);
  CHECK(sn.nil == 1);
}

TEST_CASE("fixed space and splitting of a generator") {
  for (uint32_t r : {1u}) {
    auto F = Field::get(5, r);
    FeMatrix M(1, 1);
    M(0, 0) = F->generator();
    const SemilinearOp op{F.get(), M};
    CHECK(fixed_space(op).dim() == 0);
    const auto sp = splitting_extension(op);
    // c^{q-1} = a^{-1} is solvable exactly when the extension degree e has
    // (q^e - 1)/(q - 1) divisible by q - 1, i.e. e a multiple of q - 1.
    CHECK(sp.degree == F->twist() - 1);
    CHECK(sp.fixed.dim() == 1);
    // Enumeration over smaller degrees finds no nonzero fixed point.
    for (uint32_t e = 1; e < sp.degree && ipow(F->size(), e) <= 400000; ++e)
      CHECK(count_fixed_points(op.base_change(*F->extension(e))) == 1);
  }
  // Over F_25 the required degree is 24, beyond the field tables.
  auto F = Field::get(5, 2);
  FeMatrix M(1, 1);
  M(0, 0) = F->generator();
  CHECK_THROWS_AS(splitting_extension({F.get(), M}), DomainError);
}

TEST_CASE("identity and nilpotent splitting") {
  auto F = Field::get(7, 1);
  CHECK(splitting_extension({F.get(), arith::identity(*F, 2)}).degree == 1);
  CHECK(fixed_space({F.get(), arith::identity(*F, 2)}).dim() == 2);
  FeMatrix N(2, 2);
  N(0, 1) = F->one();
  CHECK(splitting_extension({F.get(), N}).degree == 1);
  CHECK(fixed_space({F.get(), N}).dim() == 0);
}

TEST_CASE("artin-schreier over fields") {
  auto F = Field::get(5, 1);
  FeMatrix Z(2, 2);
  const FeVector v{F->one(), F->from_int(3)};
  CHECK(artin_schreier_solve_field({F.get(), Z}, v).solution == v);
  CHECK(artin_schreier_solve_field({F.get(), arith::identity(*F, 2)}, FeVector(2)).solution == FeVector(2));
  // x - x^p = 1 has no root in F_p; it has one in F_{p^p}.
  for (uint32_t p : {3u, 5u}) {
    auto Fp = Field::get(p, 1);
    const SemilinearOp op{Fp.get(), arith::identity(*Fp, 1)};
    const auto sol = artin_schreier_solve_field(op, {Fp->one()});
    CHECK(sol.degree == p);
    const Field& E = *sol.field;
    const Fe x = sol.solution[0];
    CHECK(E.sub(x, E.pow_u(x, p)) == E.one());
    for (uint64_t i = 0; i < Fp->size(); ++i) {
      const Fe y = Fp->element(i);
      CHECK(Fp->sub(y, Fp->pow_u(y, p)) != Fp->one());
    }
  }
}

TEST_CASE("artin-schreier over power series") {
  auto F = Field::get(5, 1);
  const Field* f = F.get();
  arith::Matrix<Series> a(1, 1, Series::monomial(f, f->one(), 1));
  const std::vector<Series> b{Series::one(f)};
  const auto sol = artin_schreier_solve_series(a, b, 30);
  const Series& x = sol.solution[0];
  CHECK(x.coeff(0) == f->one());
  CHECK(x.coeff(1) == f->one());
  CHECK(x.coeff(6) == f->one());
  CHECK((x - x.frobenius() * a(0, 0)).agrees_with(b[0]));
  CHECK(x.precision() >= 30);

  arith::Matrix<Series> zero(1, 1, Series(f));
  CHECK(artin_schreier_solve_series(zero, b, 10).solution[0].agrees_with(b[0]));
  arith::Matrix<Series> ident(1, 1, Series::one(f));
  CHECK(artin_schreier_solve_series(ident, {Series(f)}, 10).solution[0].is_zero());
}

TEST_CASE("random operators: stabilization, fixed points, solver residuals") {
  std::mt19937_64 rng(11);
  size_t tested = 0;
  for (auto [p, r] : std::vector<std::pair<uint32_t, uint32_t>>{{5, 1}, {5, 2}, {7, 2}}) {
    auto F = Field::get(p, r);
    for (int it = 0; it < 10; ++it) {
      const size_t n = 1 + it % 3;
      const SemilinearOp op{F.get(), random_matrix(*F, n, rng)};
      const auto& Fr = *F;
      CHECK(arith::rank(Fr, op.power_matrix(n)) == arith::rank(Fr, op.power_matrix(n + 1)));
      CHECK(arith::rank(Fr, op.power_matrix(n)) == arith::rank(Fr, op.power_matrix(n + 3)));
      const auto sn = ss_nil_dims(op);
      // Conjugation and base change leave ss unchanged.
      FeMatrix G = random_matrix(*F, n, rng);
      if (arith::inverse(Fr, G)) CHECK(ss_nil_dims(op.conjugate(G)).ss == sn.ss);
      CHECK(ss_nil_dims(op.base_change(*F->extension(2))).ss == sn.ss);
      const FeVector v = random_matrix(*F, n, rng).col(0);
      const auto sol = artin_schreier_solve_field(op, v);
      const auto big = op.base_change(*sol.field);
      const auto emb = Embedding::get(*F, *sol.field);
      FeVector ve(n);
      for (size_t i = 0; i < n; ++i) ve[i] = (*emb)(v[i]);
      const FeVector phi = big.apply(sol.solution);
      for (size_t i = 0; i < n; ++i) CHECK(sol.field->sub(sol.solution[i], phi[i]) == ve[i]);
      ++tested;
    }
  }
  CHECK(tested == 30);
}

TEST_CASE("fixed-point count over the splitting field matches enumeration") {
  std::mt19937_64 rng(5);
  auto F = Field::get(5, 1);
  std::uniform_int_distribution<int> pick(0, 4);
  for (int it = 0; it < 12; ++it) {
    // diag(u, 0 or v) with u, v of order dividing 4, conjugated at random.
    FeMatrix D(2, 2);
    D(0, 0) = F->from_int(1 + pick(rng) % 4);
    D(1, 1) = F->from_int(pick(rng) % 5);
    FeMatrix G = random_matrix(*F, 2, rng);
    if (!arith::inverse(*F, G)) G = arith::identity(*F, 2);
    const SemilinearOp op = SemilinearOp{F.get(), D}.conjugate(G);
    const auto sp = splitting_extension(op);
    if (ipow(sp.field->size(), 2) > 400000) continue;
    const auto big = op.base_change(*sp.field);
    CHECK(count_fixed_points(big) == ipow(5, ss_nil_dims(op).ss));
  }
}

TEST_CASE("irreducibility test against root enumeration") {
  auto F = Field::get(5, 1);
  const Field* f = F.get();
  // degree 2 and 3: irreducible iff no roots
  for (uint32_t deg : {2u, 3u})
    for (uint32_t code = 0; code < (deg == 2 ? 25u : 125u); ++code) {
      std::vector<Fe> c;
      for (uint32_t i = 0, x = code; i < deg; ++i, x /= 5) c.push_back(f->from_int(x % 5));
      c.push_back(f->one());
      const arith::Poly m(f, c);
      CHECK(arith::is_irreducible(m) == arith::roots(m).empty());
    }
  // (x^2 + 2)^2 has no roots but is reducible
  const arith::Poly sq(f, {f->from_int(4), Fe{}, f->from_int(4), Fe{}, f->one()});
  CHECK(arith::roots(sq).empty());
  CHECK_FALSE(arith::is_irreducible(sq));
}

TEST_CASE("polynomial-basis extension arithmetic") {
  auto F = Field::get(5, 1);
  const auto P = arith::PolyExtension::get(*F, 2);
  CHECK(P->degree() == 2);
  std::vector<arith::PolyExtension::Elem> all;
  for (uint32_t code = 0; code < 25; ++code) all.push_back(P->from_coords({code % 5, code / 5}));
  const auto one = P->from_base(F->one());
  for (const auto& a : all) {
    CHECK(P->frob(P->frob(a)) == a);
    // frob is the 5-th power
    auto a5 = one;
    for (int i = 0; i < 5; ++i) a5 = P->mul(a5, a);
    CHECK(P->frob(a) == a5);
    if (P->is_zero(a)) continue;
    auto a24 = one;
    for (int i = 0; i < 24; ++i) a24 = P->mul(a24, a);
    CHECK(a24 == one);
  }
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<size_t> pick(0, 24);
  for (int it = 0; it < 50; ++it) {
    const auto &a = all[pick(rng)], &b = all[pick(rng)], &c = all[pick(rng)];
    CHECK(P->mul(P->mul(a, b), c) == P->mul(a, P->mul(b, c)));
    CHECK(P->mul(a, P->add(b, c)) == P->add(P->mul(a, b), P->mul(a, c)));
    CHECK(P->frob(P->mul(a, b)) == P->mul(P->frob(a), P->frob(b)));
  }
}

TEST_CASE("artin-schreier beyond the table capacity") {
  // x - x^25 = 1 over F_25 needs F_{25^5}, which has more than 2^23 elements.
  auto F = Field::get(5, 2);
  const SemilinearOp op{F.get(), arith::identity(*F, 1)};
  const auto sol = artin_schreier_solve_field(op, {F->one()});
  CHECK(sol.degree == 5);
  REQUIRE(sol.poly_field);
  CHECK_FALSE(sol.field);
  const auto& P = *sol.poly_field;
  const auto& x = sol.poly_solution[0];
  CHECK(P.sub(x, P.frob(x)) == P.from_base(F->one()));

  arith::Matrix<Series> a(1, 1, Series::one(F.get()));
  const auto s = artin_schreier_solve_series(a, {Series::one(F.get()) + Series::monomial(F.get(), F->one(), 3)}, 60);
  REQUIRE(s.poly_field);
  const auto& c = s.coefficients[0];
  REQUIRE(c.size() == 60);
  // x_m - x_{m/25}^25 = b_m
  for (size_t m = 0; m < 60; ++m) {
    auto lhs = c[m];
    if (m % 25 == 0) lhs = s.poly_field->sub(lhs, s.poly_field->frob(c[m / 25]));
    CHECK(lhs == s.poly_field->from_base(m == 0 || m == 3 ? F->one() : Fe{}));
  }
}
