#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "frobroot/arith/linalg.hpp"
#include "frobroot/arith/parse.hpp"
#include "frobroot/errors.hpp"

using namespace frobroot;
using namespace frobroot::arith;

namespace {

// Remainder of a by monic b over F_p, coefficients low to high.
std::vector<uint32_t> rem_mod_p(std::vector<uint32_t> a, const std::vector<uint32_t>& b, uint32_t p) {
  while (a.size() >= b.size()) {
    const uint32_t c = a.back();
    const size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - (c * b[i]) % p) % p;
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible_by_trial(const std::vector<uint32_t>& f, uint32_t p) {
  const size_t D = f.size() - 1;
  for (size_t d = 1; d <= D / 2; ++d) {
    uint64_t count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
      std::vector<uint32_t> g(d + 1, 0);
      uint64_t x = idx;
      for (size_t i = 0; i < d; ++i) {
        g[i] = static_cast<uint32_t>(x % p);
        x /= p;
      }
      g[d] = 1;
      if (rem_mod_p(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("field modulus is irreducible and deterministic") {
  for (auto [p, D] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 5}, {3, 4}, {5, 2}, {5, 3}, {7, 2}, {11, 2}, {13, 2}}) {
    auto F = Field::get(p, D);
    CHECK(F->modulus().size() == D + 1);
    CHECK(irreducible_by_trial(F->modulus(), p));
    CHECK(Field::get(p, D).get() == F.get());
  }
  CHECK_THROWS_AS(Field::get(6, 1), DomainError);
  CHECK_THROWS_AS(Field::get(5, 1, 100), DomainError);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(7);
  for (auto [p, r, e] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{{5, 1, 1}, {5, 2, 1}, {7, 2, 2}, {2, 3, 1}}) {
    auto F = Field::get(p, r, e);
    std::uniform_int_distribution<uint64_t> u(0, F->size() - 1);
    for (int it = 0; it < 300; ++it) {
      const Fe a = F->element(u(rng)), b = F->element(u(rng)), c = F->element(u(rng));
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->frob(F->add(a, b)) == F->add(F->frob(a), F->frob(b)));
      CHECK(F->frob(F->mul(a, b)) == F->mul(F->frob(a), F->frob(b)));
      CHECK(F->frob(F->frob(a), -1) == a);
      if (!a.is_zero()) CHECK(F->mul(a, F->inv(a)) == F->one());
      CHECK(F->from_coords(F->coords(a)) == a);
    }
    // F_q is fixed by the twist.
    for (uint64_t i = 0; i < F->size(); ++i) {
      const Fe a = F->element(i);
      CHECK((F->frob(a) == a) == F->in_subfield(a, r));
    }
  }
}

TEST_CASE("embedding is a ring homomorphism") {
  auto small = Field::get(5, 2), big = Field::get(5, 2, 3);
  auto emb = Embedding::get(*small, *big);
  for (uint64_t i = 0; i < small->size(); ++i)
    for (uint64_t j = 0; j < small->size(); j += 7) {
      const Fe a = small->element(i), b = small->element(j);
      CHECK((*emb)(small->add(a, b)) == big->add((*emb)(a), (*emb)(b)));
      CHECK((*emb)(small->mul(a, b)) == big->mul((*emb)(a), (*emb)(b)));
    }
}

TEST_CASE("series frobenius") {
  auto F5 = Field::get(5, 1);
  const Field* f = F5.get();
  CHECK(series_frobenius(Series::monomial(f, f->one(), 1)) == Series::monomial(f, f->one(), 5));
  const Series s(f, {{0, f->one()}, {1, f->one()}, {2, f->one()}}, 10);
  const Series fs = series_frobenius(s);
  CHECK(fs.precision() == 50);
  CHECK(fs.terms() == std::vector<Series::Term>{{0, f->one()}, {5, f->one()}, {10, f->one()}});

  auto F25 = Field::get(5, 2);
  const Fe c = F25->generator();
  const Series g = series_frobenius(Series::monomial(F25.get(), c, -1));
  CHECK(g == Series::monomial(F25.get(), c, -25));

  // Coefficients outside F_q are raised to the q-th power.
  auto F = Field::get(5, 1, 2);
  const Series h = series_frobenius(Series::monomial(F.get(), F->generator(), 2));
  CHECK(h == Series::monomial(F.get(), F->pow(F->generator(), 5), 10));
}

TEST_CASE("series frobenius is a ring map on random pairs") {
  auto F = Field::get(7, 2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<uint64_t> u(0, F->size() - 1);
  auto rnd = [&] {
    std::vector<Series::Term> t;
    for (int e = -2; e < 6; ++e) t.push_back({e, F->element(u(rng))});
    return Series(F.get(), t, 8);
  };
  for (int it = 0; it < 40; ++it) {
    const Series a = rnd(), b = rnd();
    CHECK((a + b).frobenius().agrees_with(a.frobenius() + b.frobenius()));
    CHECK((a * b).frobenius().agrees_with(a.frobenius() * b.frobenius()));
  }
}

TEST_CASE("laurent inverse") {
  auto F = Field::get(5, 1);
  const Field* f = F.get();
  CHECK(laurent_inverse(Series::monomial(f, f->one(), 1), 10) == Series::monomial(f, f->one(), -1));
  const Series one_minus_t(f, {{0, f->one()}, {1, f->neg(f->one())}});
  const Series g = laurent_inverse(one_minus_t, 4);
  CHECK(g.terms() == std::vector<Series::Term>{{0, f->one()}, {1, f->one()}, {2, f->one()}, {3, f->one()}});
  CHECK(g.precision() == 4);
  // t^2 (1 + t) with relative precision 3.
  const Series h(f, {{2, f->one()}, {3, f->one()}}, 5);
  const Series hi = laurent_inverse(h, 1);
  CHECK(hi.terms() == std::vector<Series::Term>{{-2, f->one()}, {-1, f->neg(f->one())}, {0, f->one()}});
  const Series prod = h * hi;
  CHECK(prod.agrees_with(Series::one(f)));
  CHECK(prod.precision() >= 1);
  CHECK_THROWS_AS(laurent_inverse(h, 5), DomainError);
  CHECK_THROWS_AS(h.coeff(5), DomainError);
}

TEST_CASE("rational functions") {
  auto F = Field::get(7, 1);
  const Field* f = F.get();
  const RatFunc a = parse_scalar(f, "(1 + t)^2 * t^-3", 't');
  CHECK(a.valuation() == -3);
  CHECK(a.degree() == -1);
  CHECK(a * a.inv() == RatFunc::one(f));
  const RatFunc b = parse_scalar(f, "1 + t", 't').inv();
  CHECK(b.coefficients(0, 4) == std::vector<Fe>{f->one(), f->from_int(-1), f->one(), f->from_int(-1)});
  CHECK(a.invert_variable().invert_variable() == a);
  CHECK(a.frobenius() == a.pow(7));
  const auto parts = b.qth_root_components();
  RatFunc back(f);
  for (size_t j = 0; j < parts.size(); ++j) back += parts[j].frobenius().times_power(static_cast<int64_t>(j));
  CHECK(back == b);
  CHECK_THROWS_AS(parse_scalar(f, "1 + * t", 't'), DomainError);
}

TEST_CASE("polynomial roots and gcd") {
  auto F = Field::get(5, 1);
  const Poly p = parse_poly(F.get(), "x^3 + x");
  CHECK(roots(p).size() == 3);  // 0, 2, 3
  CHECK(is_squarefree(p));
  CHECK(!is_squarefree(parse_poly(F.get(), "(x + 1)^2 * x")));
  CHECK(gcd(parse_poly(F.get(), "x^2 - 1"), parse_poly(F.get(), "x^2 + 2*x + 1")) == parse_poly(F.get(), "x + 1"));
}

TEST_CASE("finite field linear algebra") {
  auto F = Field::get(5, 1);
  FeMatrix a(2, 3);
  a(0, 0) = F->one();
  a(0, 1) = F->from_int(2);
  a(1, 2) = F->one();
  CHECK(rank(*F, a) == 2);
  const auto ker = kernel(*F, a);
  REQUIRE(ker.size() == 1);
  CHECK(is_zero(FeMatrix(2, 1, Fe{})) );
  const auto v = mul(*F, a, ker[0]);
  CHECK(v == FeVector{Fe{}, Fe{}});
  const auto inv = inverse(*F, identity(*F, 3));
  REQUIRE(inv.has_value());
  CHECK(*inv == identity(*F, 3));
}
