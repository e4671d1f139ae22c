#include "frobroot/oracle/random.hpp"

#include <algorithm>

#include "frobroot/errors.hpp"

namespace frobroot::oracle {

using arith::Fe;
using arith::FeMatrix;
using arith::Field;
using arith::Poly;
using arith::RatFunc;
using catalog::Place;
using catalog::SheafSpec;

namespace {

Fe random_element(const Field& F, std::mt19937_64& rng) {
  return F.element(std::uniform_int_distribution<uint64_t>(0, F.size() - 1)(rng));
}

Fe random_nonzero(const Field& F, std::mt19937_64& rng) {
  return F.element(std::uniform_int_distribution<uint64_t>(1, F.size() - 1)(rng));
}

FeMatrix random_invertible(const Field& F, std::mt19937_64& rng, size_t n) {
  while (true) {
    FeMatrix M(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) M(i, j) = random_element(F, rng);
    if (arith::rank(F, M) == n) return M;
  }
}

std::vector<Place> random_places(const Field& F, std::mt19937_64& rng, size_t count) {
  std::vector<Place> all;
  all.push_back(Place::infinity());
  const uint64_t limit = std::min<uint64_t>(F.size(), 64);
  for (uint64_t i = 0; i < limit; ++i) all.push_back(Place::at(F.element(i)));
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(count, all.size()));
  std::sort(all.begin(), all.end());
  return all;
}

Poly random_cover_polynomial(const Field& F, std::mt19937_64& rng) {
  // Distinct linear factors, sometimes with an irreducible quadratic factor;
  // degree 1..4 keeps the cover at genus <= 1.
  const int deg = std::uniform_int_distribution<int>(1, 4)(rng);
  const bool quadratic = deg >= 2 && F.size() <= 49 && std::uniform_int_distribution<int>(0, 3)(rng) == 0;
  Poly f = Poly::constant(&F, random_nonzero(F, rng));
  std::vector<Fe> used;
  for (int i = 0; i < deg - (quadratic ? 2 : 0); ++i) {
    Fe a;
    do a = random_element(F, rng);
    while (std::find(used.begin(), used.end(), a) != used.end());
    used.push_back(a);
    f = f * Poly::linear(&F, a);
  }
  if (quadratic) {
    while (true) {
      const Poly g(&F, {random_element(F, rng), random_element(F, rng), F.one()});
      if (arith::roots(g).empty()) {
        f = f * g;
        break;
      }
    }
  }
  return f;
}

SheafSpec random_summand(const Field& F, std::mt19937_64& rng) {
  const int64_t q1 = static_cast<int64_t>(F.twist()) - 1;
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      return SheafSpec::constant(&F, std::uniform_int_distribution<size_t>(1, 2)(rng));
    case 1:
      return SheafSpec::shriek(&F, random_places(F, rng, std::uniform_int_distribution<size_t>(0, 3)(rng)),
                               std::uniform_int_distribution<size_t>(1, 2)(rng));
    case 2:
      return SheafSpec::tame_cover(random_cover_polynomial(F, rng));
    default: {
      const auto ys = random_places(F, rng, std::uniform_int_distribution<size_t>(1, 4)(rng));
      std::vector<std::pair<Place, int64_t>> tw;
      int64_t total = 0;
      for (size_t i = 0; i < ys.size(); ++i) {
        int64_t d = std::uniform_int_distribution<int64_t>(-q1, 2 * q1)(rng);
        if (i + 1 == ys.size()) d -= ((total + d) % q1 + q1) % q1;
        total += d;
        tw.push_back({ys[i], d});
      }
      return SheafSpec::rank1_twist(&F, tw);
    }
  }
}

}  // namespace

local::LocalUnitModule random_monomial_module(const Field* F, std::mt19937_64& rng, size_t max_rank, int64_t max_exp) {
  const size_t n = std::uniform_int_distribution<size_t>(1, max_rank)(rng);
  const size_t m = std::uniform_int_distribution<size_t>(0, n)(rng);
  std::uniform_int_distribution<int64_t> ex(-max_exp, max_exp);
  auto mono = [&](bool allow_zero) {
    if (allow_zero && std::uniform_int_distribution<int>(0, 2)(rng) == 0) return RatFunc(F);
    return RatFunc::monomial(F, random_nonzero(*F, rng), ex(rng));
  };
  local::LocalUnitModule W;
  W.field = F;
  W.m = m;
  W.s = n - m;
  W.B = arith::rf_zero(F, n, n);
  // K-block: a monomial matrix with nonzero determinant.
  while (true) {
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) W.B(i, j) = mono(true);
    if (m == 0 || !arith::det(W.B.block(0, 0, m, m)).is_zero()) break;
  }
  for (size_t i = 0; i < m; ++i)
    for (size_t j = m; j < n; ++j) W.B(i, j) = mono(true);
  const FeMatrix U = random_invertible(*F, rng, n - m);
  for (size_t i = m; i < n; ++i)
    for (size_t j = m; j < n; ++j) W.B(i, j) = RatFunc::constant(F, U(i - m, j - m));
  return W;
}

SheafSpec random_sheaf_spec(const Field* F, std::mt19937_64& rng, size_t max_parts) {
  if (F->p() < 5) fail(ErrorKind::InvalidInput, "oracle", "random sheaf specs need p >= 5");
  const size_t k = std::uniform_int_distribution<size_t>(1, std::max<size_t>(1, max_parts))(rng);
  std::vector<SheafSpec> parts;
  for (size_t i = 0; i < k; ++i) parts.push_back(random_summand(*F, rng));
  if (parts.size() == 1) return parts.front();
  return SheafSpec::direct_sum(std::move(parts));
}

semilin::SemilinearOp random_operator(const Field* F, std::mt19937_64& rng, size_t n) {
  FeMatrix M(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) M(i, j) = random_element(*F, rng);
  return {F, M};
}

semilin::SemilinearOp random_split_operator(const Field* F, std::mt19937_64& rng, size_t n, uint64_t unit_order) {
  if ((F->size() - 1) % unit_order != 0)
    fail(ErrorKind::InvalidInput, "oracle", "unit order does not divide the multiplicative group order");
  const size_t ss = std::uniform_int_distribution<size_t>(0, n)(rng);
  const int64_t step = static_cast<int64_t>((F->size() - 1) / unit_order);
  FeMatrix D(n, n);
  for (size_t i = 0; i < ss; ++i)
    D(i, i) = F->gen_pow(step * std::uniform_int_distribution<int64_t>(0, static_cast<int64_t>(unit_order) - 1)(rng));
  for (size_t i = ss; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) D(i, j) = random_element(*F, rng);
  return semilin::SemilinearOp{F, D}.conjugate(random_invertible(*F, rng, n));
}

}  // namespace frobroot::oracle
