#include "frobroot/oracle/brute_force.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "frobroot/errors.hpp"
#include "frobroot/local/roots.hpp"

namespace frobroot::oracle {

using arith::Fe;
using arith::Field;
using arith::RatFunc;
using arith::RfMatrix;
using local::Lattice;
using local::LocalUnitModule;

Box default_box(const LocalUnitModule& W, const Lattice& start) {
  const int64_t C = local::root_det_bound(W) - start.det_valuation();
  if (C < 0) fail(ErrorKind::Internal, "oracle", "starting root violates the determinant bound");
  return Box{start, std::vector<int64_t>(W.n(), C), C, true};
}

Box exponent_box(const LocalUnitModule& W, int64_t lo, int64_t hi) {
  if (hi < lo) fail(ErrorKind::InvalidInput, "oracle", "empty exponent box");
  std::vector<int64_t> base(W.n()), mx(W.n());
  int64_t total = 0;
  for (size_t i = 0; i < W.n(); ++i) {
    base[i] = i < W.m ? lo : std::max<int64_t>(lo, 0);
    mx[i] = std::max<int64_t>(0, hi - base[i]);
    total += mx[i];
  }
  return Box{Lattice::diagonal(W.field, base), mx, total, false};
}

namespace {

uint64_t sat_mul(uint64_t a, uint64_t b, uint64_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap;
  return std::min(cap, a * b);
}

uint64_t sat_pow(uint64_t b, uint64_t e, uint64_t cap) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < e; ++i) r = sat_mul(r, b, cap);
  return r;
}

void for_each_profile(const Box& box, const std::function<void(const std::vector<int64_t>&)>& fn) {
  const size_t n = box.max_exp.size();
  std::vector<int64_t> a(n, 0);
  std::function<void(size_t, int64_t)> rec = [&](size_t i, int64_t left) {
    if (i == n) {
      fn(a);
      return;
    }
    for (int64_t v = 0; v <= std::min(box.max_exp[i], left); ++v) {
      a[i] = v;
      rec(i + 1, left - v);
    }
    a[i] = 0;
  };
  rec(0, box.max_colength);
}

RatFunc poly_from_digits(const Field& F, const std::vector<Fe>& c) {
  return RatFunc(arith::Poly(&F, c));
}

}  // namespace

uint64_t box_size(const Field& F, const Box& box, uint64_t cap) {
  const size_t n = box.max_exp.size();
  uint64_t total = 0;
  for_each_profile(box, [&](const std::vector<int64_t>& a) {
    uint64_t c = 1;
    for (size_t i = 0; i < n; ++i) c = sat_mul(c, sat_pow(F.size(), static_cast<uint64_t>(a[i]) * (n - 1 - i), cap), cap);
    total = std::min(cap, total + c);
  });
  return total;
}

std::vector<Lattice> roots_in_box(const LocalUnitModule& W, const Box& box, uint64_t limit) {
  const Field& F = *W.field;
  const uint64_t size = box_size(F, box, limit + 1);
  if (size > limit)
    fail(ErrorKind::BoxTooLarge, "oracle", "box holds more than " + std::to_string(limit) + " lattices");
  const size_t n = W.n();
  std::vector<Lattice> roots;
  for_each_profile(box, [&](const std::vector<int64_t>& a) {
    // Free slots: entries (i, j), i < j, each a polynomial of degree < a_i.
    std::vector<std::pair<size_t, size_t>> slots;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (a[i] > 0) slots.push_back({i, j});
    std::vector<std::vector<Fe>> digits(slots.size());
    for (size_t s = 0; s < slots.size(); ++s) digits[s].assign(static_cast<size_t>(a[slots[s].first]), Fe{});
    while (true) {
      RfMatrix E = arith::rf_zero(&F, n, n);
      for (size_t i = 0; i < n; ++i) E(i, i) = RatFunc::monomial(&F, F.one(), a[i]);
      for (size_t s = 0; s < slots.size(); ++s) E(slots[s].first, slots[s].second) = poly_from_digits(F, digits[s]);
      const Lattice L = Lattice::span(arith::mul(box.base.basis(), E));
      if (local::lies_in(W, L) && local::is_root(W, L).is_root()) roots.push_back(L);
      // Odometer over all digit positions.
      bool advanced = false;
      for (size_t s = 0; s < digits.size() && !advanced; ++s) {
        for (size_t k = 0; k < digits[s].size(); ++k) {
          if (digits[s][k].code + 1 < F.size()) {
            digits[s][k].code += 1;
            advanced = true;
            break;
          }
          digits[s][k] = Fe{};
        }
      }
      if (!advanced) break;
    }
  });
  return roots;
}

Lattice brute_force_minimal_root(const LocalUnitModule& W, const Box& box, uint64_t limit) {
  const auto roots = roots_in_box(W, box, limit);
  if (roots.empty()) fail(ErrorKind::BoxBoundaryHit, "oracle", "no root inside the search box; enlarge it");
  size_t best = 0;
  for (size_t i = 1; i < roots.size(); ++i)
    if (roots[i].det_valuation() > roots[best].det_valuation()) best = i;
  const Lattice& R = roots[best];
  for (const auto& other : roots)
    if (!other.contains(R))
      fail(ErrorKind::Internal, "oracle", "roots in the box have no common minimum");
  if (!box.proven) {
    const auto& base = box.base.diagonal_exponents();
    for (size_t i = 0; i < R.n(); ++i)
      if (R.diagonal_exponents()[i] >= base[i] + box.max_exp[i])
        fail(ErrorKind::BoxBoundaryHit, "oracle", "minimal root in the box touches its boundary; enlarge it");
  }
  return R;
}

std::vector<Lattice> sample_roots(const LocalUnitModule& W, const Box& box, size_t count, uint64_t seed) {
  const Field& F = *W.field;
  const size_t n = W.n();
  std::mt19937_64 rng(seed);
  std::vector<Lattice> roots;
  roots.push_back(box.base);
  const size_t attempts = count * 200 + 200;
  for (size_t t = 0; t < attempts && roots.size() < count; ++t) {
    std::vector<int64_t> a(n);
    int64_t left = box.max_colength;
    // Random coordinate order keeps the colength budget from favouring the first rows.
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t i : order) {
      const int64_t hi = std::min(box.max_exp[i], left);
      a[i] = hi > 0 ? std::uniform_int_distribution<int64_t>(0, hi)(rng) : 0;
      left -= a[i];
    }
    RfMatrix E = arith::rf_zero(&F, n, n);
    std::uniform_int_distribution<uint32_t> elem(0, static_cast<uint32_t>(F.size() - 1));
    for (size_t i = 0; i < n; ++i) {
      E(i, i) = RatFunc::monomial(&F, F.one(), a[i]);
      for (size_t j = i + 1; j < n; ++j) {
        std::vector<Fe> c(static_cast<size_t>(a[i]));
        for (auto& x : c) x = Fe{elem(rng)};
        E(i, j) = poly_from_digits(F, c);
      }
    }
    const Lattice L = Lattice::span(arith::mul(box.base.basis(), E));
    if (local::lies_in(W, L) && local::is_root(W, L).is_root()) roots.push_back(L);
  }
  return roots;
}

}  // namespace frobroot::oracle
