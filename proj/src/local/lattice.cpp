#include "frobroot/local/lattice.hpp"

#include <algorithm>

#include "frobroot/errors.hpp"

namespace frobroot::local {

namespace {

void axpy_col(RfMatrix& M, size_t dst, const RatFunc& f, size_t src) {
  // col_dst -= f * col_src
  for (size_t i = 0; i < M.rows(); ++i)
    if (!M(i, src).is_zero()) M(i, dst) -= f * M(i, src);
}

void scale_col(RfMatrix& M, size_t j, const RatFunc& f) {
  for (size_t i = 0; i < M.rows(); ++i)
    if (!M(i, j).is_zero()) M(i, j) = M(i, j) * f;
}

}  // namespace

Lattice Lattice::span(const RfMatrix& gens) {
  const size_t n = gens.rows();
  if (n == 0) fail(ErrorKind::InvalidInput, "local", "lattice of rank 0");
  const Field* F = gens(0, 0).field();
  RfMatrix M = gens;
  std::vector<bool> active(M.cols(), true);
  std::vector<size_t> pivot_col(n);
  std::vector<int64_t> a(n);
  for (size_t ii = n; ii-- > 0;) {
    size_t p = M.cols();
    int64_t best = RatFunc::kInfinity;
    for (size_t j = 0; j < M.cols(); ++j) {
      if (!active[j]) continue;
      const int64_t v = M(ii, j).valuation();
      if (v < best) {
        best = v;
        p = j;
      }
    }
    if (p == M.cols()) fail(ErrorKind::InvalidInput, "local", "generators do not span a full-rank lattice");
    // Make the pivot exactly t^best.
    scale_col(M, p, RatFunc::monomial(F, F->one(), best) / M(ii, p));
    for (size_t j = 0; j < M.cols(); ++j) {
      if (!active[j] || j == p || M(ii, j).is_zero()) continue;
      axpy_col(M, j, M(ii, j).times_power(-best), p);
    }
    active[p] = false;
    pivot_col[ii] = p;
    a[ii] = best;
  }
  Lattice L;
  L.G_ = arith::rf_zero(F, n, n);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i <= j; ++i) L.G_(i, j) = M(i, pivot_col[j]);
  L.a_ = a;
  // Reduce entries above the diagonal modulo t^{a_i}.
  for (size_t j = 1; j < n; ++j) {
    for (size_t i = j; i-- > 0;) {
      const RatFunc& e = L.G_(i, j);
      if (e.is_zero()) continue;
      const RatFunc low = e.truncated_below(a[i]);
      if (low == e) continue;
      const RatFunc h = (e - low).times_power(-a[i]);
      axpy_col(L.G_, j, h, i);
    }
  }
  return L;
}

Lattice Lattice::standard(const Field* F, size_t n) { return diagonal(F, std::vector<int64_t>(n, 0)); }

Lattice Lattice::diagonal(const Field* F, const std::vector<int64_t>& exps) {
  Lattice L;
  const size_t n = exps.size();
  L.G_ = arith::rf_zero(F, n, n);
  for (size_t i = 0; i < n; ++i) L.G_(i, i) = RatFunc::monomial(F, F->one(), exps[i]);
  L.a_ = exps;
  return L;
}

int64_t Lattice::det_valuation() const {
  int64_t s = 0;
  for (int64_t x : a_) s += x;
  return s;
}

bool Lattice::contains(const Lattice& o) const {
  // Upper-triangular back substitution is enough, but the generic inverse is simple.
  return arith::is_integral(arith::mul(arith::inverse(G_), o.G_));
}

bool Lattice::contains_vector(const std::vector<RatFunc>& v) const {
  RfMatrix col = arith::rf_zero(field(), n(), 1);
  for (size_t i = 0; i < n(); ++i) col(i, 0) = v[i];
  return arith::is_integral(arith::mul(arith::inverse(G_), col));
}

Lattice Lattice::shifted(int64_t k) const {
  Lattice L = *this;
  for (size_t i = 0; i < n(); ++i) {
    L.a_[i] += k;
    for (size_t j = 0; j < n(); ++j) L.G_(i, j) = G_(i, j).times_power(k);
  }
  return L;
}

std::string Lattice::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < n(); ++i) {
    if (i) s += "; ";
    for (size_t j = 0; j < n(); ++j) {
      if (j) s += ", ";
      s += G_(i, j).to_string("t");
    }
  }
  return s + "]";
}

int64_t colength(const Lattice& big, const Lattice& small) {
  if (!big.contains(small)) fail(ErrorKind::Internal, "local", "colength of a non-sublattice");
  return small.det_valuation() - big.det_valuation();
}

bool lies_in(const LocalUnitModule& W, const Lattice& L) {
  for (size_t i = W.m; i < W.n(); ++i)
    for (size_t j = 0; j < W.n(); ++j)
      if (L.basis()(i, j).valuation() < 0) return false;
  return true;
}

Lattice phi_span(const LocalUnitModule& W, const Lattice& L) {
  return Lattice::span(arith::mul(W.B, arith::frob(L.basis())));
}

}  // namespace frobroot::local
