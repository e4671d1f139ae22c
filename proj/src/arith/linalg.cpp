#include "frobroot/arith/linalg.hpp"

#include <algorithm>

namespace frobroot::arith {

FeMatrix identity(const Field& F, size_t n) {
  FeMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = F.one();
  return m;
}

FeMatrix mul(const Field& F, const FeMatrix& a, const FeMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::Internal, "arith", "matrix shape mismatch");
  FeMatrix c(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      const Fe x = a(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) = F.add(c(i, j), F.mul(x, b(k, j)));
    }
  return c;
}

FeVector mul(const Field& F, const FeMatrix& a, const FeVector& v) {
  FeVector out(a.rows());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) out[i] = F.add(out[i], F.mul(a(i, j), v[j]));
  return out;
}

FeMatrix frob(const Field& F, const FeMatrix& a, int64_t k) {
  return a.map([&](Fe x) { return F.frob(x, k); });
}

FeVector frob(const Field& F, const FeVector& v, int64_t k) {
  FeVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = F.frob(v[i], k);
  return out;
}

bool is_zero(const FeMatrix& a) {
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

Echelon rref(const Field& F, FeMatrix a) {
  Echelon e;
  size_t row = 0;
  for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    size_t piv = row;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(piv, row);
    const Fe inv = F.inv(a(row, col));
    for (size_t j = col; j < a.cols(); ++j) a(row, j) = F.mul(a(row, j), inv);
    for (size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const Fe c = a(i, col);
      for (size_t j = col; j < a.cols(); ++j) a(i, j) = F.sub(a(i, j), F.mul(c, a(row, j)));
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.reduced = std::move(a);
  return e;
}

size_t rank(const Field& F, const FeMatrix& a) { return rref(F, a).pivots.size(); }

std::vector<FeVector> kernel(const Field& F, const FeMatrix& a) {
  const Echelon e = rref(F, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (size_t p : e.pivots) is_pivot[p] = true;
  std::vector<FeVector> basis;
  for (size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    FeVector v(a.cols());
    v[free] = F.one();
    for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = F.neg(e.reduced(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<FeVector> solve(const Field& F, const FeMatrix& a, const FeVector& b) {
  FeMatrix aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const Echelon e = rref(F, aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  FeVector x(a.cols());
  for (size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

std::optional<FeMatrix> inverse(const Field& F, const FeMatrix& a) {
  const size_t n = a.rows();
  const Echelon e = rref(F, a.hcat(identity(F, n)));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

RfMatrix rf_identity(const Field* F, size_t n) {
  RfMatrix m = rf_zero(F, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = RatFunc::one(F);
  return m;
}

RfMatrix rf_zero(const Field* F, size_t rows, size_t cols) { return RfMatrix(rows, cols, RatFunc(F)); }

RfMatrix mul(const RfMatrix& a, const RfMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::Internal, "arith", "matrix shape mismatch");
  const Field* F = nullptr;
  if (!a.empty()) F = a(0, 0).field();
  RfMatrix c(a.rows(), b.cols(), RatFunc(F));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RfMatrix frob(const RfMatrix& a) {
  return a.map([](const RatFunc& x) { return x.frobenius(); });
}

RatFunc det(const RfMatrix& m) {
  const size_t n = m.rows();
  if (n != m.cols()) fail(ErrorKind::Internal, "arith", "determinant of a non-square matrix");
  const Field* F = m(0, 0).field();
  RfMatrix a = m;
  RatFunc d = RatFunc::one(F);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) return RatFunc(F);
    if (piv != c) {
      a.swap_rows(piv, c);
      d = -d;
    }
    d = d * a(c, c);
    const RatFunc inv = a(c, c).inv();
    for (size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const RatFunc f = a(i, c) * inv;
      for (size_t j = c; j < n; ++j)
        if (!a(c, j).is_zero()) a(i, j) -= f * a(c, j);
    }
  }
  return d;
}

RfMatrix inverse(const RfMatrix& m) {
  const size_t n = m.rows();
  if (n != m.cols()) fail(ErrorKind::Internal, "arith", "inverse of a non-square matrix");
  if (n == 0) return m;
  const Field* F = m(0, 0).field();
  RfMatrix a = m;
  RfMatrix inv = rf_identity(F, n);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) fail(ErrorKind::InvalidInput, "arith", "singular matrix");
    a.swap_rows(piv, c);
    inv.swap_rows(piv, c);
    const RatFunc pinv = a(c, c).inv();
    for (size_t j = 0; j < n; ++j) {
      if (!a(c, j).is_zero()) a(c, j) = a(c, j) * pinv;
      if (!inv(c, j).is_zero()) inv(c, j) = inv(c, j) * pinv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const RatFunc f = a(i, c);
      for (size_t j = 0; j < n; ++j) {
        if (!a(c, j).is_zero()) a(i, j) -= f * a(c, j);
        if (!inv(c, j).is_zero()) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

int64_t min_valuation(const RfMatrix& a) {
  int64_t v = RatFunc::kInfinity;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) v = std::min(v, a(i, j).valuation());
  return v;
}

int64_t column_valuation(const RfMatrix& a, size_t j) {
  int64_t v = RatFunc::kInfinity;
  for (size_t i = 0; i < a.rows(); ++i) v = std::min(v, a(i, j).valuation());
  return v;
}

bool is_integral(const RfMatrix& a) { return min_valuation(a) >= 0; }

FeMatrix residue(const RfMatrix& a) {
  return a.map([](const RatFunc& x) { return x.value_at_zero(); });
}

RfMatrix taylor_shift(const RfMatrix& a, Fe c) {
  return a.map([c](const RatFunc& x) { return x.taylor_shift(c); });
}

RfMatrix invert_variable(const RfMatrix& a) {
  return a.map([](const RatFunc& x) { return x.invert_variable(); });
}

RfMatrix block_diag(const std::vector<RfMatrix>& blocks) {
  size_t n = 0;
  const Field* F = nullptr;
  for (const auto& b : blocks) {
    n += b.rows();
    if (!b.empty()) F = b(0, 0).field();
  }
  RfMatrix m = rf_zero(F, n, n);
  size_t off = 0;
  for (const auto& b : blocks) {
    for (size_t i = 0; i < b.rows(); ++i)
      for (size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

}  // namespace frobroot::arith
