#include "frobroot/local/module.hpp"

#include <algorithm>
#include <numeric>

#include "frobroot/arith/parse.hpp"
#include "frobroot/errors.hpp"

namespace frobroot::local {

std::string LocalUnitModule::describe() const {
  std::string s = "K^" + std::to_string(m) + " + A^" + std::to_string(this->s) + ", B = [";
  for (size_t i = 0; i < B.rows(); ++i) {
    if (i) s += "; ";
    for (size_t j = 0; j < B.cols(); ++j) {
      if (j) s += ", ";
      s += B(i, j).to_string("t");
    }
  }
  return s + "]";
}

LocalUnitModule make_module(const Field* F, size_t m, size_t s, const std::vector<std::vector<std::string>>& B) {
  const size_t n = m + s;
  if (n == 0) fail(ErrorKind::InvalidInput, "local", "module of rank 0");
  if (B.size() != n) fail(ErrorKind::InvalidInput, "local", "structure matrix must have m + s rows");
  LocalUnitModule W{F, m, s, arith::rf_zero(F, n, n)};
  for (size_t i = 0; i < n; ++i) {
    if (B[i].size() != n) fail(ErrorKind::InvalidInput, "local", "structure matrix must be square");
    for (size_t j = 0; j < n; ++j) W.B(i, j) = arith::parse_scalar(F, B[i][j], 't');
  }
  return W;
}

std::vector<int64_t> smith_exponents(const RfMatrix& M0) {
  RfMatrix M = M0;
  const size_t r = M.rows(), c = M.cols();
  std::vector<int64_t> out;
  for (size_t k = 0; k < std::min(r, c); ++k) {
    size_t bi = r, bj = c;
    int64_t best = RatFunc::kInfinity;
    for (size_t i = k; i < r; ++i)
      for (size_t j = k; j < c; ++j) {
        const int64_t v = M(i, j).valuation();
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (bi == r) break;
    M.swap_rows(k, bi);
    M.swap_cols(k, bj);
    const RatFunc piv_inv = M(k, k).inv();
    for (size_t i = k + 1; i < r; ++i) {
      if (M(i, k).is_zero()) continue;
      const RatFunc f = M(i, k) * piv_inv;
      for (size_t j = k; j < c; ++j)
        if (!M(k, j).is_zero()) M(i, j) -= f * M(k, j);
    }
    for (size_t j = k + 1; j < c; ++j) {
      if (M(k, j).is_zero()) continue;
      const RatFunc f = M(k, j) * piv_inv;
      for (size_t i = k; i < r; ++i)
        if (!M(i, k).is_zero()) M(i, j) -= f * M(i, k);
    }
    out.push_back(best);
  }
  return out;
}

UnitReport check_unit(const LocalUnitModule& W) {
  const size_t n = W.n();
  if (W.B.rows() != n || W.B.cols() != n)
    fail(ErrorKind::InvalidInput, "local", "structure matrix has the wrong size");
  UnitReport rep;
  rep.det = arith::det(W.B);
  if (rep.det.is_zero()) fail(ErrorKind::InvalidInput, "local", "structure matrix is singular over K");
  rep.det_valuation = rep.det.valuation();
  for (size_t i = W.m; i < n; ++i) {
    for (size_t j = 0; j < W.m; ++j)
      if (!W.B(i, j).is_zero())
        fail(ErrorKind::NotClosed, "local",
             "F(e_" + std::to_string(j) + ") has a component along the A-part; K-part would leave W");
    for (size_t j = W.m; j < n; ++j)
      if (W.B(i, j).valuation() < 0)
        fail(ErrorKind::NotClosed, "local",
             "entry (" + std::to_string(i) + "," + std::to_string(j) + ") of the A-part block has a pole");
  }
  if (W.s > 0) {
    const RfMatrix BAA = W.B.block(W.m, W.m, W.s, W.s);
    rep.a_part_divisors = smith_exponents(BAA);
    const int64_t total = std::accumulate(rep.a_part_divisors.begin(), rep.a_part_divisors.end(), int64_t{0});
    if (total != 0) {
      std::string ds;
      for (int64_t d : rep.a_part_divisors) ds += (ds.empty() ? "" : ",") + std::to_string(d);
      DomainError err(ErrorKind::NotUnit, "local", "A-part is not unit; cokernel exponents (" + ds + ")");
      err.divisors = rep.a_part_divisors;
      throw err;
    }
  }
  return rep;
}

LocalUnitModule tame_base_change(const LocalUnitModule& W, uint64_t e) {
  if (e == 0) fail(ErrorKind::InvalidInput, "local", "ramification index must be positive");
  if (e % W.field->p() == 0)
    fail(ErrorKind::WildRamification, "local",
         "ramification index " + std::to_string(e) + " is divisible by p = " + std::to_string(W.field->p()));
  LocalUnitModule out = W;
  out.B = W.B.map([e](const RatFunc& x) { return x.substitute_power(e); });
  return out;
}

}  // namespace frobroot::local
