#pragma once

#include <optional>
#include <vector>

#include "frobroot/arith/field.hpp"
#include "frobroot/arith/matrix.hpp"
#include "frobroot/arith/ratfunc.hpp"

namespace frobroot::arith {

using FeMatrix = Matrix<Fe>;
using FeVector = std::vector<Fe>;
using RfMatrix = Matrix<RatFunc>;

// ---- matrices over a finite field ----

FeMatrix identity(const Field& F, size_t n);
FeMatrix mul(const Field& F, const FeMatrix& a, const FeMatrix& b);
FeVector mul(const Field& F, const FeMatrix& a, const FeVector& v);
/// Entrywise a -> a^{q^k}.
FeMatrix frob(const Field& F, const FeMatrix& a, int64_t k = 1);
FeVector frob(const Field& F, const FeVector& v, int64_t k = 1);
bool is_zero(const FeMatrix& a);

struct Echelon {
  FeMatrix reduced;            // reduced row echelon form
  std::vector<size_t> pivots;  // pivot column of each nonzero row
};
Echelon rref(const Field& F, FeMatrix a);
size_t rank(const Field& F, const FeMatrix& a);
/// Basis of {v : a v = 0}, one vector per free column, free entry 1.
std::vector<FeVector> kernel(const Field& F, const FeMatrix& a);
/// Solution of a x = b with all free variables zero, if any.
std::optional<FeVector> solve(const Field& F, const FeMatrix& a, const FeVector& b);
std::optional<FeMatrix> inverse(const Field& F, const FeMatrix& a);

// ---- matrices over rational functions ----

RfMatrix rf_identity(const Field* F, size_t n);
RfMatrix rf_zero(const Field* F, size_t rows, size_t cols);
RfMatrix mul(const RfMatrix& a, const RfMatrix& b);
RfMatrix frob(const RfMatrix& a);
RatFunc det(const RfMatrix& a);
/// Throws InvalidInput when singular.
RfMatrix inverse(const RfMatrix& a);
/// Minimum valuation over all entries (kInfinity for the zero matrix).
int64_t min_valuation(const RfMatrix& a);
int64_t column_valuation(const RfMatrix& a, size_t j);
/// Entries have no pole at 0.
bool is_integral(const RfMatrix& a);
FeMatrix residue(const RfMatrix& a);
RfMatrix taylor_shift(const RfMatrix& a, Fe c);
RfMatrix invert_variable(const RfMatrix& a);
RfMatrix block_diag(const std::vector<RfMatrix>& blocks);

}  // namespace frobroot::arith
