#pragma once

#include <string>
#include <vector>

#include "frobroot/arith/linalg.hpp"

namespace frobroot::local {

using arith::Fe;
using arith::FeMatrix;
using arith::Field;
using arith::RatFunc;
using arith::RfMatrix;

/// A torsion-free unit module W = K^m (+) A^s over A = F[[t]] (computed with
/// exact rational functions in t), with F(e_j) = sum_i B_ij e_i. The first m
/// basis vectors span the K-part.
struct LocalUnitModule {
  const Field* field = nullptr;
  size_t m = 0;
  size_t s = 0;
  RfMatrix B;

  size_t n() const { return m + s; }
  std::string describe() const;
};

/// Builds a module from scalar strings in the variable t; validates shape only.
LocalUnitModule make_module(const Field* F, size_t m, size_t s, const std::vector<std::vector<std::string>>& B);

struct UnitReport {
  RatFunc det;
  int64_t det_valuation = 0;
  /// Elementary-divisor exponents of the A-part block (all zero for a unit module).
  std::vector<int64_t> a_part_divisors;
};

/// Verifies invertibility, closure (F maps W into W) and the unit condition
/// on W/W^vec. Throws NotClosed, or NotUnit with the divisors attached.
UnitReport check_unit(const LocalUnitModule& W);

/// Pullback along t -> s^e, written again in the variable s.
LocalUnitModule tame_base_change(const LocalUnitModule& W, uint64_t e);

/// Exponents of the Smith form over A of a square matrix over K.
std::vector<int64_t> smith_exponents(const RfMatrix& M);

}  // namespace frobroot::local
