#pragma once

#include <cstdint>
#include <vector>

#include "frobroot/local/lattice.hpp"

namespace frobroot::oracle {

/// A finite family of lattices: all base * E with E upper triangular over A,
/// diagonal t^{a_i} (0 <= a_i <= max_exp[i], sum a_i <= max_colength), and
/// entries above the diagonal in row i polynomials of degree < a_i.
struct Box {
  local::Lattice base;
  std::vector<int64_t> max_exp;
  int64_t max_colength = 0;
  /// The box is known to contain the minimal root (no boundary check needed).
  bool proven = false;
};

/// Sublattices of `start` (a root) whose determinant valuation respects the
/// bound every root satisfies.
Box default_box(const local::LocalUnitModule& W, const local::Lattice& start);
/// Lattices between t^hi A^n and t^lo A^n (A-part coordinates start at 0).
Box exponent_box(const local::LocalUnitModule& W, int64_t lo, int64_t hi);

/// Number of lattices in the box, saturating at `cap`.
uint64_t box_size(const arith::Field& F, const Box& box, uint64_t cap);

/// Enumerates the box, keeps the roots and returns the one contained in all
/// others. BoxTooLarge beyond `limit` lattices; BoxBoundaryHit when there is
/// no root or, for unproven boxes, the minimum touches the upper exponent.
local::Lattice brute_force_minimal_root(const local::LocalUnitModule& W, const Box& box,
                                        uint64_t limit = 1'000'000);

/// All roots in the box (for small boxes).
std::vector<local::Lattice> roots_in_box(const local::LocalUnitModule& W, const Box& box,
                                         uint64_t limit = 1'000'000);

/// Random lattices from the box that pass the root test.
std::vector<local::Lattice> sample_roots(const local::LocalUnitModule& W, const Box& box, size_t count,
                                         uint64_t seed);

}  // namespace frobroot::oracle
