#pragma once

#include <vector>

#include "frobroot/catalog/spec.hpp"
#include "frobroot/local/module.hpp"

namespace frobroot::catalog {

using arith::RfMatrix;

/// Local basis at a place, as columns over the generic basis (functions of x),
/// with the first m columns spanning the K-part.
struct Presentation {
  RfMatrix P;
  size_t m = 0;
};

/// F(e_j) = sum_i B_ij e_i on the generic fiber F(x)^n.
RfMatrix generic_matrix(const SheafSpec& spec);
Presentation presentation(const SheafSpec& spec, const Place& y);

/// Rewrites a function of x in the local coordinate at y (x - a, or 1/x).
arith::RatFunc to_local(const arith::RatFunc& h, const Place& y);
RfMatrix to_local(const RfMatrix& h, const Place& y);
arith::RatFunc from_local(const arith::RatFunc& h, const Place& y);
RfMatrix from_local(const RfMatrix& h, const Place& y);

/// The dual unit module at y: structure matrix P^{-1} B P^{(q)} in the local coordinate.
local::LocalUnitModule local_dual_of_sheaf(const SheafSpec& spec, const Place& y);

struct LocalData {
  Place place;
  RfMatrix P;  // local basis over the generic basis, in x
  local::LocalUnitModule module;
};

/// Generic structure plus local data at every place where the standard
/// lattice need not be the local module (including infinity, always).
struct GlobalUnitModule {
  const Field* field = nullptr;
  size_t n = 0;
  RfMatrix B;
  std::vector<LocalData> places;
  SheafSpec spec;  // over the working field
};

/// Builds the dual unit module, first extending the working field until all
/// branch points are rational. Verifies that B is a unit away from the listed
/// places and that every local presentation passes check_unit.
GlobalUnitModule global_dual_of_sheaf(const SheafSpec& spec);

}  // namespace frobroot::catalog
