#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frobroot/arith/rational.hpp"
#include "frobroot/catalog/catalog.hpp"
#include "frobroot/local/roots.hpp"
#include "frobroot/semilin/semilin.hpp"

namespace frobroot::global {

using arith::Rational;
using arith::RfMatrix;
using catalog::GlobalUnitModule;
using catalog::Place;

/// A root of the global unit module, given by one lattice per listed place
/// (local coordinates, local basis) and the standard lattice elsewhere.
struct RootBundle {
  GlobalUnitModule module;
  std::vector<local::Lattice> lattices;  // parallel to module.places
  std::vector<Rational> indices;         // dim(Phi(L)/L)/(q-1) per place
  int64_t degree = 0;                    // -sum v_y(det) against the generic basis
  /// Columns q_j: an F[x]-basis of the sections over the affine line such
  /// that x^{d_j} q_j is a basis of the lattice at infinity.
  RfMatrix frame;
  std::vector<int64_t> frame_degrees;  // d_j
  bool minimal = true;
};

RootBundle global_minimal_root(const GlobalUnitModule& gm, const local::MinimalRootOptions& opts = {});
/// Any family of local roots (each checked); used for the consistency mode.
RootBundle root_bundle(const GlobalUnitModule& gm, std::vector<local::Lattice> lattices);

/// Degree of the root bundle. NonIntegralDegree unless it equals the sum of
/// the local indices.
int64_t root_degree(const RootBundle& rb);
/// Splitting type d_1 >= ... >= d_n of the root bundle.
std::vector<int64_t> splitting_type(const RootBundle& rb);

/// Frobenius action on H^0 and H^1 of the root dual bundle (two-chart Cech
/// model). Basis of H^0: x^k p_j with 0 <= k <= -d_j; of H^1: x^k p_j with
/// -d_j < k < 0, where p_j is the dual frame.
struct Cohomology {
  semilin::SemilinearOp h0;
  semilin::SemilinearOp h1;
  /// Polynomial matrix T with F(p_j) = sum_i T_ij p_i.
  RfMatrix action;
  std::vector<int64_t> dual_degrees;
};
Cohomology cohomology_semilinear(const RootBundle& rb);

struct LocalIndex {
  std::string place;
  Rational index;
};

struct CohomReport {
  size_t n = 0;
  std::vector<LocalIndex> local_indices;
  int64_t degree_root = 0;
  std::vector<int64_t> splitting;
  size_t h0 = 0, h1 = 0;
  size_t ss0 = 0, ss1 = 0, nil1 = 0;
  int64_t chi = 0;
  Rational bound;
  int64_t bound_ceil = 0;
  bool equality = false;
};

/// (1 - g) n - sum of indices.
Rational chi_lower_bound(int64_t n, int64_t g, const std::vector<Rational>& indices);

CohomReport cohomology_report(const RootBundle& rb);
CohomReport etale_chi(const GlobalUnitModule& gm, const local::MinimalRootOptions& opts = {});

}  // namespace frobroot::global
