#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobroot/arith/rational.hpp"
#include "frobroot/local/lattice.hpp"
#include "frobroot/semilin/semilin.hpp"

namespace frobroot::local {

using arith::Rational;

enum class RootStatus { Root, NotStable, NotGenerating, Undetermined };
const char* to_string(RootStatus s);

struct RootCertificate {
  Lattice lattice;
  /// X with G = (B G^{(q)}) X, entries in A.
  RfMatrix witness;
  /// Smallest i with Phi^i(L) containing t^{-1} (L n W^vec).
  size_t generation_steps = 0;
};

struct RootCheck {
  RootStatus status = RootStatus::Undetermined;
  std::optional<RootCertificate> certificate;
  std::string detail;
  bool is_root() const { return status == RootStatus::Root; }
};

/// Decides the root conditions exactly. Stability is X integral; generation
/// holds iff the residue of the K-part block of X defines a nilpotent
/// semilinear map (equivalently Phi^i(L) contains t^{-1} L_K for some i <= m).
RootCheck is_root(const LocalUnitModule& W, const Lattice& L);

/// Generation checked by walking the chain Phi^i(L) directly; returns the
/// first i with Phi^i(L) containing t^{-1} L_K, or nullopt after `cap` steps.
std::optional<size_t> chain_generation_steps(const LocalUnitModule& W, const Lattice& L, size_t cap);

struct Filtration {
  std::vector<Lattice> lattices;   // W_0, ..., W_depth
  std::vector<int64_t> colengths;  // dim W_{i+1}/W_i
};
Filtration root_filtration(const LocalUnitModule& W, const Lattice& L, size_t depth);

/// The smallest lattice N with Phi(N) containing L.
Lattice contraction(const LocalUnitModule& W, const Lattice& L);

enum class Certification { Off, Auto, Required };

struct MinimalRootOptions {
  Certification certify = Certification::Auto;
  uint64_t box_limit = 1'000'000;
  size_t samples = 24;
  uint64_t seed = 1;
};

struct MinimalRootResult {
  Lattice lattice;
  /// Diagonal root the descent started from.
  Lattice start;
  size_t descent_steps = 0;
  /// "brute-force", "sampled", or "none".
  std::string certification;
  size_t certified_roots = 0;
};

/// Diagonal root diag(t^{-N} I_m, I_s) with N minimal, then shrunk one
/// K-coordinate at a time while it stays a root.
Lattice diagonal_start_root(const LocalUnitModule& W);

/// floor(-v(det B) / (q - 1)): every root L has v(det L) at most this.
int64_t root_det_bound(const LocalUnitModule& W);

MinimalRootResult minimal_root_detailed(const LocalUnitModule& W, const MinimalRootOptions& opts = {});
Lattice minimal_root(const LocalUnitModule& W, const MinimalRootOptions& opts = {});

/// dim(W_1/W_0)/(q-1) for W_0 = the minimal root.
Rational minimal_root_index(const LocalUnitModule& W, const MinimalRootOptions& opts = {});
/// dim(Phi(L)/L)/(q-1) for a given root L.
Rational root_index(const LocalUnitModule& W, const Lattice& L);

/// Matrix M of the dual action on the root dual: F(c) = M c^{(q)} in the
/// dual basis, i.e. M = X^T for the stability witness X.
RfMatrix root_dual(const LocalUnitModule& W, const Lattice& L);

struct InvariantHoms {
  semilin::FixedSpace residue;  // fixed vectors of the residue action
  /// Lifts of each residue vector to invariant vectors over A (dual-basis coordinates).
  std::vector<std::vector<arith::Series>> sections;
  size_t dimension = 0;            // over F_q, in the current field
  size_t geometric_dimension = 0;  // over an algebraic closure
};
InvariantHoms local_invariant_homs(const LocalUnitModule& W, int64_t precision = 64,
                                   const MinimalRootOptions& opts = {});

}  // namespace frobroot::local
