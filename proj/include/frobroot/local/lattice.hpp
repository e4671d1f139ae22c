#pragma once

#include <string>
#include <vector>

#include "frobroot/local/module.hpp"

namespace frobroot::local {

/// A full-rank A-lattice in K^n, stored in canonical Hermite form: upper
/// triangular, diagonal entries exactly t^{a_i}, and each entry above the
/// diagonal in row i a Laurent polynomial with exponents < a_i. Two lattices
/// are equal iff their basis matrices are equal.
class Lattice {
 public:
  /// A-span of the columns of `gens` (n x k). InvalidInput if the span is not of rank n.
  static Lattice span(const RfMatrix& gens);
  static Lattice standard(const Field* F, size_t n);
  static Lattice diagonal(const Field* F, const std::vector<int64_t>& exps);

  const RfMatrix& basis() const { return G_; }
  size_t n() const { return G_.rows(); }
  const Field* field() const { return G_(0, 0).field(); }
  const std::vector<int64_t>& diagonal_exponents() const { return a_; }
  /// v(det G).
  int64_t det_valuation() const;

  /// o is a sublattice of this.
  bool contains(const Lattice& o) const;
  bool contains_vector(const std::vector<RatFunc>& v) const;
  /// t^k L
  Lattice shifted(int64_t k) const;

  bool operator==(const Lattice& o) const { return G_ == o.G_; }
  std::string to_string() const;

 private:
  RfMatrix G_;
  std::vector<int64_t> a_;
};

/// dim_k(big / small); requires small to be contained in big.
int64_t colength(const Lattice& big, const Lattice& small);

/// The lattice lies inside W (A-part coordinates have no poles).
bool lies_in(const LocalUnitModule& W, const Lattice& L);

/// A-span of F(L): the Hermite form of B * G^{(q)}.
Lattice phi_span(const LocalUnitModule& W, const Lattice& L);

}  // namespace frobroot::local
