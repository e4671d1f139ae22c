#pragma once

#include <cstdint>
#include <vector>

#include "frobroot/arith/linalg.hpp"
#include "frobroot/arith/poly_extension.hpp"
#include "frobroot/arith/series.hpp"

namespace frobroot::semilin {

using arith::Fe;
using arith::FeMatrix;
using arith::FeVector;
using arith::Field;
using arith::FieldRef;
using arith::Series;

/// phi(x) = M x^{(q)} on F_{q'}^n, q the twist of the ground field.
/// Column j of M is phi(e_j).
struct SemilinearOp {
  const Field* field = nullptr;
  FeMatrix matrix;

  size_t dim() const { return matrix.rows(); }
  FeVector apply(const FeVector& v) const;
  /// Matrix of phi^k: M M^{(q)} ... M^{(q^{k-1})}.
  FeMatrix power_matrix(size_t k) const;
  /// The same operator over a larger field.
  SemilinearOp base_change(const Field& ext) const;
  /// Change of basis by G: G^{-1} M G^{(q)}.
  SemilinearOp conjugate(const FeMatrix& G) const;
};

struct SsNil {
  size_t ss = 0;
  size_t nil = 0;
};

/// ss = rank(phi^n), nil = n - ss.
SsNil ss_nil_dims(const SemilinearOp& op);

struct FixedSpace {
  const Field* field = nullptr;  // field the basis vectors live in
  std::vector<FeVector> basis;   // independent over F_q, each fixed by phi
  /// Dimension over F_q of the fixed set; the fixed set has q^dim elements.
  size_t dim() const { return basis.size(); }
};

/// {x over the ground field : phi(x) = x}, by restriction of scalars to F_p.
FixedSpace fixed_space(const SemilinearOp& op);

struct Splitting {
  FieldRef field;       // F_{q'^e}
  uint32_t degree = 1;  // e
  FixedSpace fixed;
};

inline constexpr uint32_t kMaxExtensionDegree = 1u << 12;

/// Smallest e such that the fixed space over F_{q'^e} has dimension ss.
/// IterationLimit when e would exceed `cap` or the field-table capacity.
Splitting splitting_extension(const SemilinearOp& op, uint32_t cap = kMaxExtensionDegree);

struct FieldSolution {
  FieldRef field;  // null when the solution needed a polynomial-basis extension
  uint32_t degree = 1;
  FeVector solution;
  /// Extensions beyond the table capacity: the solution over poly_field.
  std::shared_ptr<const arith::PolyExtension> poly_field;
  std::vector<arith::PolyExtension::Elem> poly_solution;
};

/// x with x - phi(x) = v over the smallest extension where one exists.
/// Among solutions the one with all free prime-field coordinates zero is returned.
/// Extensions too large for log tables are built as polynomial quotients.
FieldSolution artin_schreier_solve_field(const SemilinearOp& op, const FeVector& v,
                                         uint32_t cap = kMaxExtensionDegree);

struct SeriesSolution {
  FieldRef field;
  std::vector<Series> solution;
  /// Set instead of `field` when the residue solution needed a
  /// polynomial-basis extension: coefficients[i][k] is the t^k coefficient of b'_i.
  std::shared_ptr<const arith::PolyExtension> poly_field;
  std::vector<std::vector<arith::PolyExtension::Elem>> coefficients;
};

/// b' with b'_i - sum_j (b'_j)^q a_ji = b_i to absolute precision `precision`.
/// Entries of a and b must have valuation >= 0.
SeriesSolution artin_schreier_solve_series(const arith::Matrix<Series>& a, const std::vector<Series>& b,
                                           int64_t precision, uint32_t cap = kMaxExtensionDegree);

/// Image of a series under a field embedding.
Series embed(const arith::Embedding& emb, const Series& s);

}  // namespace frobroot::semilin
