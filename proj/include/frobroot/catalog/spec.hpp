#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "frobroot/arith/poly.hpp"

namespace frobroot::catalog {

using arith::Fe;
using arith::Field;

/// A closed point of P^1 over the working field: x = a, or infinity.
struct Place {
  bool infinite = false;
  Fe a{};

  static Place at(Fe a) { return Place{false, a}; }
  static Place infinity() { return Place{true, Fe{}}; }
  bool operator==(const Place&) const = default;
  /// Finite places by element code, infinity last.
  bool operator<(const Place& o) const;
};

std::string to_string(const Field& F, const Place& y);
/// "inf" or a scalar in the field syntax.
Place parse_place(const Field* F, const std::string& text);

enum class SheafKind { Constant, Shriek, TameCover, Rank1Twist, DirectSum };
const char* to_string(SheafKind k);

/// A constructible sheaf on P^1 from the supported families.
///  - Constant: the constant sheaf of rank n.
///  - Shriek: extension by zero of the constant rank-n sheaf from the
///    complement of the punctures.
///  - TameCover: pushforward of the constant sheaf along the double cover
///    y^2 = f(x) (p >= 5, f square-free); branched at the roots of f and at
///    infinity when deg f is odd.
///  - Rank1Twist: rank 1, with the local model F(e) = t^d e at each listed
///    place; the d values (counting infinity when listed) must sum to a
///    multiple of q - 1.
///  - DirectSum of the above.
struct SheafSpec {
  SheafKind kind = SheafKind::Constant;
  const Field* field = nullptr;
  size_t rank = 0;
  std::vector<Place> punctures;
  arith::Poly f;
  std::vector<std::pair<Place, int64_t>> twists;
  std::vector<SheafSpec> parts;

  static SheafSpec constant(const Field* F, size_t n);
  static SheafSpec shriek(const Field* F, std::vector<Place> punctures, size_t n);
  static SheafSpec tame_cover(arith::Poly f);
  static SheafSpec rank1_twist(const Field* F, std::vector<std::pair<Place, int64_t>> twists);
  static SheafSpec direct_sum(std::vector<SheafSpec> parts);

  size_t generic_rank() const;
  std::string describe() const;
};

/// Throws InvalidInput or UnsupportedVariant when the spec is outside the catalog.
void validate(const SheafSpec& spec);

/// The same sheaf over a larger working field.
SheafSpec over(const SheafSpec& spec, const Field& ext);

/// The same sheaf in the coordinate x' = 1/x.
SheafSpec swapped(const SheafSpec& spec);

/// Smallest k such that every cover polynomial splits over the degree-k
/// extension of the spec's field.
uint32_t required_extension(const SheafSpec& spec);

}  // namespace frobroot::catalog
