#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "frobroot/arith/poly.hpp"

namespace frobroot::arith {

/// The degree-k extension F[z]/(m) of a table field F, for extensions too
/// large for log tables. m is the first monic irreducible polynomial of
/// degree k in enumeration order. Elements are coefficient vectors of
/// length k, low degree first.
class PolyExtension {
 public:
  using Elem = std::vector<Fe>;

  static std::shared_ptr<const PolyExtension> get(const Field& base, uint32_t degree);

  const Field& base() const { return *F_; }
  uint32_t degree() const { return k_; }
  const Poly& modulus() const { return m_; }
  /// log_p of the number of elements.
  uint64_t prime_degree() const { return uint64_t{k_} * F_->degree(); }

  Elem zero() const { return Elem(k_, Fe{}); }
  Elem from_base(Fe c) const;
  bool is_zero(const Elem& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  /// Product with a base-field scalar.
  Elem scale(const Elem& a, Fe c) const;
  /// a^q for q the twist of the base field.
  Elem frob(const Elem& a) const;

  /// Coordinates over F_p (k * deg F of them) and back.
  std::vector<uint32_t> coords(const Elem& a) const;
  Elem from_coords(const std::vector<uint32_t>& c) const;

  std::string to_string(const Elem& a) const;

 private:
  PolyExtension(const Field* F, uint32_t k, Poly m);
  Poly reduce(const Poly& a) const;

  const Field* F_;
  FieldRef keep_;
  uint32_t k_;
  Poly m_;
  std::vector<Elem> zq_;  // z^{q i} mod m for i < k
};

/// Rabin's test over the field of the polynomial.
bool is_irreducible(const Poly& m);

}  // namespace frobroot::arith
