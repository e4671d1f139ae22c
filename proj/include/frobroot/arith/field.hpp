#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace frobroot::arith {

/// Element of a finite field in logarithmic encoding: 0 is zero, k+1 is g^k
/// for the field's documented generator g. Only meaningful together with the
/// Field that produced it.
struct Fe {
  uint32_t code = 0;
  constexpr bool is_zero() const { return code == 0; }
  friend constexpr bool operator==(Fe, Fe) = default;
  friend constexpr auto operator<=>(Fe, Fe) = default;
};

class Field;
using FieldRef = std::shared_ptr<const Field>;

/// The finite field F_{p^{r e}} together with the Frobenius twist q = p^r.
///
/// The field is presented as F_p[x]/(modulus) where modulus is the smallest
/// monic irreducible polynomial of degree r*e, ordering candidates by the
/// integer sum(c_i p^i) of their lower coefficients. Elements are stored as
/// discrete logarithms with respect to the smallest primitive element g (in the
/// same order), and addition uses a Zech logarithm table. Contexts are cached
/// process-wide, so a given (p, r, e) always yields the same object.
class Field {
 public:
  static constexpr uint64_t kMaxSize = uint64_t{1} << 23;

  /// Throws InvalidInput if p is not prime or p^{r e} exceeds kMaxSize.
  static FieldRef get(uint32_t p, uint32_t r, uint32_t e = 1);

  uint32_t p() const { return p_; }
  uint32_t r() const { return r_; }
  uint32_t e() const { return e_; }
  uint32_t degree() const { return r_ * e_; }
  uint64_t size() const;
  /// q = p^r, the exponent of the semilinear Frobenius.
  uint64_t twist() const { return q_; }
  const std::vector<uint32_t>& modulus() const;
  /// Poly-index (sum c_i p^i) of the generator g.
  uint32_t generator_index() const;

  FieldRef extension(uint32_t factor) const { return get(p_, r_, e_ * factor); }

  Fe zero() const { return Fe{0}; }
  Fe one() const { return Fe{1}; }
  Fe generator() const;
  Fe gen_pow(int64_t k) const;
  /// Discrete log of a nonzero element.
  uint64_t log(Fe a) const { return a.code - 1; }

  Fe from_int(int64_t n) const;
  Fe from_index(uint32_t poly_index) const;
  uint32_t index(Fe a) const;
  /// Coordinates over F_p in the power basis 1, x, ..., x^{D-1}.
  std::vector<uint32_t> coords(Fe a) const;
  Fe from_coords(std::span<const uint32_t> c) const;

  Fe add(Fe a, Fe b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    uint32_t diff = b.code >= a.code ? b.code - a.code : b.code + n_ - a.code;
    const uint32_t z = zech_[diff];
    if (z == 0) return Fe{0};
    uint32_t c = a.code + z - 1;
    if (c > n_) c -= n_;
    return Fe{c};
  }
  Fe neg(Fe a) const {
    if (a.is_zero() || p_ == 2) return a;
    uint32_t c = a.code + half_;
    if (c > n_) c -= n_;
    return Fe{c};
  }
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe mul(Fe a, Fe b) const {
    if (a.is_zero() || b.is_zero()) return Fe{0};
    uint32_t c = a.code + b.code - 1;
    if (c > n_) c -= n_;
    return Fe{c};
  }
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, int64_t k) const;
  /// a^q for the twist q.
  Fe frob(Fe a) const { return pow_u(a, q_); }
  /// a^{q^k}; k may be negative.
  Fe frob(Fe a, int64_t k) const;
  Fe pow_u(Fe a, uint64_t k) const;
  /// Multiplication by an integer (repeated addition).
  Fe mul_int(Fe a, int64_t n) const { return mul(a, from_int(n)); }

  bool in_prime_field(Fe a) const;
  /// True iff a lies in the subfield F_{p^k} (k must divide the degree).
  bool in_subfield(Fe a, uint32_t k) const;
  uint64_t order(Fe a) const;

  /// "0", an integer for prime-field elements, otherwise "g^k".
  std::string to_string(Fe a) const;

  std::string describe() const;

  /// Element enumeration in poly-index order.
  Fe element(uint64_t i) const { return from_index(static_cast<uint32_t>(i)); }

  struct Tables;

 private:
  Field(uint32_t p, uint32_t r, uint32_t e, std::shared_ptr<const Tables> t);

  uint32_t p_, r_, e_;
  uint64_t q_;
  std::shared_ptr<const Tables> t_;
  uint32_t n_ = 1;     // size - 1
  uint32_t half_ = 0;  // log of -1
  const uint32_t* zech_ = nullptr;
};

/// Field embedding F_{p^a} -> F_{p^b} (a | b), sending the defining root of
/// the smaller modulus to its smallest root (by discrete log) in the larger
/// field. Cached; deterministic.
class Embedding {
 public:
  static std::shared_ptr<const Embedding> get(const Field& from, const Field& to);
  Fe operator()(Fe a) const { return map_[a.code]; }
  const Field& from() const { return *from_; }
  const Field& to() const { return *to_; }

 private:
  Embedding() = default;
  FieldRef from_, to_;
  std::vector<Fe> map_;
};

bool is_prime(uint64_t n);

/// Polynomials over F_p with coefficients low->high; used for modulus search.
namespace fp_poly {
using Poly = std::vector<uint32_t>;
void trim(Poly& a);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, uint32_t p);
Poly powmod_x(uint64_t e_pow_of_p_times, const Poly& m, uint32_t p);
Poly gcd(Poly a, Poly b, uint32_t p);
bool is_irreducible(const Poly& f, uint32_t p);
}  // namespace fp_poly

}  // namespace frobroot::arith
