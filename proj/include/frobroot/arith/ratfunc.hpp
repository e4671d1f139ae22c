#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "frobroot/arith/poly.hpp"
#include "frobroot/arith/series.hpp"

namespace frobroot::arith {

/// Rational function num/den in one variable over a finite field, reduced,
/// with monic denominator. Used both for global functions of x and for exact
/// local scalars in a uniformizer t (Laurent polynomials are the special case
/// of a monomial denominator). Valuations are taken at the variable = 0.
class RatFunc {
 public:
  static constexpr int64_t kInfinity = std::numeric_limits<int64_t>::max();

  RatFunc() = default;
  explicit RatFunc(const Field* f) : num_(f), den_(Poly::constant(f, f->one())) {}
  explicit RatFunc(Poly num);
  RatFunc(Poly num, Poly den);

  static RatFunc constant(const Field* f, Fe c) { return RatFunc(Poly::constant(f, c)); }
  static RatFunc one(const Field* f) { return constant(f, f->one()); }
  /// c * x^k, k may be negative.
  static RatFunc monomial(const Field* f, Fe c, int64_t k);
  /// Laurent polynomial from (exponent, coefficient) pairs.
  static RatFunc laurent(const Field* f, const std::vector<Series::Term>& terms);

  const Field* field() const { return num_.field() ? num_.field() : den_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.degree() == 0; }
  bool is_laurent() const { return den_.low_degree() == den_.degree(); }
  bool is_one() const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc inv() const;
  RatFunc scaled(Fe c) const;
  /// x^k * f
  RatFunc times_power(int64_t k) const;
  RatFunc pow(int64_t k) const;

  /// Order of vanishing at 0; kInfinity for zero.
  int64_t valuation() const;
  /// deg(num) - deg(den); the negated valuation at infinity.
  int64_t degree() const;
  /// Coefficient of x^{valuation}.
  Fe leading_at_zero() const;
  /// Value at 0; requires valuation >= 0.
  Fe value_at_zero() const;

  /// The q-th power (q = field twist).
  RatFunc frobenius() const;
  /// f(x + a)
  RatFunc taylor_shift(Fe a) const;
  /// f(1/x)
  RatFunc invert_variable() const;
  /// f(x^e)
  RatFunc substitute_power(uint64_t e) const;

  /// Expansion coefficients at 0 for exponents in [from, to).
  std::vector<Fe> coefficients(int64_t from, int64_t to) const;
  Series expand(int64_t precision) const;
  /// The Laurent polynomial formed by the expansion terms with exponent < n.
  RatFunc truncated_below(int64_t n) const;
  /// f = sum_{j<q} x^j (f_j)^q; returns f_0..f_{q-1}.
  std::vector<RatFunc> qth_root_components() const;

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

}  // namespace frobroot::arith
