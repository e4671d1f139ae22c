#pragma once

#include <string>
#include <utility>
#include <vector>

#include "frobroot/arith/field.hpp"

namespace frobroot::arith {

/// Dense univariate polynomial over a finite field, coefficients low to high.
/// The zero polynomial has an empty coefficient vector.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Field* f) : f_(f) {}
  Poly(const Field* f, std::vector<Fe> c);

  static Poly constant(const Field* f, Fe c);
  static Poly monomial(const Field* f, Fe c, size_t k);
  /// x - a
  static Poly linear(const Field* f, Fe a);

  const Field* field() const { return f_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int64_t degree() const { return static_cast<int64_t>(c_.size()) - 1; }
  Fe coeff(size_t i) const { return i < c_.size() ? c_[i] : Fe{}; }
  const std::vector<Fe>& coeffs() const { return c_; }
  Fe lead() const { return c_.empty() ? Fe{} : c_.back(); }
  /// Exponent of the lowest nonzero term; -1 for zero.
  int64_t low_degree() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(Fe c) const;
  Poly shifted_up(size_t k) const;  // times x^k
  /// Drops the k lowest coefficients (exact division by x^k when they vanish).
  Poly shifted_down(size_t k) const;
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly monic() const;
  Poly pow(uint64_t k) const;
  /// Coefficientwise q-power with x -> x^q, i.e. the q-th power of this polynomial.
  Poly frobenius() const;
  /// p(x + a)
  Poly taylor_shift(Fe a) const;
  /// x^d p(1/x) for d >= degree.
  Poly reversed(size_t d) const;
  Poly derivative() const;
  Fe eval(Fe x) const;
  Poly truncated(size_t n) const;  // terms of degree < n

  bool operator==(const Poly& o) const { return c_ == o.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  const Field* f_ = nullptr;
  std::vector<Fe> c_;
};

Poly gcd(Poly a, Poly b);
/// Roots in the polynomial's field, ascending by field element code.
std::vector<Fe> roots(const Poly& f);
bool is_squarefree(const Poly& f);

}  // namespace frobroot::arith
