#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "frobroot/arith/field.hpp"

namespace frobroot::arith {

/// Laurent series over a finite field with certified absolute precision.
///
/// Terms are stored sparsely in increasing exponent order. A series with
/// precision N knows its coefficients for exponents < N; kExact marks a
/// Laurent polynomial. Arithmetic propagates precision pessimistically, and
/// reading a coefficient at or beyond the precision throws
/// InsufficientPrecision.
class Series {
 public:
  static constexpr int64_t kExact = std::numeric_limits<int64_t>::max();
  static constexpr int64_t kNoValuation = std::numeric_limits<int64_t>::max();

  struct Term {
    int64_t exp;
    Fe c;
    bool operator==(const Term&) const = default;
  };

  Series() = default;
  explicit Series(const Field* f, int64_t precision = kExact) : f_(f), prec_(precision) {}
  Series(const Field* f, std::vector<Term> terms, int64_t precision = kExact);

  static Series monomial(const Field* f, Fe c, int64_t e, int64_t precision = kExact);
  static Series one(const Field* f) { return monomial(f, f->one(), 0); }

  const Field* field() const { return f_; }
  int64_t precision() const { return prec_; }
  bool is_exact() const { return prec_ == kExact; }
  /// No known nonzero coefficient (O(t^N) or exactly zero).
  bool is_zero() const { return terms_.empty(); }
  int64_t valuation() const { return terms_.empty() ? kNoValuation : terms_.front().exp; }
  Fe leading() const { return terms_.empty() ? Fe{} : terms_.front().c; }
  const std::vector<Term>& terms() const { return terms_; }
  Fe coeff(int64_t e) const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  Series scaled(Fe c) const;
  /// t^k * f
  Series shifted(int64_t k) const;
  Series truncated(int64_t precision) const;
  /// sum c_i^q t^{q i}: the q-th power map for q = field twist.
  Series frobenius() const;
  /// f(t^e)
  Series substituted(uint64_t e) const;
  /// g with f*g = 1 up to absolute precision `target`.
  Series inverse(int64_t target) const;
  /// f = sum_{j<q} t^j (f_j)^{(q)}; returns f_0..f_{q-1}.
  std::vector<Series> qth_root_components() const;

  /// Equal on all exponents below the smaller of the two precisions.
  bool agrees_with(const Series& o) const;
  bool operator==(const Series& o) const { return prec_ == o.prec_ && terms_ == o.terms_; }

  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();
  const Field* f_ = nullptr;
  std::vector<Term> terms_;
  int64_t prec_ = kExact;
};

/// Free-function forms of the two basic series operations.
Series series_frobenius(const Series& f);
Series laurent_inverse(const Series& f, int64_t target_precision);

}  // namespace frobroot::arith
