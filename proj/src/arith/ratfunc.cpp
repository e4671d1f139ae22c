#include "frobroot/arith/ratfunc.hpp"

#include <algorithm>

#include "frobroot/errors.hpp"

namespace frobroot::arith {

RatFunc::RatFunc(Poly num) : num_(std::move(num)) {
  den_ = Poly::constant(num_.field(), num_.field()->one());
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorKind::InvalidInput, "arith", "rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  const Field* f = field();
  if (num_.is_zero()) {
    num_ = Poly(f);
    den_ = Poly::constant(f, f->one());
    return;
  }
  // Monomial denominators only need the common power of x removed.
  if (den_.low_degree() == den_.degree()) {
    const int64_t k = std::min(num_.low_degree(), den_.degree());
    if (k > 0) {
      num_ = num_.shifted_down(static_cast<size_t>(k));
      den_ = den_.shifted_down(static_cast<size_t>(k));
    }
  } else {
    const Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
  }
  const Fe li = f->inv(den_.lead());
  if (li != f->one()) {
    num_ = num_.scaled(li);
    den_ = den_.scaled(li);
  }
}

RatFunc RatFunc::monomial(const Field* f, Fe c, int64_t k) {
  if (k >= 0) return RatFunc(Poly::monomial(f, c, static_cast<size_t>(k)));
  return RatFunc(Poly::constant(f, c), Poly::monomial(f, f->one(), static_cast<size_t>(-k)));
}

RatFunc RatFunc::laurent(const Field* f, const std::vector<Series::Term>& terms) {
  if (terms.empty()) return RatFunc(f);
  int64_t lo = 0;
  for (const auto& t : terms) lo = std::min(lo, t.exp);
  int64_t hi = 0;
  for (const auto& t : terms) hi = std::max(hi, t.exp - lo);
  std::vector<Fe> c(static_cast<size_t>(hi + 1), Fe{});
  for (const auto& t : terms) {
    Fe& slot = c[static_cast<size_t>(t.exp - lo)];
    slot = f->add(slot, t.c);
  }
  return RatFunc(Poly(f, std::move(c)), Poly::monomial(f, f->one(), static_cast<size_t>(-lo)));
}

bool RatFunc::is_one() const { return is_poly() && num_.degree() == 0 && num_.lead() == field()->one(); }

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc(field() ? field() : o.field());
  if (is_poly() && o.is_poly()) {
    RatFunc r;
    r.num_ = num_ * o.num_;
    r.den_ = den_;
    return r;
  }
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::inv() const {
  if (is_zero()) fail(ErrorKind::InvalidInput, "arith", "inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inv(); }

RatFunc RatFunc::scaled(Fe c) const {
  if (c.is_zero()) return RatFunc(field());
  RatFunc r = *this;
  r.num_ = num_.scaled(c);
  return r;
}

RatFunc RatFunc::times_power(int64_t k) const {
  if (is_zero() || k == 0) return *this;
  if (k > 0) return RatFunc(num_.shifted_up(static_cast<size_t>(k)), den_);
  return RatFunc(num_, den_.shifted_up(static_cast<size_t>(-k)));
}

RatFunc RatFunc::pow(int64_t k) const {
  if (k < 0) return inv().pow(-k);
  RatFunc r = one(field());
  r.num_ = num_.pow(static_cast<uint64_t>(k));
  r.den_ = den_.pow(static_cast<uint64_t>(k));
  return r;
}

int64_t RatFunc::valuation() const {
  if (is_zero()) return kInfinity;
  return num_.low_degree() - den_.low_degree();
}

int64_t RatFunc::degree() const {
  if (is_zero()) fail(ErrorKind::InvalidInput, "arith", "degree of zero rational function");
  return num_.degree() - den_.degree();
}

Fe RatFunc::leading_at_zero() const {
  if (is_zero()) return Fe{};
  const Field* f = field();
  return f->div(num_.coeff(static_cast<size_t>(num_.low_degree())), den_.coeff(static_cast<size_t>(den_.low_degree())));
}

Fe RatFunc::value_at_zero() const {
  const int64_t v = valuation();
  if (v < 0) fail(ErrorKind::InvalidInput, "arith", "value at 0 of a function with a pole");
  return v == 0 ? leading_at_zero() : Fe{};
}

RatFunc RatFunc::frobenius() const {
  if (is_zero()) return *this;
  RatFunc r;
  r.num_ = num_.frobenius();
  r.den_ = den_.frobenius();  // stays reduced and monic
  return r;
}

RatFunc RatFunc::taylor_shift(Fe a) const {
  if (is_zero() || a.is_zero()) return *this;
  return RatFunc(num_.taylor_shift(a), den_.taylor_shift(a));
}

RatFunc RatFunc::invert_variable() const {
  if (is_zero()) return *this;
  const int64_t dn = num_.degree(), dd = den_.degree();
  // num(1/x)/den(1/x) = x^{dd-dn} rev(num)/rev(den)
  return RatFunc(num_.reversed(static_cast<size_t>(dn)), den_.reversed(static_cast<size_t>(dd))).times_power(dd - dn);
}

RatFunc RatFunc::substitute_power(uint64_t e) const {
  if (e == 0) fail(ErrorKind::InvalidInput, "arith", "substitution x -> x^0");
  if (is_zero() || e == 1) return *this;
  auto sub = [e](const Poly& p) {
    std::vector<Fe> c(static_cast<size_t>(p.degree()) * e + 1, Fe{});
    for (size_t i = 0; i < p.coeffs().size(); ++i) c[i * e] = p.coeffs()[i];
    return Poly(p.field(), std::move(c));
  };
  return RatFunc(sub(num_), sub(den_));
}

std::vector<Fe> RatFunc::coefficients(int64_t from, int64_t to) const {
  std::vector<Fe> out(static_cast<size_t>(std::max<int64_t>(0, to - from)), Fe{});
  if (is_zero() || to <= from) return out;
  const Field* f = field();
  const int64_t ln = num_.low_degree(), ld = den_.low_degree();
  const int64_t v = ln - ld;
  if (to <= v) return out;
  // num/den = x^v * n'/d' with d'(0) != 0.
  const Poly n1 = num_.shifted_down(static_cast<size_t>(ln));
  const Poly d1 = den_.shifted_down(static_cast<size_t>(ld));
  const int64_t count = to - v;
  std::vector<Fe> w(static_cast<size_t>(count), Fe{});
  const Fe d0inv = f->inv(d1.coeff(0));
  const auto& dc = d1.coeffs();
  for (int64_t k = 0; k < count; ++k) {
    Fe s = n1.coeff(static_cast<size_t>(k));
    const int64_t lim = std::min<int64_t>(k, static_cast<int64_t>(dc.size()) - 1);
    for (int64_t i = 1; i <= lim; ++i) {
      if (dc[static_cast<size_t>(i)].is_zero()) continue;
      s = f->sub(s, f->mul(dc[static_cast<size_t>(i)], w[static_cast<size_t>(k - i)]));
    }
    w[static_cast<size_t>(k)] = f->mul(s, d0inv);
  }
  for (int64_t e = std::max(from, v); e < to; ++e) out[static_cast<size_t>(e - from)] = w[static_cast<size_t>(e - v)];
  return out;
}

Series RatFunc::expand(int64_t precision) const {
  const Field* f = field();
  if (is_zero()) return Series(f);
  if (is_laurent()) {
    std::vector<Series::Term> t;
    const int64_t shift = -den_.degree();
    for (size_t i = 0; i < num_.coeffs().size(); ++i)
      if (!num_.coeffs()[i].is_zero()) t.push_back({static_cast<int64_t>(i) + shift, num_.coeffs()[i]});
    return Series(f, std::move(t), Series::kExact).truncated(precision);
  }
  const int64_t v = valuation();
  std::vector<Series::Term> t;
  if (precision > v) {
    const auto c = coefficients(v, precision);
    for (size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) t.push_back({v + static_cast<int64_t>(i), c[i]});
  }
  return Series(f, std::move(t), precision);
}

RatFunc RatFunc::truncated_below(int64_t n) const {
  const Field* f = field();
  if (is_zero()) return *this;
  const int64_t v = valuation();
  if (n <= v) return RatFunc(f);
  const auto c = coefficients(v, n);
  std::vector<Series::Term> t;
  for (size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) t.push_back({v + static_cast<int64_t>(i), c[i]});
  return laurent(f, t);
}

std::vector<RatFunc> RatFunc::qth_root_components() const {
  const Field* f = field();
  const uint64_t q = f->twist();
  std::vector<RatFunc> out(q, RatFunc(f));
  if (is_zero()) return out;
  // num/den = num * den^{q-1} / den^q and den^q is the q-th power of den.
  const Poly s = num_ * den_.pow(q - 1);
  std::vector<std::vector<Fe>> parts(q);
  for (size_t i = 0; i < s.coeffs().size(); ++i) {
    if (s.coeffs()[i].is_zero()) continue;
    auto& part = parts[i % q];
    const size_t k = i / q;
    if (part.size() <= k) part.resize(k + 1, Fe{});
    part[k] = f->frob(s.coeffs()[i], -1);
  }
  for (uint64_t j = 0; j < q; ++j) out[j] = RatFunc(Poly(f, std::move(parts[j])), den_);
  return out;
}

std::string RatFunc::to_string(const std::string& var) const {
  if (is_poly()) {
    if (den_.lead() == field()->one()) return num_.to_string(var);
  }
  if (is_laurent()) return expand(Series::kExact).to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace frobroot::arith
