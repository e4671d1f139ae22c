#include "frobroot/arith/poly.hpp"

#include <algorithm>

#include "frobroot/errors.hpp"

namespace frobroot::arith {

Poly::Poly(const Field* f, std::vector<Fe> c) : f_(f), c_(std::move(c)) { trim(); }

Poly Poly::constant(const Field* f, Fe c) { return Poly(f, {c}); }

Poly Poly::monomial(const Field* f, Fe c, size_t k) {
  std::vector<Fe> v(k + 1, Fe{});
  v[k] = c;
  return Poly(f, std::move(v));
}

Poly Poly::linear(const Field* f, Fe a) { return Poly(f, {f->neg(a), f->one()}); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int64_t Poly::low_degree() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<int64_t>(i);
  return -1;
}

Poly Poly::operator+(const Poly& o) const {
  const Field* f = f_ ? f_ : o.f_;
  std::vector<Fe> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = f->add(coeff(i), o.coeff(i));
  return Poly(f, std::move(r));
}

Poly Poly::operator-() const {
  std::vector<Fe> r(c_.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = f_->neg(c_[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  const Field* f = f_ ? f_ : o.f_;
  if (is_zero() || o.is_zero()) return Poly(f);
  std::vector<Fe> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      r[i + j] = f->add(r[i + j], f->mul(c_[i], o.c_[j]));
    }
  }
  return Poly(f, std::move(r));
}

Poly Poly::scaled(Fe c) const {
  std::vector<Fe> r(c_.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = f_->mul(c_[i], c);
  return Poly(f_, std::move(r));
}

Poly Poly::shifted_up(size_t k) const {
  if (is_zero()) return *this;
  std::vector<Fe> r(k, Fe{});
  r.insert(r.end(), c_.begin(), c_.end());
  return Poly(f_, std::move(r));
}

Poly Poly::shifted_down(size_t k) const {
  if (k >= c_.size()) return Poly(f_);
  return Poly(f_, std::vector<Fe>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) fail(ErrorKind::InvalidInput, "arith", "polynomial division by zero");
  const Field* f = f_ ? f_ : d.f_;
  if (degree() < d.degree()) return {Poly(f), *this};
  std::vector<Fe> r = c_;
  std::vector<Fe> q(c_.size() - d.c_.size() + 1);
  const Fe li = f->inv(d.lead());
  const size_t dd = d.c_.size() - 1;
  for (size_t i = r.size(); i-- > dd;) {
    if (r[i].is_zero()) continue;
    const Fe c = f->mul(r[i], li);
    q[i - dd] = c;
    for (size_t j = 0; j <= dd; ++j) r[i - dd + j] = f->sub(r[i - dd + j], f->mul(c, d.c_[j]));
  }
  r.resize(dd);
  return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(f_->inv(lead()));
}

Poly Poly::pow(uint64_t k) const {
  Poly result = constant(f_, f_->one());
  Poly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Poly Poly::frobenius() const {
  if (is_zero()) return *this;
  const uint64_t q = f_->twist();
  std::vector<Fe> r((c_.size() - 1) * q + 1, Fe{});
  for (size_t i = 0; i < c_.size(); ++i) r[i * q] = f_->frob(c_[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::taylor_shift(Fe a) const {
  // Horner in the shifted variable.
  Poly result(f_);
  const Poly xa(f_, {a, f_->one()});
  for (size_t i = c_.size(); i-- > 0;) result = result * xa + constant(f_, c_[i]);
  return result;
}

Poly Poly::reversed(size_t d) const {
  std::vector<Fe> r(d + 1, Fe{});
  for (size_t i = 0; i < c_.size(); ++i) r[d - i] = c_[i];
  return Poly(f_, std::move(r));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_);
  std::vector<Fe> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_->mul_int(c_[i], static_cast<int64_t>(i));
  return Poly(f_, std::move(r));
}

Fe Poly::eval(Fe x) const {
  Fe acc{};
  for (size_t i = c_.size(); i-- > 0;) acc = f_->add(f_->mul(acc, x), c_[i]);
  return acc;
}

Poly Poly::truncated(size_t n) const {
  if (n >= c_.size()) return *this;
  return Poly(f_, std::vector<Fe>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    const std::string cs = f_->to_string(c_[i]);
    if (i == 0) {
      s += cs;
      continue;
    }
    if (c_[i] != f_->one()) s += cs + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<Fe> roots(const Poly& f) {
  std::vector<Fe> out;
  if (f.degree() <= 0) return out;
  const Field* F = f.field();
  for (uint64_t code = 0; code < F->size(); ++code) {
    const Fe a{static_cast<uint32_t>(code)};
    if (f.eval(a).is_zero()) {
      out.push_back(a);
      if (static_cast<int64_t>(out.size()) == f.degree()) break;
    }
  }
  return out;
}

bool is_squarefree(const Poly& f) {
  if (f.degree() <= 0) return true;
  const Poly d = f.derivative();
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

}  // namespace frobroot::arith
