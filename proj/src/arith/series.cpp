#include "frobroot/arith/series.hpp"

#include <algorithm>
#include <map>

#include "frobroot/errors.hpp"

namespace frobroot::arith {

namespace {

int64_t sat_add(int64_t a, int64_t b) {
  if (a == Series::kExact || b == Series::kExact) return Series::kExact;
  if (b > 0 && a > Series::kExact - b) return Series::kExact - 1;
  return a + b;
}

int64_t sat_mul(int64_t a, uint64_t k) {
  if (a == Series::kExact) return a;
  const __int128 v = static_cast<__int128>(a) * static_cast<__int128>(k);
  if (v >= Series::kExact) return Series::kExact - 1;
  return static_cast<int64_t>(v);
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Series::Series(const Field* f, std::vector<Term> terms, int64_t precision)
    : f_(f), terms_(std::move(terms)), prec_(precision) {
  normalize();
}

void Series::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (t.exp >= prec_) break;
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().c = f_->add(out.back().c, t.c);
      if (out.back().c.is_zero()) out.pop_back();
    } else if (!t.c.is_zero()) {
      out.push_back(t);
    }
  }
  terms_ = std::move(out);
}

Series Series::monomial(const Field* f, Fe c, int64_t e, int64_t precision) {
  std::vector<Term> t;
  if (!c.is_zero()) t.push_back({e, c});
  return Series(f, std::move(t), precision);
}

Fe Series::coeff(int64_t e) const {
  if (e >= prec_)
    fail(ErrorKind::InsufficientPrecision, "arith",
         "coefficient t^" + std::to_string(e) + " requested beyond precision " + std::to_string(prec_));
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Term& t, int64_t x) { return t.exp < x; });
  return (it != terms_.end() && it->exp == e) ? it->c : Fe{};
}

Series Series::operator+(const Series& o) const {
  const Field* f = f_ ? f_ : o.f_;
  std::vector<Term> t = terms_;
  t.insert(t.end(), o.terms_.begin(), o.terms_.end());
  return Series(f, std::move(t), std::min(prec_, o.prec_));
}

Series Series::operator-() const {
  std::vector<Term> t = terms_;
  for (auto& x : t) x.c = f_->neg(x.c);
  return Series(f_, std::move(t), prec_);
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
  const Field* f = f_ ? f_ : o.f_;
  // An exact zero factor makes the product exactly zero.
  if ((is_zero() && is_exact()) || (o.is_zero() && o.is_exact())) return Series(f);
  const int64_t va = is_zero() ? prec_ : valuation();
  const int64_t vb = o.is_zero() ? o.prec_ : o.valuation();
  const int64_t prec = std::min(sat_add(prec_, vb), sat_add(o.prec_, va));
  std::map<int64_t, Fe> acc;
  for (const Term& a : terms_) {
    for (const Term& b : o.terms_) {
      const int64_t e = a.exp + b.exp;
      if (e >= prec) break;
      Fe& slot = acc[e];
      slot = f->add(slot, f->mul(a.c, b.c));
    }
  }
  std::vector<Term> t;
  t.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (!c.is_zero()) t.push_back({e, c});
  return Series(f, std::move(t), prec);
}

Series Series::scaled(Fe c) const {
  if (c.is_zero()) return Series(f_, {}, prec_ == kExact ? kExact : prec_);
  std::vector<Term> t = terms_;
  for (auto& x : t) x.c = f_->mul(x.c, c);
  return Series(f_, std::move(t), prec_);
}

Series Series::shifted(int64_t k) const {
  std::vector<Term> t = terms_;
  for (auto& x : t) x.exp += k;
  return Series(f_, std::move(t), prec_ == kExact ? kExact : prec_ + k);
}

Series Series::truncated(int64_t precision) const {
  return Series(f_, terms_, std::min(prec_, precision));
}

Series Series::frobenius() const {
  const uint64_t q = f_->twist();
  std::vector<Term> t = terms_;
  for (auto& x : t) {
    x.c = f_->frob(x.c);
    x.exp = sat_mul(x.exp, q);
  }
  return Series(f_, std::move(t), sat_mul(prec_, q));
}

Series Series::substituted(uint64_t e) const {
  if (e == 0) fail(ErrorKind::InvalidInput, "arith", "substitution t -> t^0");
  std::vector<Term> t = terms_;
  for (auto& x : t) x.exp = sat_mul(x.exp, e);
  return Series(f_, std::move(t), sat_mul(prec_, e));
}

Series Series::inverse(int64_t target) const {
  if (is_zero()) fail(ErrorKind::InvalidInput, "arith", "inverse of a zero series");
  const int64_t v = valuation();
  if (is_exact() && terms_.size() == 1) return monomial(f_, f_->inv(terms_[0].c), -v);
  if (!is_exact() && target > prec_ - 2 * v)
    fail(ErrorKind::InsufficientPrecision, "arith",
         "inverse to precision " + std::to_string(target) + " needs input precision " +
             std::to_string(target + 2 * v) + ", have " + std::to_string(prec_));
  const int64_t count = target + v;  // number of coefficients of the unit part
  if (count <= 0) return Series(f_, {}, target);
  std::vector<Fe> u(static_cast<size_t>(count), Fe{});
  for (const Term& t : terms_) {
    const int64_t k = t.exp - v;
    if (k >= count) break;
    u[static_cast<size_t>(k)] = t.c;
  }
  const Fe u0inv = f_->inv(u[0]);
  std::vector<Fe> w(static_cast<size_t>(count), Fe{});
  w[0] = u0inv;
  std::vector<size_t> nz;
  for (size_t i = 1; i < u.size(); ++i)
    if (!u[i].is_zero()) nz.push_back(i);
  for (size_t k = 1; k < w.size(); ++k) {
    Fe s{};
    for (size_t i : nz) {
      if (i > k) break;
      s = f_->add(s, f_->mul(u[i], w[k - i]));
    }
    w[k] = f_->neg(f_->mul(s, u0inv));
  }
  std::vector<Term> t;
  for (size_t k = 0; k < w.size(); ++k)
    if (!w[k].is_zero()) t.push_back({static_cast<int64_t>(k) - v, w[k]});
  return Series(f_, std::move(t), target);
}

std::vector<Series> Series::qth_root_components() const {
  const int64_t q = static_cast<int64_t>(f_->twist());
  std::vector<std::vector<Term>> parts(static_cast<size_t>(q));
  for (const Term& t : terms_) {
    const int64_t j = ((t.exp % q) + q) % q;
    parts[static_cast<size_t>(j)].push_back({floor_div(t.exp - j, q), f_->frob(t.c, -1)});
  }
  std::vector<Series> out;
  out.reserve(parts.size());
  for (int64_t j = 0; j < q; ++j) {
    const int64_t pj = is_exact() ? kExact : -floor_div(-(prec_ - j), q);
    out.emplace_back(f_, std::move(parts[static_cast<size_t>(j)]), pj);
  }
  return out;
}

bool Series::agrees_with(const Series& o) const {
  const int64_t n = std::min(prec_, o.prec_);
  return truncated(n).terms_ == o.truncated(n).terms_;
}

std::string Series::to_string(const std::string& var) const {
  std::string s;
  for (const Term& t : terms_) {
    if (!s.empty()) s += " + ";
    const std::string cs = f_->to_string(t.c);
    if (t.exp == 0) {
      s += cs;
      continue;
    }
    if (t.c != f_->one()) s += cs + "*";
    s += var;
    if (t.exp != 1) s += "^" + std::to_string(t.exp);
  }
  if (s.empty()) s = "0";
  if (!is_exact()) s += " + O(" + var + "^" + std::to_string(prec_) + ")";
  return s;
}

Series series_frobenius(const Series& f) { return f.frobenius(); }

Series laurent_inverse(const Series& f, int64_t target_precision) { return f.inverse(target_precision); }

}  // namespace frobroot::arith
