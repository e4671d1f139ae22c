#include "frobroot/arith/poly_extension.hpp"

#include <map>
#include <mutex>

#include "frobroot/errors.hpp"

namespace frobroot::arith {

namespace {

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b).divmod(m).second; }

Poly powmod(Poly a, uint64_t e, const Poly& m) {
  Poly r = Poly::constant(m.field(), m.field()->one());
  a = a.divmod(m).second;
  for (; e; e >>= 1) {
    if (e & 1) r = mulmod(r, a, m);
    if (e > 1) a = mulmod(a, a, m);
  }
  return r;
}

// h(g) mod m by Horner.
Poly compose(const Poly& h, const Poly& g, const Poly& m) {
  Poly r(m.field());
  for (size_t i = h.coeffs().size(); i-- > 0;) r = mulmod(r, g, m) + Poly::constant(m.field(), h.coeffs()[i]);
  return r.divmod(m).second;
}

std::vector<uint32_t> prime_factors(uint32_t k) {
  std::vector<uint32_t> out;
  for (uint32_t l = 2; l * l <= k; ++l)
    if (k % l == 0) {
      out.push_back(l);
      while (k % l == 0) k /= l;
    }
  if (k > 1) out.push_back(k);
  return out;
}

}  // namespace

bool is_irreducible(const Poly& m) {
  const Field* F = m.field();
  const int64_t k = m.degree();
  if (k <= 0) return false;
  if (k == 1) return true;
  const Poly z = Poly::monomial(F, F->one(), 1);
  // h[j] = z^{Q^j} mod m, with h[j+1] = h[j](h[1]) since coefficients are fixed by the Q-power map.
  std::vector<Poly> h{z.divmod(m).second, powmod(z, F->size(), m)};
  for (int64_t j = 2; j <= k; ++j) h.push_back(compose(h.back(), h[1], m));
  if (!((h[static_cast<size_t>(k)] - z).divmod(m).second.is_zero())) return false;
  for (uint32_t l : prime_factors(static_cast<uint32_t>(k)))
    if (gcd(h[static_cast<size_t>(k) / l] - z, m).degree() > 0) return false;
  return true;
}

std::shared_ptr<const PolyExtension> PolyExtension::get(const Field& base, uint32_t degree) {
  if (degree == 0) fail(ErrorKind::InvalidInput, "arith", "extension degree must be positive");
  static std::mutex mu;
  static std::map<std::pair<const Field*, uint32_t>, std::shared_ptr<const PolyExtension>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(&base, degree);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  // Monic candidates z^k + c_{k-1} z^{k-1} + ... + c_0, counting through (c_0, c_1, ...).
  const uint64_t Q = base.size();
  std::vector<uint64_t> digits(degree, 0);
  for (;;) {
    std::vector<Fe> c(degree + 1);
    for (uint32_t i = 0; i < degree; ++i) c[i] = base.element(digits[i]);
    c[degree] = base.one();
    Poly m(&base, std::move(c));
    if ((degree == 1 || !m.coeff(0).is_zero()) && is_irreducible(m)) {
      auto ext = std::shared_ptr<const PolyExtension>(new PolyExtension(&base, degree, std::move(m)));
      cache.emplace(key, ext);
      return ext;
    }
    size_t i = 0;
    while (i < degree && ++digits[i] == Q) digits[i++] = 0;
    if (i == degree) fail(ErrorKind::Internal, "arith", "no irreducible polynomial found");
  }
}

PolyExtension::PolyExtension(const Field* F, uint32_t k, Poly m)
    : F_(F), keep_(Field::get(F->p(), F->r(), F->e())), k_(k), m_(std::move(m)) {
  const Poly zq = powmod(Poly::monomial(F, F->one(), 1), F->twist(), m_);
  Poly acc = Poly::constant(F, F->one());
  for (uint32_t i = 0; i < k_; ++i) {
    Elem e(k_, Fe{});
    for (size_t j = 0; j < acc.coeffs().size(); ++j) e[j] = acc.coeffs()[j];
    zq_.push_back(std::move(e));
    acc = mulmod(acc, zq, m_);
  }
}

Poly PolyExtension::reduce(const Poly& a) const { return a.divmod(m_).second; }

PolyExtension::Elem PolyExtension::from_base(Fe c) const {
  Elem e = zero();
  e[0] = c;
  return e;
}

bool PolyExtension::is_zero(const Elem& a) const {
  for (Fe c : a)
    if (!c.is_zero()) return false;
  return true;
}

PolyExtension::Elem PolyExtension::add(const Elem& a, const Elem& b) const {
  Elem r(k_);
  for (uint32_t i = 0; i < k_; ++i) r[i] = F_->add(a[i], b[i]);
  return r;
}

PolyExtension::Elem PolyExtension::sub(const Elem& a, const Elem& b) const {
  Elem r(k_);
  for (uint32_t i = 0; i < k_; ++i) r[i] = F_->sub(a[i], b[i]);
  return r;
}

PolyExtension::Elem PolyExtension::mul(const Elem& a, const Elem& b) const {
  const Poly r = reduce(Poly(F_, a) * Poly(F_, b));
  Elem out = zero();
  for (size_t i = 0; i < r.coeffs().size(); ++i) out[i] = r.coeffs()[i];
  return out;
}

PolyExtension::Elem PolyExtension::scale(const Elem& a, Fe c) const {
  Elem r(k_);
  for (uint32_t i = 0; i < k_; ++i) r[i] = F_->mul(a[i], c);
  return r;
}

PolyExtension::Elem PolyExtension::frob(const Elem& a) const {
  Elem r = zero();
  for (uint32_t i = 0; i < k_; ++i) {
    if (a[i].is_zero()) continue;
    const Fe c = F_->frob(a[i]);
    for (uint32_t j = 0; j < k_; ++j) r[j] = F_->add(r[j], F_->mul(c, zq_[i][j]));
  }
  return r;
}

std::vector<uint32_t> PolyExtension::coords(const Elem& a) const {
  std::vector<uint32_t> out;
  out.reserve(prime_degree());
  for (Fe c : a) {
    const auto cc = F_->coords(c);
    for (uint32_t d = 0; d < F_->degree(); ++d) out.push_back(d < cc.size() ? cc[d] : 0);
  }
  return out;
}

PolyExtension::Elem PolyExtension::from_coords(const std::vector<uint32_t>& c) const {
  const uint32_t D = F_->degree();
  if (c.size() != prime_degree()) fail(ErrorKind::InvalidInput, "arith", "coordinate vector has the wrong length");
  Elem out(k_);
  for (uint32_t i = 0; i < k_; ++i)
    out[i] = F_->from_coords(std::span<const uint32_t>(c.data() + size_t{i} * D, D));
  return out;
}

std::string PolyExtension::to_string(const Elem& a) const {
  return Poly(F_, a).to_string("z");
}

}  // namespace frobroot::arith
