#include "frobroot/arith/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "frobroot/errors.hpp"

namespace frobroot::arith {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace fp_poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

namespace {

Poly mul(const Poly& a, const Poly& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<uint32_t>((c[i + j] + uint64_t{a[i]} * b[j]) % p);
  }
  trim(c);
  return c;
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
  uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(result);
}

Poly rem(Poly a, const Poly& m, uint32_t p) {
  trim(a);
  const size_t dm = m.size() - 1;
  const uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm && !a.empty()) {
    const uint32_t c = static_cast<uint32_t>(uint64_t{a.back()} * lead_inv % p);
    const size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<uint32_t>((a[shift + i] + uint64_t{p - c} * m[i]) % p);
    trim(a);
  }
  return a;
}

}  // namespace

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, uint32_t p) { return rem(mul(a, b, p), m, p); }

// x^(p^k) mod m.
Poly powmod_x(uint64_t k, const Poly& m, uint32_t p) {
  Poly h = rem(Poly{0, 1}, m, p);
  for (uint64_t i = 0; i < k; ++i) {
    Poly result{1}, base = h;
    uint64_t e = p;
    while (e) {
      if (e & 1) result = mulmod(result, base, m, p);
      base = mulmod(base, base, m, p);
      e >>= 1;
    }
    h = result;
  }
  return h;
}

Poly gcd(Poly a, Poly b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const uint32_t li = inv_mod(a.back(), p);
    for (auto& c : a) c = static_cast<uint32_t>(uint64_t{c} * li % p);
  }
  return a;
}

bool is_irreducible(const Poly& f, uint32_t p) {
  const size_t d = f.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  auto x_minus = [&](Poly h) {
    if (h.size() < 2) h.resize(2, 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    return h;
  };
  if (!x_minus(powmod_x(d, f, p)).empty()) return false;
  for (size_t l = 2; l <= d; ++l) {
    if (d % l != 0 || !is_prime(l)) continue;
    Poly g = gcd(f, x_minus(powmod_x(d / l, f, p)), p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace fp_poly

struct Field::Tables {
  uint32_t p = 0;
  uint32_t D = 0;
  uint64_t Q = 0;
  std::vector<uint32_t> modulus;
  uint32_t gen_index = 0;
  std::vector<uint32_t> pow_tab;  // g^k -> poly index
  std::vector<uint32_t> log_tab;  // poly index -> code
  std::vector<uint32_t> zech;     // k -> code of 1 + g^k
  std::vector<uint64_t> pw;       // p^i
};

namespace {

std::vector<uint32_t> digits(uint64_t idx, uint32_t p, uint32_t D) {
  std::vector<uint32_t> d(D, 0);
  for (uint32_t i = 0; i < D; ++i) {
    d[i] = static_cast<uint32_t>(idx % p);
    idx /= p;
  }
  return d;
}

uint64_t undigits(const std::vector<uint32_t>& d, uint32_t p) {
  uint64_t idx = 0;
  for (size_t i = d.size(); i-- > 0;) idx = idx * p + d[i];
  return idx;
}

std::shared_ptr<const Field::Tables> build_tables(uint32_t p, uint32_t D) {
  auto t = std::make_shared<Field::Tables>();
  t->p = p;
  t->D = D;
  t->Q = 1;
  for (uint32_t i = 0; i < D; ++i) {
    t->pw.push_back(t->Q);
    t->Q *= p;
  }
  const uint64_t Q = t->Q;

  for (uint64_t idx = 0;; ++idx) {
    fp_poly::Poly f = digits(idx, p, D);
    f.push_back(1);
    if (fp_poly::is_irreducible(f, p)) {
      t->modulus = f;
      break;
    }
  }
  const auto& m = t->modulus;
  auto mul_index = [&](uint64_t a, uint64_t b) -> uint64_t {
    fp_poly::Poly pa = digits(a, p, D), pb = digits(b, p, D);
    fp_poly::trim(pa);
    fp_poly::trim(pb);
    fp_poly::Poly c = fp_poly::mulmod(pa, pb, m, p);
    c.resize(D, 0);
    return undigits(c, p);
  };
  auto pow_index = [&](uint64_t a, uint64_t e) -> uint64_t {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul_index(r, a);
      a = mul_index(a, a);
      e >>= 1;
    }
    return r;
  };

  std::vector<uint64_t> primes;
  {
    uint64_t n = Q - 1;
    for (uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        primes.push_back(d);
        while (n % d == 0) n /= d;
      }
    }
    if (n > 1) primes.push_back(n);
  }
  for (uint64_t idx = 1; idx < Q; ++idx) {
    bool primitive = true;
    for (uint64_t l : primes) {
      if (pow_index(idx, (Q - 1) / l) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      t->gen_index = static_cast<uint32_t>(idx);
      break;
    }
  }
  if (Q == 2) t->gen_index = 1;

  t->pow_tab.assign(Q - 1, 0);
  t->log_tab.assign(Q, 0);
  // Multiplication by g as an F_p-linear map on digit vectors.
  std::vector<std::vector<uint32_t>> gmul(D);
  for (uint32_t i = 0; i < D; ++i) gmul[i] = digits(mul_index(t->pw[i], t->gen_index), p, D);
  std::vector<uint32_t> cur(D, 0), next(D);
  cur[0] = 1;
  for (uint64_t k = 0; k + 1 < Q; ++k) {
    const uint64_t idx = undigits(cur, p);
    t->pow_tab[k] = static_cast<uint32_t>(idx);
    t->log_tab[idx] = static_cast<uint32_t>(k + 1);
    std::fill(next.begin(), next.end(), 0);
    for (uint32_t i = 0; i < D; ++i) {
      if (!cur[i]) continue;
      for (uint32_t j = 0; j < D; ++j)
        next[j] = static_cast<uint32_t>((next[j] + uint64_t{cur[i]} * gmul[i][j]) % p);
    }
    std::swap(cur, next);
  }
  t->zech.assign(Q - 1, 0);
  for (uint64_t k = 0; k + 1 < Q; ++k) {
    uint64_t idx = t->pow_tab[k];
    const uint64_t c0 = idx % p;
    idx = idx - c0 + (c0 + 1) % p;
    t->zech[k] = t->log_tab[idx];
  }
  return t;
}

}  // namespace

Field::Field(uint32_t p, uint32_t r, uint32_t e, std::shared_ptr<const Tables> t)
    : p_(p), r_(r), e_(e), q_(1), t_(std::move(t)) {
  for (uint32_t i = 0; i < r; ++i) q_ *= p;
  n_ = static_cast<uint32_t>(t_->Q - 1);
  half_ = n_ / 2;
  zech_ = t_->zech.data();
}

FieldRef Field::get(uint32_t p, uint32_t r, uint32_t e) {
  if (!is_prime(p)) fail(ErrorKind::InvalidInput, "arith", "characteristic " + std::to_string(p) + " is not prime");
  if (r == 0 || e == 0) fail(ErrorKind::InvalidInput, "arith", "field degrees must be positive");
  uint64_t Q = 1;
  for (uint64_t i = 0; i < uint64_t{r} * e; ++i) {
    Q *= p;
    if (Q > kMaxSize)
      fail(ErrorKind::InvalidInput, "arith",
           "field F_" + std::to_string(p) + "^" + std::to_string(uint64_t{r} * e) + " exceeds table capacity");
  }
  static std::mutex mu;
  static std::map<std::pair<uint32_t, uint32_t>, std::shared_ptr<const Tables>> tables;
  static std::map<std::tuple<uint32_t, uint32_t, uint32_t>, FieldRef> fields;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, r, e);
  if (auto it = fields.find(key); it != fields.end()) return it->second;
  auto tkey = std::make_pair(p, r * e);
  auto tit = tables.find(tkey);
  if (tit == tables.end()) tit = tables.emplace(tkey, build_tables(p, r * e)).first;
  FieldRef f(new Field(p, r, e, tit->second));
  fields.emplace(key, f);
  return f;
}

uint64_t Field::size() const { return t_->Q; }
const std::vector<uint32_t>& Field::modulus() const { return t_->modulus; }
uint32_t Field::generator_index() const { return t_->gen_index; }

Fe Field::generator() const { return Fe{t_->Q == 2 ? 1u : 2u}; }

Fe Field::gen_pow(int64_t k) const {
  const int64_t n = static_cast<int64_t>(t_->Q - 1);
  int64_t m = k % n;
  if (m < 0) m += n;
  return Fe{static_cast<uint32_t>(m + 1)};
}

Fe Field::from_int(int64_t n) const {
  int64_t m = n % static_cast<int64_t>(p_);
  if (m < 0) m += p_;
  return Fe{t_->log_tab[static_cast<size_t>(m)]};
}

Fe Field::from_index(uint32_t poly_index) const { return Fe{t_->log_tab.at(poly_index)}; }

uint32_t Field::index(Fe a) const { return a.is_zero() ? 0 : t_->pow_tab[a.code - 1]; }

std::vector<uint32_t> Field::coords(Fe a) const { return digits(index(a), p_, t_->D); }

Fe Field::from_coords(std::span<const uint32_t> c) const {
  uint64_t idx = 0;
  for (size_t i = c.size(); i-- > 0;) idx = idx * p_ + (c[i] % p_);
  return from_index(static_cast<uint32_t>(idx));
}

Fe Field::inv(Fe a) const {
  if (a.is_zero()) fail(ErrorKind::InvalidInput, "arith", "inverse of zero");
  const uint64_t n = t_->Q - 1;
  return Fe{static_cast<uint32_t>((n - (a.code - 1)) % n + 1)};
}

Fe Field::pow_u(Fe a, uint64_t k) const {
  if (a.is_zero()) return k == 0 ? one() : a;
  const uint64_t n = t_->Q - 1;
  const unsigned __int128 l = static_cast<unsigned __int128>(a.code - 1) * (k % n);
  return Fe{static_cast<uint32_t>(static_cast<uint64_t>(l % n) + 1)};
}

Fe Field::pow(Fe a, int64_t k) const {
  if (k >= 0) return pow_u(a, static_cast<uint64_t>(k));
  return pow_u(inv(a), static_cast<uint64_t>(-k));
}

Fe Field::frob(Fe a, int64_t k) const {
  // a^{q^e} = a, so the exponent only matters modulo e.
  int64_t m = k % static_cast<int64_t>(e_);
  if (m < 0) m += e_;
  uint64_t ex = 1;
  const uint64_t n = t_->Q - 1;
  for (int64_t i = 0; i < m; ++i) ex = static_cast<uint64_t>(static_cast<unsigned __int128>(ex) * q_ % n);
  return pow_u(a, ex);
}

bool Field::in_prime_field(Fe a) const { return index(a) < p_; }

bool Field::in_subfield(Fe a, uint32_t k) const {
  uint64_t pk = 1;
  for (uint32_t i = 0; i < k; ++i) pk *= p_;
  return pow_u(a, pk) == a;
}

uint64_t Field::order(Fe a) const {
  if (a.is_zero()) fail(ErrorKind::InvalidInput, "arith", "order of zero");
  const uint64_t n = t_->Q - 1;
  return n / std::gcd(n, uint64_t{a.code - 1});
}

std::string Field::to_string(Fe a) const {
  if (a.is_zero()) return "0";
  const uint32_t idx = index(a);
  if (idx < p_) return std::to_string(idx);
  return "g^" + std::to_string(a.code - 1);
}

std::string Field::describe() const {
  std::string s = "F_" + std::to_string(size()) + " (q=" + std::to_string(q_) + ", modulus";
  for (size_t i = t_->modulus.size(); i-- > 0;) s += " " + std::to_string(t_->modulus[i]);
  return s + ")";
}

std::shared_ptr<const Embedding> Embedding::get(const Field& from, const Field& to) {
  if (from.p() != to.p() || to.degree() % from.degree() != 0)
    fail(ErrorKind::InvalidInput, "arith", "no embedding " + from.describe() + " -> " + to.describe());
  static std::mutex mu;
  static std::map<std::pair<const Field*, const Field*>, std::shared_ptr<const Embedding>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(&from, &to);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto emb = std::shared_ptr<Embedding>(new Embedding());
  emb->from_ = Field::get(from.p(), from.r(), from.e());
  emb->to_ = Field::get(to.p(), to.r(), to.e());
  emb->map_.assign(from.size(), Fe{0});
  const uint32_t D = from.degree();
  std::vector<Fe> powers(D);
  if (D == 1) {
    powers[0] = to.one();
  } else if (from.degree() == to.degree()) {
    for (uint32_t i = 0; i < D; ++i) {
      std::vector<uint32_t> c(D, 0);
      c[i] = 1;
      powers[i] = to.from_coords(c);
    }
  } else {
    const uint64_t stride = (to.size() - 1) / (from.size() - 1);
    const auto& m = from.modulus();
    Fe root{0};
    bool found = false;
    for (uint64_t k = 0; k < from.size() - 1 && !found; ++k) {
      const Fe cand = to.gen_pow(static_cast<int64_t>(k * stride));
      Fe acc{0};
      for (size_t i = m.size(); i-- > 0;) acc = to.add(to.mul(acc, cand), to.from_int(m[i]));
      if (acc.is_zero()) {
        root = cand;
        found = true;
      }
    }
    if (!found) fail(ErrorKind::Internal, "arith", "modulus has no root in the extension");
    Fe acc = to.one();
    for (uint32_t i = 0; i < D; ++i) {
      powers[i] = acc;
      acc = to.mul(acc, root);
    }
  }
  for (uint64_t code = 0; code < from.size(); ++code) {
    const auto c = from.coords(Fe{static_cast<uint32_t>(code)});
    Fe acc{0};
    for (uint32_t i = 0; i < D; ++i)
      if (c[i]) acc = to.add(acc, to.mul_int(powers[i], c[i]));
    emb->map_[code] = acc;
  }
  cache.emplace(key, emb);
  return emb;
}

}  // namespace frobroot::arith
