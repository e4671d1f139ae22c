#include "frobroot/global/pipeline.hpp"

#include <algorithm>
#include <functional>

#include "frobroot/errors.hpp"

namespace frobroot::global {

using arith::Fe;
using arith::FeMatrix;
using arith::Field;
using arith::Matrix;
using arith::Poly;
using arith::RatFunc;

namespace {

int64_t valuation_at_infinity(const RatFunc& h) { return h.is_zero() ? RatFunc::kInfinity : -h.degree(); }

Fe lead_at_infinity(const RatFunc& h) {
  const Field& F = *h.field();
  return F.div(h.num().lead(), h.den().lead());
}

// Column Hermite-style reduction over F[x]: returns n independent columns
// spanning the same module, lower triangular.
Matrix<Poly> column_basis(Matrix<Poly> g) {
  const size_t n = g.rows(), k = g.cols();
  for (size_t r = 0; r < n; ++r) {
    while (true) {
      size_t best = k;
      for (size_t c = r; c < k; ++c)
        if (!g(r, c).is_zero() && (best == k || g(r, c).degree() < g(r, best).degree())) best = c;
      if (best == k) fail(ErrorKind::Internal, "global", "section generators do not have full rank");
      g.swap_cols(r, best);
      bool done = true;
      for (size_t c = r + 1; c < k; ++c) {
        if (g(r, c).is_zero()) continue;
        const Poly quo = g(r, c).divmod(g(r, r)).first;
        for (size_t i = r; i < n; ++i) g(i, c) = g(i, c) - quo * g(i, r);
        if (!g(r, c).is_zero()) done = false;
      }
      if (done) break;
    }
  }
  Matrix<Poly> out(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out(i, j) = g(i, j);
  // Reduce below-diagonal entries modulo the diagonal to keep degrees small.
  for (size_t c = 0; c < n; ++c)
    for (size_t i = c + 1; i < n; ++i) {
      const Poly quo = out(i, c).divmod(out(i, i)).first;
      if (quo.is_zero()) continue;
      for (size_t row = i; row < n; ++row) out(row, c) = out(row, c) - quo * out(row, i);
    }
  return out;
}

// Lattice at a place, in generic coordinates and the local variable.
RfMatrix local_lattice(const catalog::LocalData& ld, const local::Lattice& L) {
  return arith::mul(catalog::to_local(ld.P, ld.place), L.basis());
}

// F[x]-basis of the sections over the affine line.
RfMatrix affine_frame(const GlobalUnitModule& gm, const std::vector<local::Lattice>& lattices) {
  const Field* F = gm.field;
  const size_t n = gm.n;
  struct Finite {
    Fe a;
    RfMatrix lam;  // local variable
    int64_t M;
  };
  std::vector<Finite> fin;
  for (size_t i = 0; i < gm.places.size(); ++i) {
    const auto& ld = gm.places[i];
    if (ld.place.infinite) continue;
    const RfMatrix lam = local_lattice(ld, lattices[i]);
    const int64_t M = std::max<int64_t>({0, -arith::min_valuation(lam), -arith::min_valuation(arith::inverse(lam))});
    fin.push_back({ld.place.a, lam, M});
  }
  RatFunc U = RatFunc::one(F);
  for (const auto& f : fin) U = U * RatFunc(Poly::linear(F, f.a)).pow(f.M);

  std::vector<std::vector<RatFunc>> gens;
  for (size_t i = 0; i < n; ++i) {
    std::vector<RatFunc> v(n, RatFunc(F));
    v[i] = U;
    gens.push_back(v);
  }
  for (const auto& f : fin) {
    if (f.M == 0) continue;
    const catalog::Place y = catalog::Place::at(f.a);
    const RatFunc Ua = U / RatFunc(Poly::linear(F, f.a)).pow(f.M);
    const RatFunc UaInvLocal = catalog::to_local(Ua, y).inv();
    for (size_t j = 0; j < n; ++j) {
      std::vector<RatFunc> v(n, RatFunc(F));
      for (size_t i = 0; i < n; ++i)
        v[i] = catalog::from_local((f.lam(i, j) * UaInvLocal).truncated_below(f.M), y) * Ua;
      gens.push_back(v);
    }
  }
  Matrix<Poly> G(n, gens.size());
  for (size_t c = 0; c < gens.size(); ++c)
    for (size_t i = 0; i < n; ++i) {
      const RatFunc v = gens[c][i] * U;
      if (!v.is_poly()) fail(ErrorKind::Internal, "global", "section generator is not integral");
      G(i, c) = v.num();
    }
  const Matrix<Poly> basis = column_basis(G);
  RfMatrix Q = arith::rf_zero(F, n, n);
  const RatFunc Uinv = U.inv();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) Q(i, j) = RatFunc(basis(i, j)) * Uinv;
  return Q;
}

// Adjusts the frame until its columns, scaled by x^{d_j}, form a basis of
// the lattice at infinity.
std::vector<int64_t> reduce_at_infinity(const Field* F, RfMatrix& Q, const RfMatrix& lam_inf) {
  const size_t n = Q.rows();
  const RfMatrix lam_inv = arith::inverse(lam_inf);
  for (size_t iter = 0;; ++iter) {
    const RfMatrix R = arith::mul(lam_inv, Q);
    std::vector<int64_t> d(n, RatFunc::kInfinity);
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < n; ++i) d[j] = std::min(d[j], valuation_at_infinity(R(i, j)));
    FeMatrix lead(n, n);
    for (size_t j = 0; j < n; ++j)
      for (size_t i = 0; i < n; ++i)
        if (!R(i, j).is_zero() && valuation_at_infinity(R(i, j)) == d[j]) lead(i, j) = lead_at_infinity(R(i, j));
    const auto ker = arith::kernel(*F, lead);
    if (ker.empty()) return d;
    if (iter > 10000) fail(ErrorKind::IterationLimit, "global", "frame reduction at infinity does not terminate");
    const auto& c = ker.front();
    size_t j0 = n;
    for (size_t j = 0; j < n; ++j)
      if (!c[j].is_zero() && (j0 == n || d[j] < d[j0])) j0 = j;
    const Fe inv0 = F->inv(c[j0]);
    std::vector<RatFunc> col = Q.col(j0);
    for (size_t j = 0; j < n; ++j) {
      if (j == j0 || c[j].is_zero()) continue;
      const RatFunc coef = RatFunc::monomial(F, F->mul(c[j], inv0), d[j] - d[j0]);
      for (size_t i = 0; i < n; ++i) col[i] += coef * Q(i, j);
    }
    Q.set_col(j0, col);
  }
}

}  // namespace

RootBundle root_bundle(const GlobalUnitModule& gm, std::vector<local::Lattice> lattices) {
  if (lattices.size() != gm.places.size()) fail(ErrorKind::InvalidInput, "global", "one lattice per place required");
  RootBundle rb;
  rb.module = gm;
  rb.lattices = std::move(lattices);
  int64_t vsum = 0;
  for (size_t i = 0; i < gm.places.size(); ++i) {
    const auto& ld = gm.places[i];
    const auto check = local::is_root(ld.module, rb.lattices[i]);
    if (!check.is_root())
      fail(ErrorKind::InvalidInput, "global",
           "lattice at " + catalog::to_string(*gm.field, ld.place) + " is not a root: " + check.detail);
    rb.indices.push_back(local::root_index(ld.module, rb.lattices[i]));
    vsum += arith::det(local_lattice(ld, rb.lattices[i])).valuation();
  }
  rb.degree = -vsum;
  rb.frame = affine_frame(gm, rb.lattices);
  const auto inf = std::find_if(gm.places.begin(), gm.places.end(), [](const auto& ld) { return ld.place.infinite; });
  if (inf == gm.places.end()) fail(ErrorKind::Internal, "global", "no data at infinity");
  const size_t ii = static_cast<size_t>(inf - gm.places.begin());
  const RfMatrix lam_inf = catalog::from_local(local_lattice(*inf, rb.lattices[ii]), inf->place);
  rb.frame_degrees = reduce_at_infinity(gm.field, rb.frame, lam_inf);
  int64_t total = 0;
  for (int64_t d : rb.frame_degrees) total += d;
  if (total != rb.degree)
    fail(ErrorKind::Internal, "global",
         "frame degrees sum to " + std::to_string(total) + " but the determinant gives " + std::to_string(rb.degree));
  return rb;
}

RootBundle global_minimal_root(const GlobalUnitModule& gm, const local::MinimalRootOptions& opts) {
  std::vector<local::Lattice> lattices;
  for (const auto& ld : gm.places) lattices.push_back(local::minimal_root(ld.module, opts));
  RootBundle rb = root_bundle(gm, std::move(lattices));
  rb.minimal = true;
  return rb;
}

int64_t root_degree(const RootBundle& rb) {
  Rational total;
  for (const auto& c : rb.indices) total += c;
  if (!total.is_integer() || total.num() != rb.degree)
    fail(ErrorKind::NonIntegralDegree, "global",
         "sum of local indices " + total.to_string() + " differs from the bundle degree " + std::to_string(rb.degree));
  return rb.degree;
}

std::vector<int64_t> splitting_type(const RootBundle& rb) {
  std::vector<int64_t> d = rb.frame_degrees;
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

Cohomology cohomology_semilinear(const RootBundle& rb) {
  const GlobalUnitModule& gm = rb.module;
  const Field* F = gm.field;
  const size_t n = gm.n;
  const int64_t q = static_cast<int64_t>(F->twist());
  const RfMatrix& Q = rb.frame;
  const RfMatrix P = arith::inverse(Q).transpose();
  std::vector<int64_t> dd(n);
  for (size_t j = 0; j < n; ++j) dd[j] = -rb.frame_degrees[j];

  Cohomology out;
  out.dual_degrees = dd;
  out.action = arith::mul(arith::mul(Q.transpose(), arith::inverse(gm.B).transpose()), arith::frob(P));
  const RfMatrix& T = out.action;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (T(i, j).is_zero()) continue;
      if (!T(i, j).is_poly())
        fail(ErrorKind::RepresentativeMismatch, "global", "dual Frobenius has poles on the affine chart");
      if (T(i, j).degree() > dd[i] - q * dd[j])
        fail(ErrorKind::RepresentativeMismatch, "global", "dual Frobenius does not preserve sections at infinity");
    }

  auto build = [&](bool h1) {
    // Basis (j, k): H^0 has 0 <= k <= dd_j, H^1 has dd_j < k < 0.
    std::vector<std::pair<size_t, int64_t>> basis;
    for (size_t j = 0; j < n; ++j) {
      const int64_t lo = h1 ? dd[j] + 1 : 0, hi = h1 ? -1 : dd[j];
      for (int64_t k = lo; k <= hi; ++k) basis.push_back({j, k});
    }
    FeMatrix M(basis.size(), basis.size());
    for (size_t col = 0; col < basis.size(); ++col) {
      const auto [j, k] = basis[col];
      for (size_t row = 0; row < basis.size(); ++row) {
        const auto [i, l] = basis[row];
        const int64_t e = l - q * k;
        if (e < 0 || T(i, j).is_zero()) continue;
        M(row, col) = T(i, j).num().coeff(static_cast<size_t>(e));
      }
    }
    return semilin::SemilinearOp{F, M};
  };
  out.h0 = build(false);
  out.h1 = build(true);
  return out;
}

Rational chi_lower_bound(int64_t n, int64_t g, const std::vector<Rational>& indices) {
  Rational b = Rational((1 - g) * n);
  for (const auto& c : indices) b -= c;
  return b;
}

CohomReport cohomology_report(const RootBundle& rb) {
  const GlobalUnitModule& gm = rb.module;
  CohomReport r;
  r.n = gm.n;
  for (size_t i = 0; i < gm.places.size(); ++i)
    if (rb.indices[i] != Rational(0))
      r.local_indices.push_back({catalog::to_string(*gm.field, gm.places[i].place), rb.indices[i]});
  r.degree_root = root_degree(rb);
  r.splitting = splitting_type(rb);
  const Cohomology c = cohomology_semilinear(rb);
  r.h0 = c.h0.dim();
  const auto s0 = semilin::ss_nil_dims(c.h0);
  const auto s1 = semilin::ss_nil_dims(c.h1);
  r.ss0 = s0.ss;
  r.ss1 = s1.ss;
  r.nil1 = s1.nil;
  r.h1 = s1.ss;
  if (rb.minimal) {
    if (r.ss0 != r.h0) warn("global: Frobenius on H^0 of the minimal root dual is not bijective");
    r.chi = static_cast<int64_t>(r.h0) - static_cast<int64_t>(r.h1);
  } else {
    r.chi = static_cast<int64_t>(r.ss0) - static_cast<int64_t>(r.ss1);
  }
  r.bound = chi_lower_bound(static_cast<int64_t>(gm.n), 0, rb.indices);
  r.bound_ceil = r.bound.ceil();
  r.equality = Rational(r.chi) == r.bound;
  return r;
}

CohomReport etale_chi(const GlobalUnitModule& gm, const local::MinimalRootOptions& opts) {
  return cohomology_report(global_minimal_root(gm, opts));
}

}  // namespace frobroot::global
