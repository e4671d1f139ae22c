#include "frobroot/local/roots.hpp"

#include <algorithm>

#include "frobroot/errors.hpp"
#include "frobroot/oracle/brute_force.hpp"

namespace frobroot::local {

const char* to_string(RootStatus s) {
  switch (s) {
    case RootStatus::Root: return "Root";
    case RootStatus::NotStable: return "NotStable";
    case RootStatus::NotGenerating: return "NotGenerating";
    case RootStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

RfMatrix stability_witness(const LocalUnitModule& W, const Lattice& L) {
  const RfMatrix img = arith::mul(W.B, arith::frob(L.basis()));
  return arith::mul(arith::inverse(img), L.basis());
}

}  // namespace

RootCheck is_root(const LocalUnitModule& W, const Lattice& L) {
  RootCheck out;
  if (L.n() != W.n()) fail(ErrorKind::InvalidInput, "local", "lattice rank does not match the module");
  if (!lies_in(W, L)) fail(ErrorKind::InvalidInput, "local", "lattice is not contained in W");
  RfMatrix X = stability_witness(W, L);
  if (!arith::is_integral(X)) {
    out.status = RootStatus::NotStable;
    out.detail = "L is not contained in the span of F(L)";
    return out;
  }
  const Field& F = *W.field;
  const size_t m = W.m;
  // Y_1 = X_KK(0), Y_{i+1} = X_KK(0)^{(q^i)} Y_i; generation iff some Y_i = 0.
  size_t steps = 0;
  if (m > 0) {
    const FeMatrix X0 = arith::residue(X.block(0, 0, m, m));
    FeMatrix Y = X0;
    FeMatrix twisted = X0;
    steps = 1;
    while (!arith::is_zero(Y)) {
      if (steps >= m) {
        out.status = RootStatus::NotGenerating;
        out.detail = "residue of the K-part witness is not nilpotent; the chain stabilizes below W";
        return out;
      }
      twisted = arith::frob(F, twisted);
      Y = arith::mul(F, twisted, Y);
      ++steps;
    }
  }
  out.status = RootStatus::Root;
  out.certificate = RootCertificate{L, std::move(X), steps};
  return out;
}

std::optional<size_t> chain_generation_steps(const LocalUnitModule& W, const Lattice& L, size_t cap) {
  const size_t m = W.m;
  if (m == 0) return 0;
  // t^{-1} times the K-part columns of L.
  RfMatrix target = arith::rf_zero(W.field, W.n(), m);
  for (size_t i = 0; i < W.n(); ++i)
    for (size_t j = 0; j < m; ++j) target(i, j) = L.basis()(i, j).times_power(-1);
  Lattice cur = L;
  for (size_t i = 0; i <= cap; ++i) {
    if (arith::is_integral(arith::mul(arith::inverse(cur.basis()), target))) return i;
    cur = phi_span(W, cur);
  }
  return std::nullopt;
}

Filtration root_filtration(const LocalUnitModule& W, const Lattice& L, size_t depth) {
  Filtration f;
  f.lattices.push_back(L);
  for (size_t i = 0; i < depth; ++i) {
    f.lattices.push_back(phi_span(W, f.lattices.back()));
    f.colengths.push_back(colength(f.lattices.back(), f.lattices[f.lattices.size() - 2]));
  }
  return f;
}

Lattice contraction(const LocalUnitModule& W, const Lattice& L) {
  const RfMatrix V = arith::mul(arith::inverse(W.B), L.basis());
  const size_t n = W.n();
  const uint64_t q = W.field->twist();
  std::vector<std::vector<RatFunc>> cols;
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<RatFunc>> comps(q, std::vector<RatFunc>(n, RatFunc(W.field)));
    std::vector<bool> nonzero(q, false);
    for (size_t i = 0; i < n; ++i) {
      const auto parts = V(i, j).qth_root_components();
      for (uint64_t k = 0; k < q; ++k) {
        if (parts[k].is_zero()) continue;
        comps[k][i] = parts[k];
        nonzero[k] = true;
      }
    }
    for (uint64_t k = 0; k < q; ++k)
      if (nonzero[k]) cols.push_back(std::move(comps[k]));
  }
  RfMatrix gens = arith::rf_zero(W.field, n, cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < n; ++i) gens(i, j) = cols[j][i];
  return Lattice::span(gens);
}

int64_t root_det_bound(const LocalUnitModule& W) {
  const int64_t v = arith::det(W.B).valuation();
  const int64_t d = static_cast<int64_t>(W.field->twist()) - 1;
  const int64_t num = -v;
  int64_t fl = num / d;
  if (num % d != 0 && num < 0) --fl;
  return fl;
}

namespace {

Lattice diag_with(const Field* F, size_t m, size_t s, int64_t N) {
  std::vector<int64_t> e(m + s, 0);
  for (size_t i = 0; i < m; ++i) e[i] = -N;
  return Lattice::diagonal(F, e);
}

}  // namespace

Lattice diagonal_start_root(const LocalUnitModule& W) {
  check_unit(W);
  const Field* F = W.field;
  constexpr int64_t kMaxN = int64_t{1} << 40;
  auto ok = [&](int64_t N) { return is_root(W, diag_with(F, W.m, W.s, N)).is_root(); };
  int64_t hi = 0;
  // The root property of diag(t^{-N}, 1) is monotone in N.
  if (!ok(0)) {
    hi = 1;
    while (!ok(hi)) {
      if (hi > kMaxN) fail(ErrorKind::IterationLimit, "local", "no diagonal starting root found");
      hi *= 2;
    }
    int64_t lo = hi / 2;  // not a root (or 0, already checked)
    while (hi - lo > 1) {
      const int64_t mid = lo + (hi - lo) / 2;
      (ok(mid) ? hi : lo) = mid;
    }
  }
  std::vector<int64_t> e(W.n(), 0);
  for (size_t i = 0; i < W.m; ++i) e[i] = -hi;
  for (size_t k = 0; k < W.m; ++k) {
    while (true) {
      ++e[k];
      if (!is_root(W, Lattice::diagonal(F, e)).is_root()) {
        --e[k];
        break;
      }
    }
  }
  return Lattice::diagonal(F, e);
}

namespace {

// One colength-one step from L towards the contraction C (which is strictly inside L).
Lattice hyperplane_step(const LocalUnitModule& W, const Lattice& L, const Lattice& C) {
  const Field& F = *W.field;
  const size_t n = W.n();
  const RfMatrix Z = arith::mul(arith::inverse(L.basis()), C.basis());
  const FeMatrix Z0 = arith::residue(Z);
  const auto ker = arith::kernel(F, Z0.transpose());
  if (ker.empty()) fail(ErrorKind::Internal, "local", "contraction is not a proper sublattice");
  auto lambda = ker.front();
  size_t i0 = 0;
  while (lambda[i0].is_zero()) ++i0;
  const Fe s = F.inv(lambda[i0]);
  for (auto& x : lambda) x = F.mul(x, s);
  RfMatrix gens = L.basis();
  for (size_t j = 0; j < n; ++j) {
    if (j == i0 || lambda[j].is_zero()) continue;
    for (size_t i = 0; i < n; ++i) gens(i, j) -= L.basis()(i, i0).scaled(lambda[j]);
  }
  for (size_t i = 0; i < n; ++i) gens(i, i0) = L.basis()(i, i0).times_power(1);
  return Lattice::span(gens);
}

}  // namespace

MinimalRootResult minimal_root_detailed(const LocalUnitModule& W, const MinimalRootOptions& opts) {
  const Lattice start = diagonal_start_root(W);
  Lattice L = start;
  size_t steps = 0;
  // Every lattice between C(L) and L is again a root, and C(L) = L exactly
  // when L is the minimal root.
  while (true) {
    const Lattice C = contraction(W, L);
    if (C == L) break;
    Lattice next = hyperplane_step(W, L, C);
    if (!is_root(W, next).is_root()) fail(ErrorKind::Internal, "local", "descent step left the set of roots");
    L = std::move(next);
    ++steps;
  }
  MinimalRootResult res{L, start, steps, "none", 0};
  if (opts.certify == Certification::Off) return res;

  const oracle::Box box = oracle::default_box(W, start);
  const uint64_t count = oracle::box_size(*W.field, box, opts.box_limit + 1);
  if (W.n() <= 2 && count <= opts.box_limit) {
    const Lattice bf = oracle::brute_force_minimal_root(W, box, opts.box_limit);
    if (!(bf == L))
      fail(ErrorKind::Internal, "local",
           "descent result " + L.to_string() + " disagrees with exhaustive search " + bf.to_string());
    res.certification = "brute-force";
    res.certified_roots = count;
    return res;
  }
  if (opts.certify == Certification::Required)
    fail(ErrorKind::BoxTooLarge, "local",
         "certification box holds more than " + std::to_string(opts.box_limit) + " lattices");
  const auto roots = oracle::sample_roots(W, box, opts.samples, opts.seed);
  for (const auto& R : roots)
    if (!R.contains(L))
      fail(ErrorKind::Internal, "local", "sampled root " + R.to_string() + " does not contain the descent result");
  if (W.n() <= 2)
    warn("minimal root certified by sampling " + std::to_string(roots.size()) + " roots (box too large for enumeration)");
  res.certification = "sampled";
  res.certified_roots = roots.size();
  return res;
}

Lattice minimal_root(const LocalUnitModule& W, const MinimalRootOptions& opts) {
  return minimal_root_detailed(W, opts).lattice;
}

Rational root_index(const LocalUnitModule& W, const Lattice& L) {
  const Lattice L1 = phi_span(W, L);
  return Rational(colength(L1, L), static_cast<int64_t>(W.field->twist()) - 1);
}

Rational minimal_root_index(const LocalUnitModule& W, const MinimalRootOptions& opts) {
  return root_index(W, minimal_root(W, opts));
}

RfMatrix root_dual(const LocalUnitModule& W, const Lattice& L) {
  const RootCheck rc = is_root(W, L);
  if (!rc.is_root())
    fail(ErrorKind::InvalidInput, "local", std::string("root dual requested for a non-root (") + to_string(rc.status) + ")");
  return rc.certificate->witness.transpose();
}

InvariantHoms local_invariant_homs(const LocalUnitModule& W, int64_t precision, const MinimalRootOptions& opts) {
  const Lattice L0 = minimal_root(W, opts);
  const RfMatrix M = root_dual(W, L0);
  const Field& F = *W.field;
  const size_t n = W.n();
  InvariantHoms out;
  const semilin::SemilinearOp op{W.field, arith::residue(M)};
  out.residue = semilin::fixed_space(op);
  out.dimension = out.residue.dim();
  out.geometric_dimension = semilin::ss_nil_dims(op).ss;
  // b = M b^{(q)}: coefficient N >= 1 only involves b_j with q j <= N.
  const size_t N = static_cast<size_t>(std::max<int64_t>(precision, 1));
  const uint64_t q = F.twist();
  std::vector<FeMatrix> Mk(N, FeMatrix(n, n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const auto c = M(i, j).coefficients(0, static_cast<int64_t>(N));
      for (size_t k = 0; k < N; ++k) Mk[k](i, j) = c[k];
    }
  for (const auto& b0 : out.residue.basis) {
    std::vector<arith::FeVector> b(N, arith::FeVector(n));
    std::vector<arith::FeVector> bq(N);
    b[0] = b0;
    bq[0] = arith::frob(F, b0);
    for (size_t m = 1; m < N; ++m) {
      arith::FeVector acc(n);
      for (size_t j = 0; j * q <= m; ++j) {
        const auto t = arith::mul(F, Mk[m - j * q], bq[j]);
        for (size_t i = 0; i < n; ++i) acc[i] = F.add(acc[i], t[i]);
      }
      b[m] = acc;
      bq[m] = arith::frob(F, acc);
    }
    std::vector<arith::Series> sec;
    for (size_t i = 0; i < n; ++i) {
      std::vector<arith::Series::Term> t;
      for (size_t m = 0; m < N; ++m)
        if (!b[m][i].is_zero()) t.push_back({static_cast<int64_t>(m), b[m][i]});
      sec.emplace_back(W.field, std::move(t), static_cast<int64_t>(N));
    }
    out.sections.push_back(std::move(sec));
  }
  return out;
}

}  // namespace frobroot::local
