#include "frobroot/semilin/semilin.hpp"

#include <optional>

#include "frobroot/errors.hpp"

namespace frobroot::semilin {

using arith::Embedding;

FeVector SemilinearOp::apply(const FeVector& v) const {
  return arith::mul(*field, matrix, arith::frob(*field, v));
}

FeMatrix SemilinearOp::power_matrix(size_t k) const {
  const Field& F = *field;
  FeMatrix p = arith::identity(F, dim());
  FeMatrix twisted = matrix;
  for (size_t i = 0; i < k; ++i) {
    p = arith::mul(F, p, twisted);
    twisted = arith::frob(F, twisted);
  }
  return p;
}

SemilinearOp SemilinearOp::base_change(const Field& ext) const {
  const auto emb = Embedding::get(*field, ext);
  return {&ext, matrix.map([&](Fe x) { return (*emb)(x); })};
}

SemilinearOp SemilinearOp::conjugate(const FeMatrix& G) const {
  const auto inv = arith::inverse(*field, G);
  if (!inv) fail(ErrorKind::InvalidInput, "semilin", "conjugating matrix is singular");
  return {field, arith::mul(*field, arith::mul(*field, *inv, matrix), arith::frob(*field, G))};
}

SsNil ss_nil_dims(const SemilinearOp& op) {
  const size_t n = op.dim();
  const size_t ss = n == 0 ? 0 : arith::rank(*op.field, op.power_matrix(n));
  return {ss, n - ss};
}

namespace {

// Coordinates of F_{q'}^n over F_p: entry i contributes D consecutive coordinates.
struct PrimeRestriction {
  const Field* F;
  FieldRef Fp;
  size_t n, D;

  PrimeRestriction(const Field* f, size_t dim)
      : F(f), Fp(Field::get(f->p(), 1, 1)), n(dim), D(f->degree()) {}

  FeVector down(const FeVector& v) const {
    FeVector out(n * D);
    for (size_t i = 0; i < n; ++i) {
      const auto c = F->coords(v[i]);
      for (size_t k = 0; k < D; ++k) out[i * D + k] = Fp->from_int(c[k]);
    }
    return out;
  }

  FeVector up(const FeVector& w) const {
    FeVector out(n);
    std::vector<uint32_t> c(D);
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < D; ++k) c[k] = Fp->index(w[i * D + k]);
      out[i] = F->from_coords(c);
    }
    return out;
  }

  FeVector unit(size_t idx) const {
    FeVector v(n);
    std::vector<uint32_t> c(D, 0);
    c[idx % D] = 1;
    v[idx / D] = F->from_coords(c);
    return v;
  }

  // Matrix over F_p of the additive map x -> x - phi(x).
  FeMatrix one_minus_phi(const SemilinearOp& op) const {
    FeMatrix m(n * D, n * D);
    for (size_t j = 0; j < n * D; ++j) {
      const FeVector e = unit(j);
      const FeVector img = op.apply(e);
      FeVector diff(n);
      for (size_t i = 0; i < n; ++i) diff[i] = F->sub(e[i], img[i]);
      const FeVector col = down(diff);
      for (size_t i = 0; i < n * D; ++i) m(i, j) = col[i];
    }
    return m;
  }
};

}  // namespace

FixedSpace fixed_space(const SemilinearOp& op) {
  FixedSpace fs;
  fs.field = op.field;
  const size_t n = op.dim();
  if (n == 0) return fs;
  const PrimeRestriction R(op.field, n);
  const auto ker = arith::kernel(*R.Fp, R.one_minus_phi(op));
  // Fixed vectors independent over F_q stay independent over F_{q'}, so
  // F_{q'}-rank decides whether a kernel vector adds a new F_q direction.
  for (const auto& w : ker) {
    const FeVector v = R.up(w);
    FeMatrix trial(fs.basis.size() + 1, n);
    for (size_t i = 0; i < fs.basis.size(); ++i)
      for (size_t j = 0; j < n; ++j) trial(i, j) = fs.basis[i][j];
    for (size_t j = 0; j < n; ++j) trial(fs.basis.size(), j) = v[j];
    if (arith::rank(*op.field, trial) == fs.basis.size() + 1) fs.basis.push_back(v);
    if (fs.basis.size() == n) break;
  }
  return fs;
}

namespace {

FieldRef extension_or_limit(const Field& F, uint32_t e, uint32_t cap) {
  if (e > cap)
    fail(ErrorKind::IterationLimit, "semilin", "extension degree would exceed cap " + std::to_string(cap));
  try {
    return F.extension(e);
  } catch (const DomainError& err) {
    fail(ErrorKind::IterationLimit, "semilin",
         "extension of degree " + std::to_string(e) + " exceeds field capacity: " + err.what());
  }
}

}  // namespace

Splitting splitting_extension(const SemilinearOp& op, uint32_t cap) {
  const size_t ss = ss_nil_dims(op).ss;
  for (uint32_t e = 1;; ++e) {
    FieldRef ext = extension_or_limit(*op.field, e, cap);
    const SemilinearOp big = e == 1 ? op : op.base_change(*ext);
    FixedSpace fs = fixed_space(big);
    if (fs.dim() == ss) return {ext, e, std::move(fs)};
  }
}

namespace {

using arith::PolyExtension;
using PolyVector = std::vector<PolyExtension::Elem>;

// x - phi(x) = v over P = F[z]/(m), by restriction of scalars to F_p.
std::optional<PolyVector> solve_over(const PolyExtension& P, const FeMatrix& M, const PolyVector& v) {
  const Field& F = P.base();
  const FieldRef Fp = Field::get(F.p(), 1, 1);
  const size_t n = v.size(), K = P.prime_degree();
  auto down = [&](const PolyVector& x, FeVector& out) {
    for (size_t i = 0; i < n; ++i) {
      const auto c = P.coords(x[i]);
      for (size_t k = 0; k < K; ++k) out[i * K + k] = Fp->from_int(c[k]);
    }
  };
  FeMatrix A(n * K, n * K);
  FeVector col(n * K);
  for (size_t j = 0; j < n * K; ++j) {
    PolyVector e(n, P.zero());
    std::vector<uint32_t> unit(K, 0);
    unit[j % K] = 1;
    e[j / K] = P.from_coords(unit);
    PolyVector img(n);
    for (size_t i = 0; i < n; ++i) {
      PolyExtension::Elem acc = e[i];
      for (size_t l = 0; l < n; ++l)
        if (!M(i, l).is_zero()) acc = P.sub(acc, P.scale(P.frob(e[l]), M(i, l)));
      img[i] = std::move(acc);
    }
    down(img, col);
    for (size_t i = 0; i < n * K; ++i) A(i, j) = col[i];
  }
  FeVector rhs(n * K);
  down(v, rhs);
  const auto x = arith::solve(*Fp, A, rhs);
  if (!x) return std::nullopt;
  PolyVector out(n);
  std::vector<uint32_t> c(K);
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < K; ++k) c[k] = Fp->index((*x)[i * K + k]);
    out[i] = P.from_coords(c);
  }
  return out;
}

}  // namespace

FieldSolution artin_schreier_solve_field(const SemilinearOp& op, const FeVector& v, uint32_t cap) {
  if (v.size() != op.dim()) fail(ErrorKind::InvalidInput, "semilin", "vector length does not match operator");
  bool tables = true;
  for (uint32_t e = 1;; ++e) {
    if (e > cap)
      fail(ErrorKind::IterationLimit, "semilin", "extension degree would exceed cap " + std::to_string(cap));
    FieldRef ext;
    if (tables) {
      try {
        ext = op.field->extension(e);
      } catch (const DomainError&) {
        tables = false;
      }
    }
    if (!tables) {
      const auto P = PolyExtension::get(*op.field, e);
      PolyVector vv;
      for (Fe c : v) vv.push_back(P->from_base(c));
      if (auto x = solve_over(*P, op.matrix, vv)) return {nullptr, e, {}, P, std::move(*x)};
      continue;
    }
    const auto emb = Embedding::get(*op.field, *ext);
    const SemilinearOp big = e == 1 ? op : op.base_change(*ext);
    FeVector vv(v.size());
    for (size_t i = 0; i < v.size(); ++i) vv[i] = (*emb)(v[i]);
    if (op.dim() == 0) return {ext, e, {}, nullptr, {}};
    const PrimeRestriction R(ext.get(), op.dim());
    const auto x = arith::solve(*R.Fp, R.one_minus_phi(big), R.down(vv));
    if (x) return {ext, e, R.up(*x), nullptr, {}};
  }
}

Series embed(const Embedding& emb, const Series& s) {
  std::vector<Series::Term> t = s.terms();
  for (auto& x : t) x.c = emb(x.c);
  return Series(&emb.to(), std::move(t), s.precision());
}

SeriesSolution artin_schreier_solve_series(const arith::Matrix<Series>& a, const std::vector<Series>& b,
                                           int64_t precision, uint32_t cap) {
  const size_t n = b.size();
  if (a.rows() != n || a.cols() != n) fail(ErrorKind::InvalidInput, "semilin", "matrix/vector size mismatch");
  const Field* F = nullptr;
  for (const auto& s : b)
    if (s.field()) F = s.field();
  for (size_t i = 0; i < n && !F; ++i)
    for (size_t j = 0; j < n && !F; ++j) F = a(i, j).field();
  if (!F) fail(ErrorKind::InvalidInput, "semilin", "no field attached to the inputs");
  for (size_t i = 0; i < n; ++i) {
    if (b[i].valuation() < 0) fail(ErrorKind::InvalidInput, "semilin", "right-hand side has a pole");
    for (size_t j = 0; j < n; ++j)
      if (a(i, j).valuation() < 0) fail(ErrorKind::InvalidInput, "semilin", "coefficient matrix has a pole");
  }
  if (precision <= 0) return {Field::get(F->p(), F->r(), F->e()), std::vector<Series>(n, Series(F, precision)), nullptr, {}};

  // The system reads x - M x^{(q)} = b with M = a^T.
  auto coeff = [](const Series& s, int64_t e) { return s.field() ? s.coeff(e) : Fe{}; };
  FeMatrix M0(n, n);
  FeVector b0(n);
  for (size_t i = 0; i < n; ++i) {
    b0[i] = coeff(b[i], 0);
    for (size_t j = 0; j < n; ++j) M0(i, j) = coeff(a(j, i), 0);
  }
  const FieldSolution base = artin_schreier_solve_field({F, M0}, b0, cap);
  const uint64_t q = F->twist();
  const size_t N = static_cast<size_t>(precision);
  if (base.poly_field) {
    // Same recursion as below, in the polynomial-basis extension.
    const PolyExtension& P = *base.poly_field;
    std::vector<PolyVector> x(N, PolyVector(n, P.zero())), xq(N);
    x[0] = base.poly_solution;
    auto frob_all = [&](const PolyVector& v) {
      PolyVector out;
      for (const auto& c : v) out.push_back(P.frob(c));
      return out;
    };
    xq[0] = frob_all(x[0]);
    for (size_t m = 1; m < N; ++m) {
      for (size_t i = 0; i < n; ++i) {
        PolyExtension::Elem acc = P.from_base(coeff(b[i], static_cast<int64_t>(m)));
        for (size_t j = 0; j * q <= m; ++j)
          for (size_t l = 0; l < n; ++l) {
            const Fe c = coeff(a(l, i), static_cast<int64_t>(m - j * q));
            if (!c.is_zero()) acc = P.add(acc, P.scale(xq[j][l], c));
          }
        x[m][i] = std::move(acc);
      }
      xq[m] = frob_all(x[m]);
    }
    SeriesSolution out{nullptr, {}, base.poly_field, std::vector<std::vector<PolyExtension::Elem>>(n)};
    for (size_t i = 0; i < n; ++i)
      for (size_t m = 0; m < N; ++m) out.coefficients[i].push_back(x[m][i]);
    return out;
  }
  const Field& E = *base.field;
  const auto emb = Embedding::get(*F, E);

  // Dense coefficient tables over E for exponents below `precision`.
  std::vector<FeMatrix> Mk(N, FeMatrix(n, n));
  std::vector<FeVector> bk(N, FeVector(n));
  for (size_t k = 0; k < N; ++k)
    for (size_t i = 0; i < n; ++i) {
      bk[k][i] = emb->operator()(coeff(b[i], static_cast<int64_t>(k)));
      for (size_t j = 0; j < n; ++j) Mk[k](i, j) = emb->operator()(coeff(a(j, i), static_cast<int64_t>(k)));
    }
  std::vector<FeVector> x(N, FeVector(n));
  x[0] = base.solution;
  std::vector<FeVector> xq(N);
  xq[0] = arith::frob(E, x[0]);
  for (size_t m = 1; m < N; ++m) {
    FeVector acc = bk[m];
    for (size_t j = 0; j * q <= m; ++j) {
      const size_t k = m - j * q;
      const FeVector t = arith::mul(E, Mk[k], xq[j]);
      for (size_t i = 0; i < n; ++i) acc[i] = E.add(acc[i], t[i]);
    }
    x[m] = acc;
    xq[m] = arith::frob(E, x[m]);
  }
  std::vector<Series> out;
  for (size_t i = 0; i < n; ++i) {
    std::vector<Series::Term> t;
    for (size_t m = 0; m < N; ++m)
      if (!x[m][i].is_zero()) t.push_back({static_cast<int64_t>(m), x[m][i]});
    out.emplace_back(&E, std::move(t), precision);
  }
  return {base.field, std::move(out), nullptr, {}};
}

}  // namespace frobroot::semilin
