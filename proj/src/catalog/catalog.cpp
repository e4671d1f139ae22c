#include "frobroot/catalog/catalog.hpp"

#include <algorithm>

#include "frobroot/errors.hpp"

namespace frobroot::catalog {

using arith::Poly;
using arith::RatFunc;

namespace {

RatFunc x_power(const Field* F, int64_t k) { return RatFunc::monomial(F, F->one(), k); }

RatFunc linear_power(const Field* F, Fe a, int64_t k) { return RatFunc(Poly::linear(F, a)).pow(k); }

bool listed(const std::vector<Place>& ys, const Place& y) { return std::find(ys.begin(), ys.end(), y) != ys.end(); }

// c with the basis x^{-c} e at infinity giving F(e) = u^{d_inf} (unit) e.
int64_t twist_shift(const SheafSpec& s) {
  int64_t total = 0;
  for (const auto& [y, d] : s.twists) total += d;
  const int64_t q1 = static_cast<int64_t>(s.field->twist()) - 1;
  return total / q1;
}

void special_places(const SheafSpec& s, std::vector<Place>& out) {
  switch (s.kind) {
    case SheafKind::Constant: break;
    case SheafKind::Shriek:
      out.insert(out.end(), s.punctures.begin(), s.punctures.end());
      break;
    case SheafKind::TameCover:
      for (Fe a : arith::roots(s.f)) out.push_back(Place::at(a));
      break;
    case SheafKind::Rank1Twist:
      for (const auto& [y, d] : s.twists) out.push_back(y);
      break;
    case SheafKind::DirectSum:
      for (const auto& p : s.parts) special_places(p, out);
      break;
  }
}

// Strips the factors (x - a)^k for listed finite places; true if a constant remains.
bool supported_on(Poly den, const std::vector<Place>& ys) {
  const Field* F = den.field();
  for (const auto& y : ys) {
    if (y.infinite) continue;
    const Poly lin = Poly::linear(F, y.a);
    while (den.degree() > 0) {
      auto [q, r] = den.divmod(lin);
      if (!r.is_zero()) break;
      den = q;
    }
  }
  return den.degree() <= 0;
}

}  // namespace

RfMatrix generic_matrix(const SheafSpec& s) {
  const Field* F = s.field;
  switch (s.kind) {
    case SheafKind::Constant:
    case SheafKind::Shriek:
      return arith::rf_identity(F, s.rank);
    case SheafKind::TameCover: {
      RfMatrix B = arith::rf_identity(F, 2);
      B(1, 1) = RatFunc(s.f.pow((F->twist() - 1) / 2));
      return B;
    }
    case SheafKind::Rank1Twist: {
      RatFunc g = RatFunc::one(F);
      for (const auto& [y, d] : s.twists)
        if (!y.infinite) g = g * linear_power(F, y.a, d);
      RfMatrix B(1, 1, g);
      return B;
    }
    case SheafKind::DirectSum: {
      std::vector<RfMatrix> blocks;
      for (const auto& p : s.parts) blocks.push_back(generic_matrix(p));
      return arith::block_diag(blocks);
    }
  }
  fail(ErrorKind::UnsupportedVariant, "catalog", "unknown sheaf kind");
}

Presentation presentation(const SheafSpec& s, const Place& y) {
  const Field* F = s.field;
  switch (s.kind) {
    case SheafKind::Constant:
      return {arith::rf_identity(F, s.rank), 0};
    case SheafKind::Shriek:
      return {arith::rf_identity(F, s.rank), listed(s.punctures, y) ? s.rank : 0};
    case SheafKind::TameCover: {
      RfMatrix P = arith::rf_zero(F, 2, 2);
      const int64_t deg = s.f.degree();
      if (y.infinite) {
        if (deg % 2 == 1) {
          // Basis (x^{-c} y, 1), c = (deg f + 1)/2: a branch place.
          P(0, 1) = RatFunc::one(F);
          P(1, 0) = x_power(F, -(deg + 1) / 2);
          return {P, 1};
        }
        P(0, 0) = RatFunc::one(F);
        P(1, 1) = x_power(F, -deg / 2);
        return {P, 0};
      }
      if (s.f.eval(y.a).is_zero()) {
        P(0, 1) = RatFunc::one(F);
        P(1, 0) = RatFunc::one(F);
        return {P, 1};
      }
      return {arith::rf_identity(F, 2), 0};
    }
    case SheafKind::Rank1Twist: {
      bool here = false;
      for (const auto& [z, d] : s.twists) here = here || z == y;
      RfMatrix P = arith::rf_identity(F, 1);
      if (y.infinite) P(0, 0) = x_power(F, -twist_shift(s));
      return {P, here ? size_t{1} : size_t{0}};
    }
    case SheafKind::DirectSum: {
      std::vector<Presentation> ps;
      std::vector<RfMatrix> blocks;
      for (const auto& p : s.parts) {
        ps.push_back(presentation(p, y));
        blocks.push_back(ps.back().P);
      }
      const RfMatrix bd = arith::block_diag(blocks);
      // K-part columns of every summand first, then the A-part columns.
      std::vector<size_t> order;
      size_t offset = 0, m = 0;
      for (const auto& pr : ps) {
        for (size_t j = 0; j < pr.m; ++j) order.push_back(offset + j);
        offset += pr.P.cols();
        m += pr.m;
      }
      offset = 0;
      for (const auto& pr : ps) {
        for (size_t j = pr.m; j < pr.P.cols(); ++j) order.push_back(offset + j);
        offset += pr.P.cols();
      }
      RfMatrix P = arith::rf_zero(F, bd.rows(), bd.cols());
      for (size_t j = 0; j < order.size(); ++j) P.set_col(j, bd.col(order[j]));
      return {P, m};
    }
  }
  fail(ErrorKind::UnsupportedVariant, "catalog", "unknown sheaf kind");
}

RatFunc to_local(const RatFunc& h, const Place& y) { return y.infinite ? h.invert_variable() : h.taylor_shift(y.a); }

RfMatrix to_local(const RfMatrix& h, const Place& y) {
  return h.map([&](const RatFunc& v) { return to_local(v, y); });
}

RatFunc from_local(const RatFunc& h, const Place& y) {
  if (y.infinite) return h.invert_variable();
  return h.taylor_shift(h.field() ? h.field()->neg(y.a) : y.a);
}

RfMatrix from_local(const RfMatrix& h, const Place& y) {
  return h.map([&](const RatFunc& v) { return from_local(v, y); });
}

namespace {

local::LocalUnitModule localize(const SheafSpec& s, const RfMatrix& B, const Presentation& pr, const Place& y) {
  const RfMatrix Bp = arith::mul(arith::mul(arith::inverse(pr.P), B), arith::frob(pr.P));
  local::LocalUnitModule W;
  W.field = s.field;
  W.m = pr.m;
  W.s = pr.P.cols() - pr.m;
  W.B = to_local(Bp, y);
  return W;
}

}  // namespace

local::LocalUnitModule local_dual_of_sheaf(const SheafSpec& spec, const Place& y) {
  validate(spec);
  return localize(spec, generic_matrix(spec), presentation(spec, y), y);
}

GlobalUnitModule global_dual_of_sheaf(const SheafSpec& spec) {
  validate(spec);
  const uint32_t k = required_extension(spec);
  GlobalUnitModule gm;
  gm.spec = k > 1 ? over(spec, *spec.field->extension(k)) : spec;
  const SheafSpec& s = gm.spec;
  gm.field = s.field;
  gm.n = s.generic_rank();
  gm.B = generic_matrix(s);

  std::vector<Place> ys;
  special_places(s, ys);
  ys.push_back(Place::infinity());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  const RfMatrix Binv = arith::inverse(gm.B);
  for (const RfMatrix* M : std::vector<const RfMatrix*>{&gm.B, &Binv})
    for (size_t i = 0; i < gm.n; ++i)
      for (size_t j = 0; j < gm.n; ++j)
        if (!supported_on((*M)(i, j).den(), ys))
          fail(ErrorKind::Internal, "catalog", "generic structure matrix has a pole at an unlisted place");

  for (const auto& y : ys) {
    const Presentation pr = presentation(s, y);
    LocalData ld{y, pr.P, localize(s, gm.B, pr, y)};
    try {
      local::check_unit(ld.module);
    } catch (const DomainError& e) {
      fail(ErrorKind::Internal, "catalog",
           "local presentation at " + to_string(*gm.field, y) + " is not unit: " + e.what());
    }
    gm.places.push_back(std::move(ld));
  }
  return gm;
}

}  // namespace frobroot::catalog
