#include "frobroot/oracle/topological.hpp"

#include "frobroot/errors.hpp"

namespace frobroot::oracle {

using arith::Poly;
using catalog::SheafKind;
using catalog::SheafSpec;

HasseWitt hasse_witt_genus1(const Poly& f) {
  const auto& F = *f.field();
  if (F.p() < 5) fail(ErrorKind::Degenerate, "oracle", "Hasse invariant test needs p >= 5");
  if (f.degree() != 3 && f.degree() != 4)
    fail(ErrorKind::Degenerate, "oracle", "genus-1 double cover needs deg f in {3, 4}, got " + std::to_string(f.degree()));
  if (!arith::is_squarefree(f)) fail(ErrorKind::Degenerate, "oracle", "f is not square-free");
  HasseWitt hw;
  hw.coefficient = f.pow((F.p() - 1) / 2).coeff(F.p() - 1);
  hw.ordinary = !hw.coefficient.is_zero();
  hw.p_rank = hw.ordinary ? 1 : 0;
  return hw;
}

namespace {

// Genus of y^2 = f with f square-free.
int64_t cover_genus(const Poly& f) { return (f.degree() - 1) / 2; }

OracleReport cover_chi(const Poly& f, const std::string& what) {
  const int64_t g = cover_genus(f);
  OracleReport r;
  if (g == 0) {
    r.chi_top = 1;
    r.details = what + ": genus 0 cover, chi = 1";
    return r;
  }
  if (g == 1) {
    const HasseWitt hw = hasse_witt_genus1(f);
    r.chi_top = 1 - hw.p_rank;
    r.p_rank = hw.p_rank;
    r.details = what + ": genus 1 cover, " + (hw.ordinary ? "ordinary" : "supersingular");
    return r;
  }
  fail(ErrorKind::UnsupportedVariant, "oracle", "no p-rank oracle for covers of genus " + std::to_string(g));
}

}  // namespace

OracleReport chi_topological(const SheafSpec& s) {
  const auto& F = *s.field;
  OracleReport r;
  switch (s.kind) {
    case SheafKind::Constant:
      r.chi_top = static_cast<int64_t>(s.rank);
      r.details = "constant rank " + std::to_string(s.rank);
      return r;
    case SheafKind::Shriek:
      r.chi_top = static_cast<int64_t>(s.rank) * (1 - static_cast<int64_t>(s.punctures.size()));
      r.details = "extension by zero from " + std::to_string(s.punctures.size()) + " punctures";
      return r;
    case SheafKind::TameCover:
      return cover_chi(s.f, "double cover");
    case SheafKind::Rank1Twist: {
      const int64_t q1 = static_cast<int64_t>(F.twist()) - 1;
      bool trivial = true, quadratic = true;
      for (const auto& [y, d] : s.twists) {
        const int64_t dt = ((d % q1) + q1) % q1;
        trivial = trivial && dt == 0;
        quadratic = quadratic && 2 * dt == q1;
      }
      if (trivial) {
        r.chi_top = 1 - static_cast<int64_t>(s.twists.size());
        r.details = "trivial twist, extension by zero from " + std::to_string(s.twists.size()) + " places";
        return r;
      }
      if (quadratic) {
        // The nontrivial summand of the pushforward along the double cover
        // branched exactly at the listed places: chi(cover) - chi(P^1).
        Poly f = Poly::constant(&F, F.one());
        for (const auto& [y, d] : s.twists)
          if (!y.infinite) f = f * Poly::linear(&F, y.a);
        if (f.degree() < 1) fail(ErrorKind::UnsupportedVariant, "oracle", "quadratic twist without finite places");
        OracleReport c = cover_chi(f, "quadratic twist");
        c.chi_top -= 1;
        return c;
      }
      fail(ErrorKind::UnsupportedVariant, "oracle", "no topological oracle for general rank-1 twists");
    }
    case SheafKind::DirectSum: {
      r.details = "direct sum:";
      for (const auto& p : s.parts) {
        const OracleReport c = chi_topological(p);
        r.chi_top += c.chi_top;
        if (c.p_rank) r.p_rank = c.p_rank;
        r.details += " [" + c.details + "]";
      }
      return r;
    }
  }
  fail(ErrorKind::UnsupportedVariant, "oracle", "unknown sheaf kind");
}

}  // namespace frobroot::oracle
