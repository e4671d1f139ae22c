#include "frobroot/catalog/spec.hpp"

#include <algorithm>
#include <numeric>

#include "frobroot/arith/parse.hpp"
#include "frobroot/errors.hpp"

namespace frobroot::catalog {

bool Place::operator<(const Place& o) const {
  if (infinite != o.infinite) return !infinite;
  return !infinite && a.code < o.a.code;
}

std::string to_string(const Field& F, const Place& y) { return y.infinite ? "inf" : F.to_string(y.a); }

Place parse_place(const Field* F, const std::string& text) {
  if (text == "inf" || text == "infinity") return Place::infinity();
  return Place::at(arith::parse_element(F, text));
}

const char* to_string(SheafKind k) {
  switch (k) {
    case SheafKind::Constant: return "constant";
    case SheafKind::Shriek: return "shriek";
    case SheafKind::TameCover: return "tame-cover";
    case SheafKind::Rank1Twist: return "rank1-twist";
    case SheafKind::DirectSum: return "direct-sum";
  }
  return "?";
}

SheafSpec SheafSpec::constant(const Field* F, size_t n) {
  SheafSpec s;
  s.kind = SheafKind::Constant;
  s.field = F;
  s.rank = n;
  return s;
}

SheafSpec SheafSpec::shriek(const Field* F, std::vector<Place> punctures, size_t n) {
  SheafSpec s;
  s.kind = SheafKind::Shriek;
  s.field = F;
  s.rank = n;
  s.punctures = std::move(punctures);
  std::sort(s.punctures.begin(), s.punctures.end());
  return s;
}

SheafSpec SheafSpec::tame_cover(arith::Poly f) {
  SheafSpec s;
  s.kind = SheafKind::TameCover;
  s.field = f.field();
  s.rank = 2;
  s.f = std::move(f);
  return s;
}

SheafSpec SheafSpec::rank1_twist(const Field* F, std::vector<std::pair<Place, int64_t>> twists) {
  SheafSpec s;
  s.kind = SheafKind::Rank1Twist;
  s.field = F;
  s.rank = 1;
  s.twists = std::move(twists);
  std::sort(s.twists.begin(), s.twists.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return s;
}

SheafSpec SheafSpec::direct_sum(std::vector<SheafSpec> parts) {
  if (parts.empty()) fail(ErrorKind::InvalidInput, "catalog", "empty direct sum");
  SheafSpec s;
  s.kind = SheafKind::DirectSum;
  s.field = parts.front().field;
  s.parts = std::move(parts);
  return s;
}

size_t SheafSpec::generic_rank() const {
  if (kind != SheafKind::DirectSum) return rank;
  size_t n = 0;
  for (const auto& p : parts) n += p.generic_rank();
  return n;
}

std::string SheafSpec::describe() const {
  const Field& F = *field;
  switch (kind) {
    case SheafKind::Constant: return "constant(" + std::to_string(rank) + ")";
    case SheafKind::Shriek: {
      std::string s = "shriek(" + std::to_string(rank) + ";";
      for (const auto& y : punctures) s += " " + to_string(F, y);
      return s + ")";
    }
    case SheafKind::TameCover: return "tame-cover(y^2 = " + f.to_string("x") + ")";
    case SheafKind::Rank1Twist: {
      std::string s = "rank1-twist(";
      for (size_t i = 0; i < twists.size(); ++i)
        s += (i ? ", " : "") + to_string(F, twists[i].first) + ":" + std::to_string(twists[i].second);
      return s + ")";
    }
    case SheafKind::DirectSum: {
      std::string s = "direct-sum(";
      for (size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i].describe();
      return s + ")";
    }
  }
  return "?";
}

namespace {

void require_distinct(std::vector<Place> ys, const char* what) {
  std::sort(ys.begin(), ys.end());
  if (std::adjacent_find(ys.begin(), ys.end()) != ys.end())
    fail(ErrorKind::InvalidInput, "catalog", std::string("repeated place in ") + what);
}

Place embed_place(const arith::Embedding& emb, const Place& y) { return y.infinite ? y : Place::at(emb(y.a)); }

Place swap_place(const Field& F, const Place& y) {
  if (y.infinite) return Place::at(Fe{});
  if (y.a.is_zero()) return Place::infinity();
  return Place::at(F.inv(y.a));
}

}  // namespace

void validate(const SheafSpec& s) {
  if (!s.field) fail(ErrorKind::InvalidInput, "catalog", "sheaf spec without a field");
  const Field& F = *s.field;
  switch (s.kind) {
    case SheafKind::Constant:
    case SheafKind::Shriek:
      if (s.rank == 0) fail(ErrorKind::InvalidInput, "catalog", "rank must be positive");
      require_distinct(s.punctures, "punctures");
      return;
    case SheafKind::TameCover:
      if (F.p() < 5) fail(ErrorKind::InvalidInput, "catalog", "double covers require p >= 5");
      if (s.f.field() != s.field) fail(ErrorKind::InvalidInput, "catalog", "cover polynomial over a different field");
      if (s.f.degree() < 1) fail(ErrorKind::InvalidInput, "catalog", "cover polynomial must be nonconstant");
      if (!arith::is_squarefree(s.f)) fail(ErrorKind::InvalidInput, "catalog", "cover polynomial is not square-free");
      return;
    case SheafKind::Rank1Twist: {
      std::vector<Place> ys;
      int64_t total = 0;
      for (const auto& [y, d] : s.twists) {
        ys.push_back(y);
        total += d;
      }
      require_distinct(ys, "twist places");
      const int64_t q1 = static_cast<int64_t>(F.twist()) - 1;
      if (((total % q1) + q1) % q1 != 0)
        fail(ErrorKind::InvalidInput, "catalog",
             "twist exponents sum to " + std::to_string(total) + ", not a multiple of q - 1 = " + std::to_string(q1));
      return;
    }
    case SheafKind::DirectSum:
      if (s.parts.empty()) fail(ErrorKind::InvalidInput, "catalog", "empty direct sum");
      for (const auto& p : s.parts) {
        if (p.field != s.field) fail(ErrorKind::InvalidInput, "catalog", "direct sum over mixed fields");
        validate(p);
      }
      return;
  }
  fail(ErrorKind::UnsupportedVariant, "catalog", "unknown sheaf kind");
}

SheafSpec over(const SheafSpec& s, const Field& ext) {
  if (s.field == &ext) return s;
  const auto emb = arith::Embedding::get(*s.field, ext);
  SheafSpec out = s;
  out.field = &ext;
  for (auto& y : out.punctures) y = embed_place(*emb, y);
  for (auto& [y, d] : out.twists) y = embed_place(*emb, y);
  if (s.kind == SheafKind::TameCover) {
    std::vector<Fe> c;
    for (Fe x : s.f.coeffs()) c.push_back((*emb)(x));
    out.f = arith::Poly(&ext, std::move(c));
  }
  for (auto& p : out.parts) p = over(p, ext);
  return out;
}

SheafSpec swapped(const SheafSpec& s) {
  const Field& F = *s.field;
  SheafSpec out = s;
  for (auto& y : out.punctures) y = swap_place(F, y);
  std::sort(out.punctures.begin(), out.punctures.end());
  for (auto& [y, d] : out.twists) y = swap_place(F, y);
  std::sort(out.twists.begin(), out.twists.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (s.kind == SheafKind::TameCover) {
    const size_t d = static_cast<size_t>(s.f.degree());
    out.f = s.f.reversed(2 * ((d + 1) / 2));
  }
  for (auto& p : out.parts) p = swapped(p);
  return out;
}

uint32_t required_extension(const SheafSpec& s) {
  switch (s.kind) {
    case SheafKind::TameCover: {
      const Field& F = *s.field;
      for (uint32_t k = 1;; ++k) {
        uint64_t size = 1;
        for (uint32_t i = 0; i < k * F.degree(); ++i) size *= F.p();
        if (size > Field::kMaxSize)
          fail(ErrorKind::InvalidInput, "catalog",
               "cover polynomial " + s.f.to_string() + " does not split within the field-size limit");
        const auto ext = F.extension(k);
        const SheafSpec e = over(s, *ext);
        if (static_cast<int64_t>(arith::roots(e.f).size()) == s.f.degree()) return k;
      }
    }
    case SheafKind::DirectSum: {
      uint32_t k = 1;
      for (const auto& p : s.parts) k = std::lcm(k, required_extension(p));
      return k;
    }
    default:
      return 1;
  }
}

}  // namespace frobroot::catalog
