#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "frobroot/catalog/spec.hpp"

namespace frobroot::oracle {

struct HasseWitt {
  arith::Fe coefficient;  // of x^{p-1} in f^{(p-1)/2}
  bool ordinary = false;
  int p_rank = 0;
};

/// Hasse invariant of y^2 = f(x) for square-free f of degree 3 or 4, p >= 5.
/// Degenerate when f is not square-free or has another degree.
HasseWitt hasse_witt_genus1(const arith::Poly& f);

struct OracleReport {
  int64_t chi_top = 0;
  /// p-rank of the genus-1 curve involved, when there is one.
  std::optional<int> p_rank;
  std::string details;
};

/// Euler characteristic of the sheaf itself, from its topology alone:
/// constant rank n gives n, extension by zero from m punctures n(1 - m),
/// double covers 1 - (p-rank of the cover), direct sums add.
/// UnsupportedVariant outside the computable cases.
OracleReport chi_topological(const catalog::SheafSpec& spec);

}  // namespace frobroot::oracle
