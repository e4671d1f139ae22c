#pragma once

#include <cstdint>
#include <random>

#include "frobroot/catalog/spec.hpp"
#include "frobroot/local/module.hpp"
#include "frobroot/semilin/semilin.hpp"

namespace frobroot::oracle {

/// W = K^m + A^s (m + s <= max_rank) whose structure matrix has monomial
/// entries c t^k with |k| <= max_exp; the A-block is a constant invertible
/// matrix so W is unit.
local::LocalUnitModule random_monomial_module(const arith::Field* F, std::mt19937_64& rng, size_t max_rank = 2,
                                              int64_t max_exp = 6);

/// A random catalog spec: a direct sum of up to `max_parts` summands drawn
/// from the constant, extension-by-zero, double-cover (genus <= 1) and rank-1
/// twist families. Requires p >= 5.
catalog::SheafSpec random_sheaf_spec(const arith::Field* F, std::mt19937_64& rng, size_t max_parts = 3);

/// Uniformly random n x n operator.
semilin::SemilinearOp random_operator(const arith::Field* F, std::mt19937_64& rng, size_t n);
/// G^{-1} diag(U, N) G^{(q)} with U diagonal, entries of multiplicative order
/// dividing `unit_order`, N strictly upper triangular and G random
/// invertible. Over F = F_q its splitting degree divides `unit_order`.
semilin::SemilinearOp random_split_operator(const arith::Field* F, std::mt19937_64& rng, size_t n,
                                            uint64_t unit_order = 2);

}  // namespace frobroot::oracle
