#pragma once

#include "crmw/model.hpp"
#include "crmw/random.hpp"
#include "crmw/symbols.hpp"

namespace crmw {

// Random normalized model: Hermitian nondegenerate H0 and S(zeta) with
// linearly independent linear part and random terms up to `degree`.
ModelData random_model(Rng &rng, int s, int r, int order, int degree = 3);

// Symmetric matrix polynomial in zeta with the given homogeneous degree range.
SeriesMatrix random_zeta_matrix(Rng &rng, const VarSpace &sp, int order, int min_degree,
                                int max_degree, long bound = 2);

// Antiholomorphic symmetric matrix in zetabar (constant term included).
SeriesMatrix random_zetabar_matrix(Rng &rng, const VarSpace &sp, int order, int max_degree,
                                   long bound = 2);

// r linearly independent symmetric s x s matrices.
std::vector<Matrix> random_independent_symmetric(Rng &rng, int s, int r, long bound = 2);

// Realizable modified symbol with e^{ih} = 1: random H, independent S02 and a
// random combination of the realizable Omega tuples.
ModifiedSymbol random_realizable_symbol(Rng &rng, int s, int r, long bound = 2);

} // namespace crmw
