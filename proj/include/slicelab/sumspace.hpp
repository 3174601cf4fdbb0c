#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "slicelab/polytope.hpp"
#include "slicelab/rng.hpp"
#include "slicelab/seqspace.hpp"

namespace slicelab::sum {

/// An element of a finite l2-sum of blocks; every block vector is a SeqElem
/// (cube blocks use limit 0 and coordinates 1..dim). All l2 quantities are
/// carried as exact squares, so no square root is ever materialized.
struct SumElem {
    std::vector<seq::SeqElem> blocks;
};

Rational l2_norm_sq(const SumElem& x);
Rational distance_sq(const SumElem& x, const SumElem& y);

/// Squared diameter bound for V_m: 4(1-(1-eps)^2) + eps^2.
Rational vm_bound_sq(const Rational& eps);

/// V_m = { x in B_Z : x_m in U } where block m (1-based) is a c-truncation
/// carrying the small weakly open set U and the remaining blocks are
/// sup-norm balls of the listed dimensions.
struct VmRegion {
    int m = 1;
    const poly::Region* U = nullptr;
    std::vector<int> other_dims;
};

struct PairSearch {
    Rational best_sq = 0;
    SumElem a, b;
    long pairs_checked = 0;
};

/// Max squared distance over a deterministic candidate family in V_m:
/// pairs of U-points (callers pass membership-verified base points) with
/// opposite sign corners on the other blocks, scaled so the l2 constraint
/// holds exactly, plus seeded random feasible pairs.
PairSearch vm_diameter_lb(const VmRegion& v,
                          const std::vector<seq::SeqElem>& u_points,
                          int samples, std::uint64_t seed);

/// A functional on the sum in split form: block functionals of dual norm 1
/// wherever the profile is nonzero, combined by an l2 profile with
/// sum profile^2 = 1 (so sup over the sum ball is exactly 1).
struct SumFunctional {
    std::vector<Rational> profile;
    std::vector<seq::Functional> block_f;

    Rational eval(const SumElem& x) const;
};

struct SliceSearch {
    Rational best_sq = 0;
    SumElem a, b;
    int partial_blocks = 0;  // blocks carrying functional mass
};

/// Vertex-pair search in the slice { z in B_Z : f(z) >= 1 - lambda } of an
/// l2-sum of sup-norm balls, restricted to the partial sum of the blocks
/// carrying f's mass and embedded back with zero tails.
SliceSearch sum_slice_diameter_lb(const std::vector<int>& dims,
                                  const SumFunctional& f, const Rational& lambda);

struct CcsSpec {
    SumFunctional f;
    Rational lambda;
};

/// Max squared distance over candidate pairs in the convex combination
/// w1*S1 + w2*S2 of two slices of the sum ball. Candidates include sign
/// corners, cheapest-coefficient flips, and flips at coordinates free for
/// both functionals (where the combination moves in lockstep).
PairSearch ccs_diameter_lb(const std::vector<int>& dims, const CcsSpec& s1,
                           const CcsSpec& s2, const Rational& w1);

/// Corner of the block cube aligned with g (+1 where g has no coefficient).
seq::SeqElem cube_corner(const seq::Functional& g, int dim);

/// In a sup-norm ball of dimension N, a slice with parameter lambda > 2/N
/// always contains the corner and its cheapest flip, a pair at distance 2.
std::pair<seq::SeqElem, seq::SeqElem> cube_slice_flip_pair(const seq::Functional& g,
                                                           int dim,
                                                           const Rational& lambda);

}  // namespace slicelab::sum
