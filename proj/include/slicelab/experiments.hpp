#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slicelab/report.hpp"

namespace slicelab::experiments {

/// Slices of K have diameter exactly 2 (seeded functional campaign).
struct KSlicesConfig {
    int depth = 3;
    int branch = 4;
    int seeds = 100;
    int support = 12;
    std::vector<Rational> lambdas = {make_rat(1, 2), make_rat(1, 8), make_rat(1, 64)};
    std::uint64_t seed = 20240817;
};
report::Report run_kslices(const KSlicesConfig& cfg, int jobs);

/// diam(W_n) <= 9/n with x0 membership, across truncation depths.
struct WnDiameterConfig {
    int n = 5;
    Rational rho;  // empty => 1/(2n(32n-21))
    int branch = 0;  // 0 => n
    std::vector<int> depths = {1, 2, 3};
};
report::Report run_wn_diameter(const WnDiameterConfig& cfg, int jobs);

/// Slices of the renormed ball contain pairs at sup distance exactly 2.
struct RenormSlicesConfig {
    int depth = 3;
    int branch = 4;
    Rational epsilon = make_rat(1, 4);
    std::vector<Rational> betas = {make_rat(1, 4), make_rat(1, 16)};
    int seeds = 50;
    int support = 12;
    std::uint64_t seed = 20240818;
};
report::Report run_renorm_slices(const RenormSlicesConfig& cfg, int jobs);

/// The weakly open W inside B_eps has sup diameter <= (1-eps)*gamma.
struct RenormWeakopenConfig {
    struct Case {
        Rational gamma;
        int n;
        int depth;
        Rational rho;  // empty => 1/(2n(32n-21))
    };
    Rational epsilon = make_rat(1, 4);
    std::vector<Case> cases;
};
report::Report run_renorm_weakopen(const RenormWeakopenConfig& cfg, int jobs);

/// Lemma bound for V_m in an l2-sum, with U_m built by the W_n machinery.
struct L2SumConfig {
    std::vector<Rational> epsilons;  // eps_m per case
    std::vector<int> u_branch;       // W_n parameter per case (depth 1)
    std::vector<int> other_dims = {4, 4, 4, 4, 4};
    int samples = 20;
    std::uint64_t seed = 20240819;
};
report::Report run_l2sum(const L2SumConfig& cfg, int jobs);

/// Convex combinations of two slices of the c0+c0 sum ball have squared
/// diameter at least 1 (search-based; a miss is reported as inconclusive).
struct CcsConfig {
    std::vector<int> dims = {8, 8};
    int cases = 20;
    int block_support = 3;
    std::vector<Rational> lambda_pool = {make_rat(1, 4), make_rat(1, 2)};
    std::vector<Rational> weight_pool = {make_rat(1, 2), make_rat(1, 3),
                                         make_rat(2, 3), make_rat(1, 4)};
    std::uint64_t seed = 20240820;
};
report::Report run_ccs(const CcsConfig& cfg, int jobs);

/// LP-vs-enumeration oracle equivalence and exhaustive encoding invariants.
struct SelfcheckConfig {
    int polytopes = 200;
    int max_vertices = 12;
    int max_coords = 10;
    int enc_depth = 3;
    int enc_branch = 4;
    std::uint64_t seed = 20240821;
};
report::Report run_selfcheck(const SelfcheckConfig& cfg, int jobs);

}  // namespace slicelab::experiments
