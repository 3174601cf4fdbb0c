// Acceptance suite: one line per criterion, exact comparisons only.
// Exit status 0 iff every criterion passes.

#include <chrono>
#include <iostream>
#include <string>

#include "slicelab/experiments.hpp"

using namespace slicelab;
namespace ex = slicelab::experiments;

namespace {

int failures = 0;
constexpr int kJobs = 2;

class Timer {
  public:
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void verdict(int index, const std::string& name, bool pass, long ms,
             const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << index << ": "
              << name << " (" << ms << " ms)";
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << std::endl;
    if (!pass) ++failures;
}

long count_passed(const report::Report& r) {
    long n = 0;
    for (const auto& c : r.cases) n += c.value("pass", false);
    return n;
}

}  // namespace

int main() {
    // 1. Every slice of K has diameter exactly 2: 100 seeded functionals,
    //    universe depth 3 / branch 4, lambda in {1/2, 1/8, 1/64}.
    {
        Timer t;
        ex::KSlicesConfig cfg;
        cfg.depth = 3;
        cfg.branch = 4;
        cfg.seeds = 100;
        cfg.support = 12;
        cfg.lambdas = {make_rat(1, 2), make_rat(1, 8), make_rat(1, 64)};
        report::Report r = ex::run_kslices(cfg, kJobs);
        verdict(1, "slices of K have diameter exactly 2", r.all_pass(), t.ms(),
                std::to_string(count_passed(r)) + "/" +
                    std::to_string(r.cases.size()) + " functionals");
    }

    // 2. diam(W_n) <= 9/n for n in {5,6,9,12}, rho = 1/(2n(32n-21)),
    //    branch = n, depths 1..3, with x0 membership and depth monotonicity.
    {
        Timer t;
        bool pass = true;
        std::string detail;
        for (int n : {5, 6, 9, 12}) {
            ex::WnDiameterConfig cfg;
            cfg.n = n;
            cfg.depths = {1, 2, 3};
            report::Report r = ex::run_wn_diameter(cfg, kJobs);
            bool ok = r.all_pass() &&
                      r.summary.value("diameters_nondecreasing", false);
            pass &= ok;
            const auto& deepest = r.cases.back();
            detail += "n=" + std::to_string(n) + ": diam(d3)=" +
                      deepest["diameter"]["exact"].get<std::string>() + " <= 9/" +
                      std::to_string(n) + (ok ? "; " : " FAILED; ");
        }
        verdict(2, "diam(W_n) <= 9/n across depths", pass, t.ms(), detail);
    }

    // 3. Theorem part ii: sup-norm diameter of W divided by (1-eps) <= gamma
    //    for eps = 1/4 and gamma in {1, 1/2} with 18 < n(1-eps)gamma.
    {
        Timer t;
        ex::RenormWeakopenConfig cfg;
        cfg.epsilon = make_rat(1, 4);
        cfg.cases = {{Rational(1), 25, 1, Rational(0)},
                     {Rational(1), 25, 2, Rational(0)},
                     {make_rat(1, 2), 49, 1, Rational(0)}};
        report::Report r = ex::run_renorm_weakopen(cfg, kJobs);
        std::string detail;
        for (const auto& c : r.cases)
            detail += "gamma=" + c["gamma"].get<std::string>() + " depth=" +
                      std::to_string(c["depth"].get<int>()) + ": eps-diam<=" +
                      c["eps_diameter_upper"]["exact"].get<std::string>() + "; ";
        verdict(3, "weakly open W with eps-norm diameter <= gamma", r.all_pass(),
                t.ms(), detail);
    }

    // 4. Theorem part i: renorm slice witnesses at sup distance exactly 2
    //    for 50 seeded functionals and beta in {1/4, 1/16}.
    {
        Timer t;
        ex::RenormSlicesConfig cfg;
        cfg.depth = 3;
        cfg.branch = 4;
        cfg.epsilon = make_rat(1, 4);
        cfg.betas = {make_rat(1, 4), make_rat(1, 16)};
        cfg.seeds = 50;
        cfg.support = 12;
        report::Report r = ex::run_renorm_slices(cfg, kJobs);
        verdict(4, "renormed-ball slices contain pairs at distance 2", r.all_pass(),
                t.ms(),
                std::to_string(count_passed(r)) + "/" +
                    std::to_string(r.cases.size()) + " functionals");
    }

    // 5. V_m bound: eps_m = 1/2^m for m = 1..6, U_m from the W_n machinery
    //    (depth 1, n in {5,6,9,12,12,12}); candidate pairs within the bound
    //    and min block norm above 1 - eps_m.
    {
        Timer t;
        ex::L2SumConfig cfg;
        cfg.epsilons = {make_rat(1, 2),  make_rat(1, 4),  make_rat(1, 8),
                        make_rat(1, 16), make_rat(1, 32), make_rat(1, 64)};
        cfg.u_branch = {5, 6, 9, 12, 12, 12};
        cfg.other_dims = {4, 4, 4, 4, 4};
        cfg.samples = 20;
        report::Report r = ex::run_l2sum(cfg, kJobs);
        verdict(5, "l2-sum V_m within the lemma bound", r.all_pass(), t.ms(),
                std::to_string(count_passed(r)) + "/" +
                    std::to_string(r.cases.size()) + " block indices");
    }

    // 6. c0 + c0 convex combinations of slices: searched squared diameter
    //    >= 1 in all 20 seeded two-slice cases (block dims 8).
    {
        Timer t;
        ex::CcsConfig cfg;
        cfg.dims = {8, 8};
        cfg.cases = 20;
        report::Report r = ex::run_ccs(cfg, kJobs);
        verdict(6, "combination-of-slices squared diameter >= 1", r.all_pass(),
                t.ms(),
                std::to_string(count_passed(r)) + "/" +
                    std::to_string(r.cases.size()) + " combinations");
    }

    // 7. Oracle equivalence on 200 random polytopes (<= 12 vertices,
    //    <= 10 coordinates): LP = enumeration and ranges = pairwise max.
    // 8. Exhaustive encoding invariants for depth <= 3, branch <= 4.
    {
        Timer t;
        ex::SelfcheckConfig cfg;
        cfg.polytopes = 200;
        cfg.max_vertices = 12;
        cfg.max_coords = 10;
        cfg.enc_depth = 3;
        cfg.enc_branch = 4;
        report::Report r = ex::run_selfcheck(cfg, kJobs);
        bool poly_pass = true, enc_pass = true;
        for (const auto& c : r.cases) {
            if (c["kind"] == "polytope")
                poly_pass &= c.value("pass", false);
            else
                enc_pass &= c.value("pass", false);
        }
        long ms = t.ms();
        verdict(7, "LP/enumeration and diameter/bruteforce equivalence", poly_pass,
                ms);
        verdict(8, "encoding order invariants, exhaustive", enc_pass, 0);
    }

    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) +
                                      " criterion(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
