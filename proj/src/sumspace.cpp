#include "slicelab/sumspace.hpp"

#include <stdexcept>

namespace slicelab::sum {

using seq::Functional;
using seq::SeqElem;

Rational l2_norm_sq(const SumElem& x) {
    Rational acc = 0;
    for (const SeqElem& b : x.blocks) {
        Rational n = seq::sup_norm(b);
        acc += n * n;
    }
    return acc;
}

Rational distance_sq(const SumElem& x, const SumElem& y) {
    if (x.blocks.size() != y.blocks.size())
        throw std::invalid_argument("sum elements have different block counts");
    Rational acc = 0;
    for (size_t i = 0; i < x.blocks.size(); ++i) {
        Rational n = seq::sup_norm(x.blocks[i].sub(y.blocks[i]));
        acc += n * n;
    }
    return acc;
}

Rational vm_bound_sq(const Rational& eps) {
    Rational inner = 1 - (1 - eps) * (1 - eps);
    return 4 * inner + eps * eps;
}

namespace {

SeqElem sign_corner(int dim, const Rational& height, rng::Lcg64& gen) {
    std::map<int, Rational> dev;
    for (int t = 1; t <= dim; ++t) dev[t] = gen.coin() ? height : -height;
    return SeqElem(Rational(0), std::move(dev));
}

}  // namespace

PairSearch vm_diameter_lb(const VmRegion& v, const std::vector<SeqElem>& u_points,
                          int samples, std::uint64_t seed) {
    if (!v.U) throw std::invalid_argument("vm region without a weakly open set");
    if (u_points.empty()) throw std::invalid_argument("empty V_m candidate base");
    for (size_t i = 0; i < u_points.size(); ++i)
        if (!poly::membership(u_points[i], *v.U))
            throw std::invalid_argument("U-point " + std::to_string(i) +
                                        " is not in the region");

    const int blocks = static_cast<int>(v.other_dims.size()) + 1;
    const size_t m_pos = static_cast<size_t>(v.m - 1);
    if (v.m < 1 || v.m > blocks) throw std::invalid_argument("block index out of range");

    rng::Lcg64 gen(seed);
    auto assemble = [&](const SeqElem& um, int corner_sign,
                        rng::Lcg64& g) -> SumElem {
        SumElem z;
        z.blocks.resize(static_cast<size_t>(blocks));
        z.blocks[m_pos] = um;
        Rational nm = seq::sup_norm(um);
        Rational budget_sq = 1 - nm * nm;
        if (budget_sq < 0)
            throw std::invalid_argument("U-point outside the block unit ball");
        int others = blocks - 1;
        size_t oi = 0;
        for (int b = 0; b < blocks; ++b) {
            if (b == static_cast<int>(m_pos)) continue;
            Rational height =
                others > 0 ? rat_sqrt_lower(budget_sq / others) : Rational(0);
            SeqElem corner = sign_corner(v.other_dims[oi], height, g);
            z.blocks[static_cast<size_t>(b)] =
                corner_sign < 0 ? corner.negate() : corner;
            ++oi;
        }
        return z;
    };

    PairSearch out;
    auto consider = [&](const SumElem& a, const SumElem& b) {
        if (l2_norm_sq(a) > 1 || l2_norm_sq(b) > 1)
            throw std::logic_error("candidate escaped the sum ball");
        Rational d = distance_sq(a, b);
        ++out.pairs_checked;
        if (d > out.best_sq) {
            out.best_sq = d;
            out.a = a;
            out.b = b;
        }
    };

    // deterministic corner pairs over all base-point combinations
    for (size_t i = 0; i < u_points.size(); ++i)
        for (size_t j = i; j < u_points.size(); ++j) {
            rng::Lcg64 g = gen.fork(static_cast<std::uint64_t>(i * 131 + j));
            rng::Lcg64 g2 = g;
            SumElem a = assemble(u_points[i], +1, g);
            SumElem b = assemble(u_points[j], -1, g2);  // mirrored corners
            consider(a, b);
        }

    // seeded random feasible pairs: convex mixes inside U with random corners
    for (int s = 0; s < samples; ++s) {
        rng::Lcg64 g = gen.fork(static_cast<std::uint64_t>(1000 + s));
        size_t i = static_cast<size_t>(g.below(u_points.size()));
        size_t j = static_cast<size_t>(g.below(u_points.size()));
        int num = g.range(0, 16);
        Rational t(num, 16);
        SeqElem mix = u_points[i].scale(t).add(u_points[j].scale(1 - t));
        SeqElem mix2 = u_points[j].scale(t).add(u_points[i].scale(1 - t));
        SumElem a = assemble(mix, +1, g);
        SumElem b = assemble(mix2, -1, g);
        consider(a, b);
    }
    return out;
}

Rational SumFunctional::eval(const SumElem& x) const {
    if (x.blocks.size() != profile.size())
        throw std::invalid_argument("functional/element block mismatch");
    Rational acc = 0;
    for (size_t i = 0; i < profile.size(); ++i) {
        if (profile[i] == 0) continue;
        acc += profile[i] * block_f[i].eval(x.blocks[i]);
    }
    return acc;
}

SeqElem cube_corner(const Functional& g, int dim) {
    std::map<int, Rational> dev;
    for (int t = 1; t <= dim; ++t) {
        auto it = g.coeffs().find(t);
        bool neg = it != g.coeffs().end() && it->second < 0;
        dev[t] = neg ? Rational(-1) : Rational(1);
    }
    return SeqElem(Rational(0), std::move(dev));
}

std::pair<SeqElem, SeqElem> cube_slice_flip_pair(const Functional& g, int dim,
                                                 const Rational& lambda) {
    if (g.coeffs().empty()) throw std::invalid_argument("empty functional");
    SeqElem corner = cube_corner(g, dim);
    // cheapest coordinate: smallest |coefficient| over 1..dim (0 if any
    // coordinate carries no coefficient), lowest index on ties
    int best_t = -1;
    Rational best_abs;
    for (int t = 1; t <= dim; ++t) {
        auto it = g.coeffs().find(t);
        Rational a = it == g.coeffs().end() ? Rational(0) : rat_abs(it->second);
        if (best_t < 0 || a < best_abs) {
            best_t = t;
            best_abs = a;
        }
    }
    if (!(2 * best_abs <= lambda))
        throw std::invalid_argument("slice too thin for a full coordinate flip");
    SeqElem flipped = corner.with_coord(best_t, -corner.coord(best_t));
    return {std::move(corner), std::move(flipped)};
}

namespace {

struct SliceCandidates {
    std::vector<SumElem> points;
};

/// Base corner point of the slice plus every feasible full coordinate flip.
/// `extra_free` lists (block, coordinate) pairs that must be included as
/// flips whenever they cost nothing for this functional.
SliceCandidates slice_candidates(const std::vector<int>& dims, const SumFunctional& f,
                                 const Rational& lambda,
                                 const std::vector<std::pair<int, int>>& extra_free) {
    SliceCandidates out;
    SumElem base;
    base.blocks.resize(dims.size());
    for (size_t b = 0; b < dims.size(); ++b) {
        SeqElem corner = cube_corner(f.block_f[b], dims[b]);
        base.blocks[b] = corner.scale(f.profile[b] < 0 ? -f.profile[b] : f.profile[b]);
        if (f.profile[b] < 0) base.blocks[b] = base.blocks[b].negate();
    }
    out.points.push_back(base);

    auto try_flip = [&](size_t b, int t) {
        const Rational& cur = base.blocks[b].coord(t);
        Rational coeff = 0;
        auto it = f.block_f[b].coeffs().find(t);
        if (it != f.block_f[b].coeffs().end()) coeff = f.profile[b] * it->second;
        // flipping coordinate t of block b changes f by 2*|coeff|*|cur|
        Rational cost = 2 * rat_abs(coeff) * rat_abs(cur);
        if (cost <= lambda) {
            SumElem flipped = base;
            flipped.blocks[b] = base.blocks[b].with_coord(t, -cur);
            out.points.push_back(std::move(flipped));
        }
    };

    for (size_t b = 0; b < dims.size(); ++b) {
        // cheapest coefficient in this block
        int best_t = -1;
        Rational best_abs;
        for (int t = 1; t <= dims[b]; ++t) {
            auto it = f.block_f[b].coeffs().find(t);
            Rational a = it == f.block_f[b].coeffs().end() ? Rational(0)
                                                           : rat_abs(it->second);
            if (best_t < 0 || a < best_abs) {
                best_t = t;
                best_abs = a;
            }
        }
        if (best_t > 0) try_flip(b, best_t);
    }
    for (const auto& [b, t] : extra_free) try_flip(static_cast<size_t>(b), t);
    return out;
}

}  // namespace

SliceSearch sum_slice_diameter_lb(const std::vector<int>& dims, const SumFunctional& f,
                                  const Rational& lambda) {
    if (lambda <= 0) throw std::invalid_argument("lambda must be > 0");
    if (dims.size() != f.profile.size())
        throw std::invalid_argument("functional/dims block mismatch");
    SliceSearch out;
    for (const Rational& p : f.profile)
        if (p != 0) ++out.partial_blocks;
    if (out.partial_blocks == 0)
        throw std::invalid_argument("functional carries no mass on any block");

    SliceCandidates cands = slice_candidates(dims, f, lambda, {});
    const Rational threshold = 1 - lambda;
    for (size_t i = 0; i < cands.points.size(); ++i) {
        if (f.eval(cands.points[i]) < threshold)
            throw std::logic_error("candidate escaped the slice");
        for (size_t j = i + 1; j < cands.points.size(); ++j) {
            Rational d = distance_sq(cands.points[i], cands.points[j]);
            if (d > out.best_sq) {
                out.best_sq = d;
                out.a = cands.points[i];
                out.b = cands.points[j];
            }
        }
    }
    return out;
}

PairSearch ccs_diameter_lb(const std::vector<int>& dims, const CcsSpec& s1,
                           const CcsSpec& s2, const Rational& w1) {
    if (!(w1 >= 0 && w1 <= 1)) throw std::invalid_argument("weights must be convex");
    const Rational w2 = 1 - w1;

    // coordinates free for both functionals: flipping there moves both
    // slices in lockstep at zero functional cost
    std::vector<std::pair<int, int>> free_coords;
    for (size_t b = 0; b < dims.size(); ++b)
        for (int t = 1; t <= dims[b]; ++t)
            if (!s1.f.block_f[b].coeffs().count(t) &&
                !s2.f.block_f[b].coeffs().count(t)) {
                free_coords.emplace_back(static_cast<int>(b), t);
                break;  // one shared free coordinate per block suffices
            }

    SliceCandidates c1 = slice_candidates(dims, s1.f, s1.lambda, free_coords);
    SliceCandidates c2 = slice_candidates(dims, s2.f, s2.lambda, free_coords);

    std::vector<SumElem> combos;
    combos.reserve(c1.points.size() * c2.points.size());
    for (const SumElem& p : c1.points) {
        if (s1.f.eval(p) < 1 - s1.lambda)
            throw std::logic_error("candidate escaped slice 1");
        for (const SumElem& q : c2.points) {
            if (s2.f.eval(q) < 1 - s2.lambda)
                throw std::logic_error("candidate escaped slice 2");
            SumElem c;
            c.blocks.resize(dims.size());
            for (size_t b = 0; b < dims.size(); ++b)
                c.blocks[b] = p.blocks[b].scale(w1).add(q.blocks[b].scale(w2));
            combos.push_back(std::move(c));
        }
    }

    PairSearch out;
    for (size_t i = 0; i < combos.size(); ++i)
        for (size_t j = i + 1; j < combos.size(); ++j) {
            Rational d = distance_sq(combos[i], combos[j]);
            ++out.pairs_checked;
            if (d > out.best_sq) {
                out.best_sq = d;
                out.a = combos[i];
                out.b = combos[j];
            }
        }
    return out;
}

}  // namespace slicelab::sum
