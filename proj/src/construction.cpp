#include "slicelab/construction.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace slicelab::construction {

using seq::Functional;
using seq::SeqElem;
using tree::TreeNode;

poly::Region KBody::region() const {
    poly::Region r;
    r.hull_parts.emplace_back(polytope);
    r.tree_family = encoding;
    return r;
}

KBody build_K(const tree::Universe& u) {
    auto enc = std::make_shared<tree::Encoding>(u);
    std::vector<SeqElem> verts;
    verts.reserve(2 * static_cast<size_t>(enc->size()));
    for (int i = 1; i <= enc->size(); ++i)
        verts.push_back(seq::make_x_alpha(enc->node_of(i), *enc));
    for (int i = 1; i <= enc->size(); ++i)
        verts.push_back(seq::make_x_alpha(enc->node_of(i), *enc).negate());
    return KBody{std::move(enc), poly::VertexPolytope(std::move(verts))};
}

namespace {

Rational wn_rho_bound(int n) {
    return Rational(1, static_cast<long>(n) * (32L * n - 21L));
}

/// e*_(0,i) for i = 1..n as coordinate functionals, plus a branch check.
std::vector<Functional> depth_one_functionals(const tree::Encoding& enc, int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (enc.universe().max_branch < n)
        throw std::invalid_argument("universe branch must be >= n so the nodes "
                                    "(0,1)..(0,n) exist");
    std::vector<Functional> out;
    out.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        out.push_back(Functional::coordinate(enc.index_of(TreeNode({i}))));
    return out;
}

}  // namespace

WnSpec build_Wn(const KBody& k, int n, const Rational& rho) {
    const Rational bound = wn_rho_bound(n);
    if (!(rho > 0 && rho < bound))
        throw std::invalid_argument("rho must satisfy 0 < rho < 1/(n(32n-21)) = " +
                                    rat_str(bound) + ", got " + rat_str(rho));
    WnSpec spec;
    spec.n = n;
    spec.rho = rho;
    spec.region = k.region();
    const Rational threshold = Rational(2, n) - 1 - rho;
    for (const Functional& f : depth_one_functionals(*k.encoding, n))
        spec.region.constraints.push_back({f, threshold, poly::ConstraintSense::GE});
    spec.region.constraints.push_back(
        {Functional::limit(), Rational(-1) + rho, poly::ConstraintSense::LE});
    return spec;
}

SeqElem witness_x0(const tree::Encoding& enc, int n) {
    if (enc.universe().max_branch < n)
        throw std::invalid_argument("universe branch must be >= n");
    std::vector<Rational> weights(static_cast<size_t>(n), Rational(1, n));
    std::vector<SeqElem> elems;
    elems.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i)
        elems.push_back(seq::make_x_alpha(TreeNode({i}), enc));
    return seq::convex_comb(weights, elems);
}

void require_margin_rule(const Functional& f, const tree::Encoding& enc) {
    const tree::Universe& u = enc.universe();
    std::map<TreeNode, int> children_in_support;
    for (const auto& [i, c] : f.coeffs()) {
        (void)c;
        if (i < 1 || i > enc.size())
            throw std::invalid_argument("functional support outside the universe");
        const TreeNode& node = enc.node_of(i);
        if (node.length() > u.max_depth - 1)
            throw std::invalid_argument(
                "margin rule: support node " + node.str() +
                " is at the truncation boundary (depth must be <= max_depth - 1)");
        if (!node.is_root()) ++children_in_support[node.parent()];
    }
    for (const auto& [parent, count] : children_in_support)
        if (count >= u.max_branch)
            throw std::invalid_argument("margin rule: support exhausts all children of " +
                                        parent.str());
}

VertexSup vertex_sup(const tree::Encoding& enc, const Functional& f) {
    const int depth_cap = enc.universe().max_depth - 1;
    bool have = false;
    Rational best_plus, best_minus;
    TreeNode arg_plus, arg_minus;
    for (int i = 1; i <= enc.size(); ++i) {
        const TreeNode& node = enc.node_of(i);
        if (node.length() > depth_cap) continue;
        Rational val = f.eval(seq::make_x_alpha(node, enc));
        if (!have || val > best_plus) {
            best_plus = val;
            arg_plus = node;
        }
        if (!have || -val > best_minus) {
            best_minus = -val;
            arg_minus = node;
        }
        have = true;
    }
    if (!have) throw std::logic_error("empty vertex scan");
    // Tie-break keeps the map f -> witness equivariant under negation:
    // on a tie the side with the smaller argmax index wins.
    if (best_plus > best_minus) return {best_plus, arg_plus, +1};
    if (best_minus > best_plus) return {best_minus, arg_minus, -1};
    if (enc.index_of(arg_plus) <= enc.index_of(arg_minus))
        return {best_plus, arg_plus, +1};
    return {best_minus, arg_minus, -1};
}

namespace {

/// Smallest child index of `node` whose coordinate avoids supp(f).
int child_outside_support(const TreeNode& node, const tree::Encoding& enc,
                          const Functional& f) {
    for (int j = 1; j <= enc.universe().max_branch; ++j) {
        int idx = enc.index_of(node.child(j));
        if (!f.coeffs().count(idx)) return j;
    }
    throw std::invalid_argument(
        "no child of " + node.str() +
        " avoids the functional support; enlarge the universe branch");
}

}  // namespace

std::pair<SeqElem, SeqElem> slice_child_witness(const KBody& k, const Functional& f,
                                                const Rational& lambda) {
    if (lambda <= 0) throw std::invalid_argument("lambda must be > 0");
    if (f.is_zero()) throw std::invalid_argument("zero functional");
    require_margin_rule(f, *k.encoding);
    VertexSup sup = vertex_sup(*k.encoding, f);
    int j = child_outside_support(sup.node, *k.encoding, f);
    SeqElem parent = seq::make_x_alpha(sup.node, *k.encoding);
    SeqElem child = seq::make_x_alpha(sup.node.child(j), *k.encoding);
    if (sup.side < 0) {
        parent = parent.negate();
        child = child.negate();
    }
    return {std::move(parent), std::move(child)};
}

RenormBall build_renorm_ball(const tree::Universe& u, const Rational& epsilon) {
    if (!(epsilon > 0 && epsilon < 1))
        throw std::invalid_argument("epsilon must lie in (0,1)");
    auto enc = std::make_shared<tree::Encoding>(u);
    std::vector<SeqElem> a_side, minus_a;
    a_side.reserve(static_cast<size_t>(enc->size()));
    minus_a.reserve(static_cast<size_t>(enc->size()));
    for (int i = 1; i <= enc->size(); ++i) {
        a_side.push_back(seq::make_x_alpha(enc->node_of(i), *enc));
        minus_a.push_back(a_side.back().negate());
    }
    poly::MinkowskiPart box;
    box.scale_outer = 1 - epsilon;
    box.box_outer = 1;
    box.scale_inner = epsilon;
    box.box_inner = 1;
    box.coords.resize(static_cast<size_t>(enc->size()));
    for (int i = 1; i <= enc->size(); ++i) box.coords[static_cast<size_t>(i - 1)] = i;

    poly::Region region;
    region.hull_parts.emplace_back(poly::VertexPolytope(std::move(a_side)));
    region.hull_parts.emplace_back(poly::VertexPolytope(std::move(minus_a)));
    region.hull_parts.emplace_back(std::move(box));
    region.tree_family = enc;
    return RenormBall{epsilon, std::move(enc), std::move(region)};
}

poly::Region build_W_theorem(const RenormBall& ball, int n, const Rational& rho,
                             const Rational& gamma) {
    const Rational bound = wn_rho_bound(n);
    if (!(rho > 0))
        throw std::invalid_argument("parameter gate failed: 0 < rho");
    if (!(rho < bound))
        throw std::invalid_argument("parameter gate failed: rho < 1/(n(32n-21)) = " +
                                    rat_str(bound));
    if (!(2 * rho < ball.epsilon))
        throw std::invalid_argument("parameter gate failed: 2*rho < epsilon");
    if (!(2 * rho < gamma))
        throw std::invalid_argument("parameter gate failed: 2*rho < gamma");
    if (!(18 < Rational(n) * (1 - ball.epsilon) * gamma))
        throw std::invalid_argument("parameter gate failed: 18 < n*(1-epsilon)*gamma");

    poly::Region region = ball.region;
    const Rational threshold = Rational(2, n) - 1 - rho / 2;
    for (const Functional& f : depth_one_functionals(*ball.encoding, n))
        region.constraints.push_back({f, threshold, poly::ConstraintSense::GE});
    region.constraints.push_back(
        {Functional::limit(), Rational(-1) + rho * rho, poly::ConstraintSense::LE});
    return region;
}

std::pair<SeqElem, SeqElem> renorm_slice_witness(const RenormBall& ball,
                                                 const Functional& f,
                                                 const Rational& beta) {
    if (beta <= 0) throw std::invalid_argument("beta must be > 0");
    if (f.is_zero()) throw std::invalid_argument("zero functional");
    const tree::Encoding& enc = *ball.encoding;
    require_margin_rule(f, enc);

    // sup over the three hull parts: vertices by scan, box in closed form
    VertexSup vsup = vertex_sup(enc, f);
    Rational box_sup = (1 - ball.epsilon) * rat_abs(f.limit_coeff());
    for (const auto& [i, c] : f.coeffs()) {
        (void)i;
        box_sup += rat_abs(c);
    }

    if (vsup.value >= box_sup) {
        // vertex branch: the child vertex repeats the parent's value
        int j = child_outside_support(vsup.node, enc, f);
        SeqElem parent = seq::make_x_alpha(vsup.node, enc);
        SeqElem child = seq::make_x_alpha(vsup.node.child(j), enc);
        if (vsup.side < 0) {
            parent = parent.negate();
            child = child.negate();
        }
        return {std::move(parent), std::move(child)};
    }

    // box branch: the maximizing point is (1-eps) x0 + eps y0 with x0 the
    // sign pattern over supp(f) extended by the limit sign, y0 the same
    // pattern in c0
    auto sign_of = [](const Rational& v) {
        return v > 0 ? Rational(1) : (v < 0 ? Rational(-1) : Rational(0));
    };
    std::map<int, Rational> u_dev, w_dev;
    for (const auto& [i, c] : f.coeffs()) {
        u_dev[i] = sign_of(c);
        w_dev[i] = sign_of(c);
    }
    SeqElem x0(sign_of(f.limit_coeff()), std::move(u_dev));
    SeqElem y0(Rational(0), std::move(w_dev));

    int pert = -1;
    for (int i = 1; i <= enc.size(); ++i)
        if (!f.coeffs().count(i)) {
            pert = i;
            break;
        }
    if (pert < 0)
        throw std::invalid_argument("no coordinate outside the functional support; "
                                    "enlarge the universe");

    SeqElem xj = x0.with_coord(pert, Rational(1));
    SeqElem yj = x0.with_coord(pert, Rational(-1));
    const Rational one_minus_eps = 1 - ball.epsilon;
    SeqElem p1 = xj.scale(one_minus_eps)
                     .add(y0.add(SeqElem::basis(pert)).scale(ball.epsilon));
    SeqElem p2 = yj.scale(one_minus_eps)
                     .add(y0.sub(SeqElem::basis(pert)).scale(ball.epsilon));
    return {std::move(p1), std::move(p2)};
}

}  // namespace slicelab::construction
