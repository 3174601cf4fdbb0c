#pragma once

#include <memory>
#include <utility>

#include "slicelab/polytope.hpp"
#include "slicelab/seqspace.hpp"
#include "slicelab/tree.hpp"

namespace slicelab::construction {

/// K = co(A u -A): the closed convex symmetric body spanned by the tree
/// vertex family over a finite universe.
struct KBody {
    std::shared_ptr<const tree::Encoding> encoding;
    poly::VertexPolytope polytope;  // {x_a} u {-x_a}, 2*|universe| vertices

    const tree::Universe& universe() const { return encoding->universe(); }
    poly::Region region() const;
};

KBody build_K(const tree::Universe& u);

/// The small relatively weakly open subset W_n of K:
///   e*_(0,i)(x) >= 2/n - 1 - rho  for i = 1..n,   lim(x) <= -1 + rho.
struct WnSpec {
    int n = 1;
    Rational rho;
    poly::Region region;
};

/// Requires 0 < rho < 1/(n(32n-21)) and universe branch >= n.
WnSpec build_Wn(const KBody& k, int n, const Rational& rho);

/// x0 = (1/n) * sum of the first n depth-one vertices; lies in W_n with
/// e*_(0,j)(x0) = (2-n)/n and lim(x0) = -1.
seq::SeqElem witness_x0(const tree::Encoding& enc, int n);

/// Functionals used in slice experiments must keep their coordinate support
/// on nodes of depth <= max_depth - 1 and must not exhaust the children of
/// any parent, so that a same-value child vertex always exists inside the
/// truncation. Throws when violated.
void require_margin_rule(const seq::Functional& f, const tree::Encoding& enc);

/// A pair (+-x_a, +-x_{a.j}) inside the slice {f >= sup_K(f) - lambda},
/// at sup-norm distance exactly 2. The child index j is the smallest whose
/// coordinate avoids the support of f, so the functional value is unchanged.
std::pair<seq::SeqElem, seq::SeqElem> slice_child_witness(const KBody& k,
                                                          const seq::Functional& f,
                                                          const Rational& lambda);

/// B_eps = co(A u -A u [(1-eps) B_X + eps B_c0]) over the truncated c.
struct RenormBall {
    Rational epsilon;
    std::shared_ptr<const tree::Encoding> encoding;
    poly::Region region;

    const tree::Universe& universe() const { return encoding->universe(); }
};

RenormBall build_renorm_ball(const tree::Universe& u, const Rational& epsilon);

/// The weakly open subset W of B_eps:
///   e*_(0,i)(x) >= 2/n - 1 - rho/2  for i = 1..n,   lim(x) <= -1 + rho^2.
/// Parameter gate: 0 < rho < 1/(n(32n-21)), 2 rho < eps, 2 rho < gamma and
/// 18 < n (1-eps) gamma; violations name the failed inequality.
poly::Region build_W_theorem(const RenormBall& ball, int n, const Rational& rho,
                             const Rational& gamma);

/// A pair inside the slice {f >= sup(B_eps) - beta} at sup-norm distance
/// exactly 2: either a vertex child pair, or the box branch
///   (1-eps) x_j + eps (y0 + e_j)  vs  (1-eps) y_j + eps (y0 - e_j)
/// at the smallest coordinate outside the supports.
std::pair<seq::SeqElem, seq::SeqElem> renorm_slice_witness(const RenormBall& ball,
                                                           const seq::Functional& f,
                                                           const Rational& beta);

/// sup of f over A u -A, restricted to nodes of depth <= max_depth - 1
/// (under the margin rule this equals the sup over the whole family since
/// a max-depth vertex repeats its parent's value).
struct VertexSup {
    Rational value;
    tree::TreeNode node;
    int side;  // +1 for x_node, -1 for -x_node
};
VertexSup vertex_sup(const tree::Encoding& enc, const seq::Functional& f);

}  // namespace slicelab::construction
