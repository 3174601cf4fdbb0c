#include <doctest.h>

#include "slicelab/construction.hpp"
#include "slicelab/rng.hpp"

using namespace slicelab;
using construction::KBody;
using construction::RenormBall;
using seq::Functional;
using seq::SeqElem;
using tree::TreeNode;

TEST_CASE("build_K") {
    KBody k = construction::build_K(tree::Universe(1, 2));
    CHECK(k.polytope.vertices.size() == 6);
    for (const SeqElem& v : k.polytope.vertices) CHECK(seq::sup_norm(v) == 1);
    // symmetric: the negation of every vertex is present
    for (const SeqElem& v : k.polytope.vertices) {
        bool found = false;
        for (const SeqElem& w : k.polytope.vertices)
            if (w == v.negate()) found = true;
        CHECK(found);
    }
    CHECK(poly::diameter_sup(k.region()).diameter == 2);
}

TEST_CASE("build_Wn gates") {
    KBody k = construction::build_K(tree::Universe(1, 5));
    CHECK_NOTHROW(construction::build_Wn(k, 5, make_rat(1, 1400)));
    CHECK_THROWS(construction::build_Wn(k, 5, make_rat(1, 100)));
    CHECK_THROWS(construction::build_Wn(k, 5, Rational(0)));
    // branch too small for n
    KBody small = construction::build_K(tree::Universe(1, 3));
    CHECK_THROWS(construction::build_Wn(small, 5, make_rat(1, 1400)));
}

TEST_CASE("witness x0") {
    KBody k = construction::build_K(tree::Universe(1, 5));
    SeqElem x1 = construction::witness_x0(*k.encoding, 1);
    CHECK(x1 == seq::make_x_alpha(TreeNode({1}), *k.encoding));

    SeqElem x2 = construction::witness_x0(*k.encoding, 2);
    for (int j = 1; j <= 2; ++j)
        CHECK(x2.coord(k.encoding->index_of(TreeNode({j}))) == 0);

    SeqElem x5 = construction::witness_x0(*k.encoding, 5);
    CHECK(x5.limit() == -1);

    construction::WnSpec wn = construction::build_Wn(k, 5, make_rat(1, 1400));
    CHECK(poly::membership(x5, wn.region));
}

TEST_CASE("margin rule") {
    tree::Encoding enc(tree::Universe(2, 2));
    // support at max depth violates the rule
    Functional deep(Rational(0), {{enc.index_of(TreeNode({1, 1})), Rational(1)}});
    CHECK_THROWS(construction::require_margin_rule(deep, enc));
    // exhausting the root's children violates the rule
    Functional wide(Rational(0), {{enc.index_of(TreeNode({1})), Rational(1)},
                                  {enc.index_of(TreeNode({2})), Rational(1)}});
    CHECK_THROWS(construction::require_margin_rule(wide, enc));
    Functional ok(make_rat(1, 2), {{enc.index_of(TreeNode({1})), Rational(1)}});
    CHECK_NOTHROW(construction::require_margin_rule(ok, enc));
}

TEST_CASE("slice child witness") {
    KBody k = construction::build_K(tree::Universe(2, 3));
    Functional e1 = Functional::coordinate(k.encoding->index_of(TreeNode({1})));
    auto [p, c] = construction::slice_child_witness(k, e1, make_rat(1, 2));
    // both ends attain the sup (x_(1) and -x_root tie at value 1)
    CHECK(e1.eval(p) == 1);
    CHECK(seq::distance(p, c) == 2);
    CHECK(e1.eval(p) == e1.eval(c));  // child avoids the support

    // the limit functional puts the slice on the -A side
    auto [lp_, lc_] = construction::slice_child_witness(k, Functional::limit(),
                                                        make_rat(1, 2));
    CHECK(Functional::limit().eval(lp_) == 1);
    CHECK(Functional::limit().eval(lc_) == 1);
    CHECK(seq::distance(lp_, lc_) == 2);

    // every returned pair sits inside the closed slice at distance 2
    rng::Lcg64 gen(41);
    for (int t = 0; t < 25; ++t) {
        Functional f = rng::margin_functional(*k.encoding, gen, 4);
        Rational lambda = make_rat(1, gen.range(2, 64));
        auto [a, b] = construction::slice_child_witness(k, f, lambda);
        poly::Region s = poly::slice(k.region(), f, lambda);
        CHECK(seq::distance(a, b) == 2);
        CHECK(poly::membership(a, s));
        CHECK(poly::membership(b, s));
    }
}

TEST_CASE("slice witness negation symmetry") {
    KBody k = construction::build_K(tree::Universe(3, 3));
    rng::Lcg64 gen(59);
    for (int t = 0; t < 40; ++t) {
        Functional f = rng::margin_functional(*k.encoding, gen, 5);
        auto [a, b] = construction::slice_child_witness(k, f, make_rat(1, 4));
        auto [na, nb] = construction::slice_child_witness(k, f.negate(), make_rat(1, 4));
        CHECK(na == a.negate());
        CHECK(nb == b.negate());
    }
}

TEST_CASE("renorm ball membership") {
    RenormBall ball =
        construction::build_renorm_ball(tree::Universe(2, 2), make_rat(1, 4));
    for (int i = 1; i <= ball.encoding->size(); ++i)
        CHECK(poly::membership(seq::make_x_alpha(ball.encoding->node_of(i),
                                                 *ball.encoding),
                               ball.region));
    // (1-eps) * ones comes from the outer ball with w = 0
    CHECK(poly::membership(SeqElem::constant(make_rat(3, 4)), ball.region));
    // the constant-one vector escapes for every eps > 0
    CHECK_FALSE(poly::membership(SeqElem::constant(Rational(1)), ball.region));
    // the ball stays inside the ambient unit ball
    auto dia = poly::diameter_sup(ball.region);
    for (const auto& [t, mm] : dia.coordinate_ranges) {
        (void)t;
        CHECK(mm.first >= -1);
        CHECK(mm.second <= 1);
    }
    CHECK_THROWS(construction::build_renorm_ball(tree::Universe(1, 1), Rational(1)));
}

TEST_CASE("W theorem region") {
    const Rational eps = make_rat(1, 4);
    RenormBall ball = construction::build_renorm_ball(tree::Universe(1, 25), eps);
    const int n = 25;
    const Rational rho(1, 2L * n * (32L * n - 21L));

    // gate violations name the failed inequality
    CHECK_THROWS_WITH_AS(
        construction::build_W_theorem(ball, n, make_rat(1, 4), Rational(1)),
        doctest::Contains("rho < 1/(n(32n-21))"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(construction::build_W_theorem(ball, n, rho, make_rat(1, 100)),
                         doctest::Contains("18 < n*(1-epsilon)*gamma"),
                         std::invalid_argument);
    RenormBall tight =
        construction::build_renorm_ball(tree::Universe(1, 25), make_rat(1, 100000));
    CHECK_THROWS_WITH_AS(construction::build_W_theorem(tight, n, rho, Rational(1)),
                         doctest::Contains("2*rho < epsilon"), std::invalid_argument);

    poly::Region w = construction::build_W_theorem(ball, n, rho, Rational(1));
    SeqElem x0 = construction::witness_x0(*ball.encoding, n);
    CHECK(poly::membership(x0, w));
    // strict margin of the witness inside the constraints
    CHECK(Rational(2 - n, n) > Rational(2, n) - 1 - rho / 2);
    CHECK(x0.limit() < Rational(-1) + rho * rho);
}

TEST_CASE("renorm slice witness") {
    RenormBall ball =
        construction::build_renorm_ball(tree::Universe(3, 3), make_rat(1, 4));
    Functional e1 = Functional::coordinate(1);
    auto [p1, p2] = construction::renorm_slice_witness(ball, e1, make_rat(1, 4));
    CHECK(seq::distance(p1, p2) == 2);
    CHECK(poly::membership(p1, ball.region));
    CHECK(poly::membership(p2, ball.region));

    // a functional spread across siblings drives the box branch
    tree::Encoding const& enc = *ball.encoding;
    Functional spread(make_rat(-1, 4),
                      {{enc.index_of(TreeNode({1})), make_rat(1, 4)},
                       {enc.index_of(TreeNode({2})), make_rat(1, 4)},
                       {enc.index_of(TreeNode({1, 1})), make_rat(-1, 4)}});
    construction::VertexSup vs = construction::vertex_sup(enc, spread);
    Rational box_sup = (1 - ball.epsilon) * rat_abs(spread.limit_coeff());
    for (const auto& [i, c] : spread.coeffs()) {
        (void)i;
        box_sup += rat_abs(c);
    }
    CHECK(box_sup > vs.value);  // box branch taken
    auto [q1, q2] = construction::renorm_slice_witness(ball, spread, make_rat(1, 16));
    CHECK(seq::distance(q1, q2) == 2);
    CHECK(poly::membership(q1, ball.region));
    CHECK(poly::membership(q2, ball.region));
    Rational sup = rat_max(vs.value, box_sup);
    CHECK(spread.eval(q1) >= sup - make_rat(1, 16));
    CHECK(spread.eval(q2) >= sup - make_rat(1, 16));
}
