#include <doctest.h>

#include "slicelab/rng.hpp"
#include "slicelab/seqspace.hpp"

using namespace slicelab;
using seq::Functional;
using seq::SeqElem;
using tree::TreeNode;

namespace {

SeqElem random_elem(rng::Lcg64& gen, int max_coord = 12) {
    std::map<int, Rational> dev;
    int nd = gen.range(0, 5);
    for (int d = 0; d < nd; ++d) dev[gen.range(1, max_coord)] = gen.small();
    return SeqElem(gen.small(), std::move(dev));
}

/// Random element of the unit ball (coordinates and limit in [-1,1]).
SeqElem random_ball_elem(rng::Lcg64& gen) {
    auto clamp_unit = [&](const Rational& v) {
        if (v > 1) return Rational(1);
        if (v < -1) return Rational(-1);
        return v;
    };
    std::map<int, Rational> dev;
    int nd = gen.range(0, 5);
    for (int d = 0; d < nd; ++d)
        dev[gen.range(1, 12)] = clamp_unit(gen.small());
    return SeqElem(clamp_unit(gen.small()), std::move(dev));
}

}  // namespace

TEST_CASE("coord and canonical form") {
    SeqElem x(Rational(-1), {{1, Rational(1)}});
    CHECK(x.coord(1) == 1);
    CHECK(x.coord(7) == -1);
    CHECK(SeqElem::constant(Rational(1)).coord(3) == 1);
    // deviations equal to the limit are dropped
    SeqElem y(Rational(2), {{4, Rational(2)}, {5, Rational(3)}});
    CHECK(y.deviations().size() == 1);
    // canonicalization is idempotent
    SeqElem z(y.limit(), y.deviations());
    CHECK(z == y);
}

TEST_CASE("sup norm") {
    tree::Encoding enc(tree::Universe(2, 3));
    for (int i = 1; i <= enc.size(); ++i) {
        CHECK(seq::sup_norm(seq::make_x_alpha(enc.node_of(i), enc)) == 1);
        CHECK(seq::sup_norm(seq::make_x_hat(enc.node_of(i), enc)) == 2);
    }
    CHECK(seq::sup_norm(SeqElem::zero()) == 0);
}

TEST_CASE("distances between tree vertices") {
    tree::Encoding enc(tree::Universe(2, 3));
    SeqElem xa = seq::make_x_alpha(TreeNode({1}), enc);
    SeqElem xb = seq::make_x_alpha(TreeNode({2}), enc);
    CHECK(seq::distance(xa, xb) == 2);  // incomparable nodes
    SeqElem xaj = seq::make_x_alpha(TreeNode({1, 2}), enc);
    CHECK(seq::distance(xaj, xa) == 2);  // child differs by 2 e_(a,j)
    CHECK(seq::distance(xa, xa) == 0);
    // x_(a,j) - x_a = 2 e_(a,j)
    SeqElem diff = xaj.sub(xa);
    CHECK(diff == SeqElem::basis(enc.index_of(TreeNode({1, 2}))).scale(Rational(2)));
}

TEST_CASE("convex combinations") {
    tree::Encoding enc(tree::Universe(1, 4));
    SeqElem xa = seq::make_x_alpha(TreeNode({2}), enc);
    CHECK(seq::convex_comb({Rational(1)}, {xa}) == xa);
    CHECK(seq::convex_comb({make_rat(1, 2), make_rat(1, 2)}, {xa, xa.negate()}) ==
          SeqElem::zero());

    const int n = 3;
    std::vector<Rational> w(n, Rational(1, n));
    std::vector<SeqElem> elems;
    for (int i = 1; i <= n; ++i)
        elems.push_back(seq::make_x_alpha(TreeNode({i}), enc));
    SeqElem x0 = seq::convex_comb(w, elems);
    for (int j = 1; j <= n; ++j)
        CHECK(x0.coord(enc.index_of(TreeNode({j}))) == Rational(2 - n, n));
    CHECK(x0.limit() == -1);

    CHECK_THROWS(seq::convex_comb({make_rat(1, 2)}, {xa}));
    CHECK_THROWS(seq::convex_comb({make_rat(3, 2), make_rat(-1, 2)}, {xa, xa}));
}

TEST_CASE("x_alpha structure") {
    tree::Encoding enc(tree::Universe(2, 2));
    SeqElem root = seq::make_x_alpha(TreeNode{}, enc);
    CHECK(root.limit() == -1);
    REQUIRE(root.deviations().size() == 1);
    CHECK(root.coord(1) == 1);

    SeqElem deep = seq::make_x_alpha(TreeNode({2, 1}), enc);
    CHECK(deep.deviations().size() == 3);  // |alpha| + 1 ancestors
    CHECK(deep.limit() == -1);

    // e*_(0,j)(x_(0,i)) = +1 iff i == j
    for (int i = 1; i <= 2; ++i) {
        SeqElem xi = seq::make_x_alpha(TreeNode({i}), enc);
        for (int j = 1; j <= 2; ++j) {
            Functional ej = Functional::coordinate(enc.index_of(TreeNode({j})));
            CHECK(ej.eval(xi) == (i == j ? 1 : -1));
        }
    }
    CHECK_THROWS(seq::make_x_alpha(TreeNode({5}), enc));
}

TEST_CASE("x_hat is x_alpha plus ones") {
    tree::Encoding enc(tree::Universe(2, 2));
    SeqElem ones = SeqElem::constant(Rational(1));
    for (int i = 1; i <= enc.size(); ++i) {
        const TreeNode& node = enc.node_of(i);
        SeqElem hat = seq::make_x_hat(node, enc);
        CHECK(hat == seq::make_x_alpha(node, enc).add(ones));
        CHECK(hat.limit() == 0);
    }
    SeqElem hat_root = seq::make_x_hat(TreeNode{}, enc);
    CHECK(hat_root.coord(1) == 2);
}

TEST_CASE("functional evaluation and dual norm") {
    Functional f(make_rat(1, 2), {{2, make_rat(-3, 4)}, {5, Rational(1)}});
    SeqElem x(Rational(2), {{2, Rational(4)}});
    // f(x) = 1/2*2 + (-3/4)*4 + 1*2
    CHECK(f.eval(x) == 0);
    CHECK(f.dual_norm() == make_rat(9, 4));

    rng::Lcg64 gen(99);
    for (int t = 0; t < 200; ++t) {
        SeqElem a = random_elem(gen), b = random_elem(gen);
        Rational ca = gen.small(), cb = gen.small();
        Functional g(gen.small(), {{gen.range(1, 12), gen.small()},
                                   {gen.range(1, 12), gen.small()}});
        CHECK(g.eval(a.scale(ca).add(b.scale(cb))) ==
              ca * g.eval(a) + cb * g.eval(b));
    }
}

TEST_CASE("lim functional on the A side") {
    tree::Encoding enc(tree::Universe(2, 3));
    rng::Lcg64 gen(5);
    Functional lim = Functional::limit();
    for (int t = 0; t < 50; ++t) {
        int count = gen.range(1, 5);
        std::vector<Rational> w;
        std::vector<SeqElem> elems;
        Rational left = 1;
        for (int i = 0; i < count; ++i) {
            Rational wi = i + 1 == count ? left : left / gen.range(2, 4);
            left -= wi;
            w.push_back(wi);
            elems.push_back(
                seq::make_x_alpha(enc.node_of(gen.range(1, enc.size())), enc));
        }
        SeqElem mix = seq::convex_comb(w, elems);
        CHECK(lim.eval(mix) == -1);
        CHECK(lim.eval(mix.negate()) == 1);
    }
}

TEST_CASE("isomorphism T between c and c0") {
    CHECK(seq::c_to_c0_iso(SeqElem::constant(Rational(1))) ==
          SeqElem(Rational(0), {{1, make_rat(1, 2)}}));
    CHECK(seq::c_to_c0_iso(SeqElem::zero()) == SeqElem::zero());

    rng::Lcg64 gen(17);
    for (int t = 0; t < 1000; ++t) {
        SeqElem x = random_elem(gen);
        SeqElem tx = seq::c_to_c0_iso(x);
        CHECK(tx.limit() == 0);
        CHECK(seq::sup_norm(tx) <= seq::sup_norm(x));       // ||T|| = 1
        CHECK(seq::c0_to_c_iso_inverse(tx) == x);           // exact inverse
        CHECK(seq::sup_norm(x) <= 4 * seq::sup_norm(tx));   // ||T^-1|| = 4
    }
    // norm witnesses: T attains 1, T^-1 attains 4
    SeqElem spike(Rational(-1), {{5, Rational(1)}});
    CHECK(seq::sup_norm(seq::c_to_c0_iso(spike)) == seq::sup_norm(spike));
    SeqElem y(Rational(0), {{1, make_rat(1, 2)}, {6, make_rat(1, 2)}});
    CHECK(seq::sup_norm(seq::c0_to_c_iso_inverse(y)) == 4 * seq::sup_norm(y));
}

TEST_CASE("perturbation pairs") {
    auto [up, down] = seq::perturbation_pair(SeqElem::zero(), 3);
    CHECK(up == SeqElem::basis(3));
    CHECK(down == SeqElem::basis(3).negate());
    CHECK(seq::distance(up, down) == 2);

    tree::Encoding enc(tree::Universe(2, 2));
    SeqElem xa = seq::make_x_alpha(TreeNode({1}), enc);
    int i = enc.index_of(TreeNode({1}));
    auto [xu, xd] = seq::perturbation_pair(xa, i);
    CHECK(xu == xa);  // coordinate already at +1
    CHECK(xd.coord(i) == -1);
    CHECK(seq::distance(xu, xd) == 2);

    rng::Lcg64 gen(23);
    for (int t = 0; t < 300; ++t) {
        SeqElem x = random_ball_elem(gen);
        int idx = gen.range(1, 14);
        auto [a, b] = seq::perturbation_pair(x, idx);
        CHECK(seq::sup_norm(a) <= 1);
        CHECK(seq::sup_norm(b) <= 1);
        CHECK(seq::distance(a, b) == 2);
    }

    CHECK_THROWS(seq::perturbation_pair(SeqElem::constant(Rational(2)), 1));
}
