#pragma once

#include <map>
#include <utility>
#include <vector>

#include "slicelab/rational.hpp"
#include "slicelab/tree.hpp"

namespace slicelab::seq {

/// An element of c (convergent sequences, sup norm), stored exactly as the
/// limit value plus the finitely many coordinates that deviate from it.
/// Canonical form: no stored deviation equals the limit.
class SeqElem {
  public:
    SeqElem() = default;
    SeqElem(Rational limit, std::map<int, Rational> deviations);

    static SeqElem constant(const Rational& value) { return SeqElem(value, {}); }
    static SeqElem zero() { return SeqElem(Rational(0), {}); }
    /// Unit basis vector e_i of c0 (limit 0).
    static SeqElem basis(int i);

    const Rational& limit() const { return limit_; }
    const std::map<int, Rational>& deviations() const { return dev_; }

    /// Value at coordinate i (>= 1): the stored deviation or the limit.
    const Rational& coord(int i) const;

    SeqElem negate() const;
    SeqElem add(const SeqElem& other) const;
    SeqElem sub(const SeqElem& other) const;
    SeqElem scale(const Rational& factor) const;
    /// Sets coordinate i to `value` (re-canonicalizing).
    SeqElem with_coord(int i, const Rational& value) const;

    bool operator==(const SeqElem&) const = default;

  private:
    Rational limit_ = 0;
    std::map<int, Rational> dev_;
};

Rational sup_norm(const SeqElem& x);
Rational distance(const SeqElem& x, const SeqElem& y);

/// Exact convex combination. Weights must be nonnegative and sum to 1.
SeqElem convex_comb(const std::vector<Rational>& weights,
                    const std::vector<SeqElem>& elems);

/// A functional on c: f(x) = limit_coeff * lim(x) + sum coeffs[i] * x(i).
class Functional {
  public:
    Functional() = default;
    Functional(Rational limit_coeff, std::map<int, Rational> coeffs);

    /// Coordinate functional e*_i.
    static Functional coordinate(int i);
    /// The limit functional lim_n.
    static Functional limit();

    const Rational& limit_coeff() const { return limit_coeff_; }
    const std::map<int, Rational>& coeffs() const { return coeffs_; }

    Rational eval(const SeqElem& x) const;
    /// |limit_coeff| + sum |coeffs[i]|  (c* = l1 identification; used to
    /// normalize experiment functionals, never inside verified claims).
    Rational dual_norm() const;

    Functional negate() const;
    Functional scale(const Rational& factor) const;
    bool is_zero() const;

    bool operator==(const Functional&) const = default;

  private:
    Rational limit_coeff_ = 0;
    std::map<int, Rational> coeffs_;
};

/// The tree vertex x_alpha: value +1 on the coordinates of the ancestor
/// chain of `node` (including the root and node itself), -1 elsewhere.
SeqElem make_x_alpha(const tree::TreeNode& node, const tree::Encoding& enc);

/// x_alpha + 1: value 2 on the ancestor chain, 0 elsewhere.
SeqElem make_x_hat(const tree::TreeNode& node, const tree::Encoding& enc);

/// The isomorphism T : c -> c0.  T(x)(1) = lim(x)/2 and, under the fixed
/// shift convention, T(x)(n) = (x(n-1) - lim(x))/2 for n > 1.
SeqElem c_to_c0_iso(const SeqElem& x);
/// Exact inverse of c_to_c0_iso.
SeqElem c0_to_c_iso_inverse(const SeqElem& y);

/// For x with sup_norm(x) <= 1 and a = x(i), returns
/// (x + (1-a) e_i, x - (1+a) e_i): both stay in the unit ball and their
/// distance is exactly 2.
std::pair<SeqElem, SeqElem> perturbation_pair(const SeqElem& x, int i);

}  // namespace slicelab::seq
