#include "slicelab/seqspace.hpp"

#include <stdexcept>

namespace slicelab::seq {

SeqElem::SeqElem(Rational limit, std::map<int, Rational> deviations)
    : limit_(std::move(limit)), dev_(std::move(deviations)) {
    for (auto it = dev_.begin(); it != dev_.end();) {
        if (it->first < 1) throw std::invalid_argument("coordinate index must be >= 1");
        if (it->second == limit_)
            it = dev_.erase(it);
        else
            ++it;
    }
}

SeqElem SeqElem::basis(int i) {
    return SeqElem(Rational(0), {{i, Rational(1)}});
}

const Rational& SeqElem::coord(int i) const {
    if (i < 1) throw std::invalid_argument("coordinate index must be >= 1");
    auto it = dev_.find(i);
    return it == dev_.end() ? limit_ : it->second;
}

SeqElem SeqElem::negate() const {
    std::map<int, Rational> d;
    for (const auto& [i, v] : dev_) d.emplace(i, -v);
    return SeqElem(-limit_, std::move(d));
}

SeqElem SeqElem::add(const SeqElem& other) const {
    std::map<int, Rational> d = dev_;
    for (auto& [i, v] : d) v += other.coord(i);
    for (const auto& [i, v] : other.dev_)
        if (!dev_.count(i)) d.emplace(i, limit_ + v);
    return SeqElem(limit_ + other.limit_, std::move(d));
}

SeqElem SeqElem::sub(const SeqElem& other) const { return add(other.negate()); }

SeqElem SeqElem::scale(const Rational& factor) const {
    std::map<int, Rational> d;
    for (const auto& [i, v] : dev_) d.emplace(i, v * factor);
    return SeqElem(limit_ * factor, std::move(d));
}

SeqElem SeqElem::with_coord(int i, const Rational& value) const {
    std::map<int, Rational> d = dev_;
    d[i] = value;
    return SeqElem(limit_, std::move(d));
}

Rational sup_norm(const SeqElem& x) {
    Rational best = rat_abs(x.limit());
    for (const auto& [i, v] : x.deviations()) {
        (void)i;
        best = rat_max(best, rat_abs(v));
    }
    return best;
}

Rational distance(const SeqElem& x, const SeqElem& y) { return sup_norm(x.sub(y)); }

SeqElem convex_comb(const std::vector<Rational>& weights,
                    const std::vector<SeqElem>& elems) {
    if (weights.empty() || weights.size() != elems.size())
        throw std::invalid_argument("convex_comb needs equal nonempty lists");
    Rational total = 0;
    for (const Rational& w : weights) {
        if (w < 0) throw std::invalid_argument("convex_comb: negative weight");
        total += w;
    }
    if (total != 1) throw std::invalid_argument("convex_comb: weights must sum to 1");
    SeqElem acc = SeqElem::zero();
    for (size_t k = 0; k < weights.size(); ++k)
        acc = acc.add(elems[k].scale(weights[k]));
    return acc;
}

Functional::Functional(Rational limit_coeff, std::map<int, Rational> coeffs)
    : limit_coeff_(std::move(limit_coeff)), coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->first < 1) throw std::invalid_argument("coordinate index must be >= 1");
        if (it->second == 0)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

Functional Functional::coordinate(int i) {
    return Functional(Rational(0), {{i, Rational(1)}});
}

Functional Functional::limit() { return Functional(Rational(1), {}); }

Rational Functional::eval(const SeqElem& x) const {
    Rational acc = limit_coeff_ * x.limit();
    for (const auto& [i, c] : coeffs_) acc += c * x.coord(i);
    return acc;
}

Rational Functional::dual_norm() const {
    Rational acc = rat_abs(limit_coeff_);
    for (const auto& [i, c] : coeffs_) {
        (void)i;
        acc += rat_abs(c);
    }
    return acc;
}

Functional Functional::negate() const { return scale(Rational(-1)); }

Functional Functional::scale(const Rational& factor) const {
    std::map<int, Rational> c;
    for (const auto& [i, v] : coeffs_) c.emplace(i, v * factor);
    return Functional(limit_coeff_ * factor, std::move(c));
}

bool Functional::is_zero() const { return limit_coeff_ == 0 && coeffs_.empty(); }

SeqElem make_x_alpha(const tree::TreeNode& node, const tree::Encoding& enc) {
    if (!enc.contains(node))
        throw std::invalid_argument("node " + node.str() + " not in universe");
    std::map<int, Rational> dev;
    tree::TreeNode ancestor;  // root
    dev.emplace(enc.index_of(ancestor), Rational(1));
    for (int v : node.entries) {
        ancestor = ancestor.child(v);
        dev.emplace(enc.index_of(ancestor), Rational(1));
    }
    return SeqElem(Rational(-1), std::move(dev));
}

SeqElem make_x_hat(const tree::TreeNode& node, const tree::Encoding& enc) {
    return make_x_alpha(node, enc).add(SeqElem::constant(Rational(1)));
}

SeqElem c_to_c0_iso(const SeqElem& x) {
    const Rational half(1, 2);
    std::map<int, Rational> dev;
    Rational first = half * x.limit();
    if (first != 0) dev.emplace(1, first);
    for (const auto& [i, v] : x.deviations()) {
        Rational val = half * (v - x.limit());
        if (val != 0) dev.emplace(i + 1, val);
    }
    return SeqElem(Rational(0), std::move(dev));
}

SeqElem c0_to_c_iso_inverse(const SeqElem& y) {
    Rational limit = 2 * y.coord(1);
    std::map<int, Rational> dev;
    for (const auto& [i, v] : y.deviations()) {
        if (i == 1) continue;
        dev.emplace(i - 1, 2 * v + limit);
    }
    return SeqElem(std::move(limit), std::move(dev));
}

std::pair<SeqElem, SeqElem> perturbation_pair(const SeqElem& x, int i) {
    if (sup_norm(x) > 1)
        throw std::invalid_argument("perturbation_pair requires sup_norm(x) <= 1");
    const Rational a = x.coord(i);
    SeqElem up = x.with_coord(i, Rational(1));     // x + (1-a) e_i
    SeqElem down = x.with_coord(i, Rational(-1));  // x - (1+a) e_i
    return {std::move(up), std::move(down)};
}

}  // namespace slicelab::seq
