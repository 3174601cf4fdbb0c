#include "slicelab/rng.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace slicelab::rng {

seq::Functional margin_functional(const tree::Encoding& enc, Lcg64& gen,
                                  int support_size, bool with_limit) {
    const tree::Universe& u = enc.universe();
    std::vector<int> eligible;
    for (int i = 1; i <= enc.size(); ++i)
        if (enc.node_of(i).length() <= u.max_depth - 1) eligible.push_back(i);
    if (eligible.empty()) throw std::logic_error("no eligible support nodes");

    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::set<int> support;
        std::map<tree::TreeNode, int> per_parent;
        int misses = 0;
        while (static_cast<int>(support.size()) < support_size && misses < 200) {
            int idx = eligible[static_cast<size_t>(gen.below(eligible.size()))];
            if (support.count(idx)) {
                ++misses;
                continue;
            }
            const tree::TreeNode& node = enc.node_of(idx);
            if (!node.is_root()) {
                tree::TreeNode parent = node.parent();
                if (per_parent[parent] + 1 >= u.max_branch) {
                    ++misses;  // would exhaust this parent's children
                    continue;
                }
                ++per_parent[parent];
            }
            support.insert(idx);
        }
        if (support.empty()) continue;

        std::map<int, Rational> coeffs;
        for (int idx : support) coeffs[idx] = gen.small_nonzero();
        Rational lim = with_limit ? gen.small() : Rational(0);
        seq::Functional f(std::move(lim), std::move(coeffs));
        if (f.is_zero()) continue;
        Rational norm = f.dual_norm();
        return f.scale(1 / norm);
    }
    throw std::logic_error("functional generation failed");
}

}  // namespace slicelab::rng
