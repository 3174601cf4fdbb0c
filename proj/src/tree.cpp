#include "slicelab/tree.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace slicelab::tree {

TreeNode::TreeNode(std::vector<int> e) : entries(std::move(e)) {
    for (int v : entries)
        if (v < 1) throw std::invalid_argument("tree node entries must be >= 1");
}

TreeNode TreeNode::child(int j) const {
    if (j < 1) throw std::invalid_argument("child index must be >= 1");
    TreeNode c(*this);
    c.entries.push_back(j);
    return c;
}

TreeNode TreeNode::parent() const {
    if (is_root()) throw std::logic_error("root has no parent");
    TreeNode p(*this);
    p.entries.pop_back();
    return p;
}

std::string TreeNode::str() const {
    if (entries.empty()) return "()";
    std::ostringstream os;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) os << '.';
        os << entries[i];
    }
    return os.str();
}

bool leq(const TreeNode& a, const TreeNode& b) {
    if (a.length() > b.length()) return false;
    return std::equal(a.entries.begin(), a.entries.end(), b.entries.begin());
}

namespace {

std::vector<long> primes_upto(int count) {
    std::vector<long> out;
    long candidate = 2;
    while (static_cast<int>(out.size()) < count) {
        bool prime = true;
        for (long p : out) {
            if (p * p > candidate) break;
            if (candidate % p == 0) { prime = false; break; }
        }
        if (prime) out.push_back(candidate);
        ++candidate;
    }
    return out;
}

}  // namespace

BigInt phi0(const TreeNode& node) {
    static const std::vector<long> primes = primes_upto(64);
    if (node.length() > static_cast<int>(primes.size()))
        throw std::invalid_argument("node too deep for prime table");
    BigInt result = 1;
    for (int i = 0; i < node.length(); ++i) {
        BigInt pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(primes[i]),
                      static_cast<unsigned long>(node.entries[i]));
        result *= pw;
    }
    return result;
}

Universe::Universe(int depth, int branch) : max_depth(depth), max_branch(branch) {
    if (depth < 1 || branch < 1)
        throw std::invalid_argument("universe needs depth >= 1 and branch >= 1");
}

bool Universe::contains(const TreeNode& node) const {
    if (node.length() > max_depth) return false;
    for (int v : node.entries)
        if (v > max_branch) return false;
    return true;
}

long Universe::node_count() const {
    long total = 0;
    long level = 1;
    for (int d = 0; d <= max_depth; ++d) {
        total += level;
        level *= max_branch;
    }
    return total;
}

std::vector<TreeNode> Universe::all_nodes() const {
    std::vector<TreeNode> out;
    out.reserve(static_cast<size_t>(node_count()));
    std::vector<TreeNode> frontier{TreeNode{}};
    out.push_back(TreeNode{});
    for (int d = 1; d <= max_depth; ++d) {
        std::vector<TreeNode> next;
        next.reserve(frontier.size() * static_cast<size_t>(max_branch));
        for (const TreeNode& n : frontier)
            for (int j = 1; j <= max_branch; ++j) {
                next.push_back(n.child(j));
                out.push_back(next.back());
            }
        frontier = std::move(next);
    }
    return out;
}

Encoding::Encoding(const Universe& u) : universe_(u) {
    std::vector<TreeNode> nodes = u.all_nodes();
    std::vector<std::pair<BigInt, size_t>> keyed;
    keyed.reserve(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i)
        keyed.emplace_back(phi0(nodes[i]), i);
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    nodes_.reserve(nodes.size());
    for (const auto& [key, i] : keyed) {
        (void)key;
        nodes_.push_back(nodes[i]);
        index_[nodes[i]] = static_cast<int>(nodes_.size());
    }
}

int Encoding::index_of(const TreeNode& node) const {
    auto it = index_.find(node);
    if (it == index_.end())
        throw std::invalid_argument("node " + node.str() + " not in universe");
    return it->second;
}

const TreeNode& Encoding::node_of(int index) const {
    if (index < 1 || index > size())
        throw std::invalid_argument("coordinate index out of range");
    return nodes_[static_cast<size_t>(index - 1)];
}

std::string Encoding::to_table() const {
    std::ostringstream os;
    for (int i = 1; i <= size(); ++i)
        os << node_of(i).str() << '\t' << i << '\n';
    return os.str();
}

std::vector<TreeNode> children(const TreeNode& node, const Universe& u) {
    if (!u.contains(node))
        throw std::invalid_argument("node " + node.str() + " not in universe");
    std::vector<TreeNode> out;
    if (node.length() >= u.max_depth) return out;
    out.reserve(static_cast<size_t>(u.max_branch));
    for (int j = 1; j <= u.max_branch; ++j) out.push_back(node.child(j));
    return out;
}

}  // namespace slicelab::tree
