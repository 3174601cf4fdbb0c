#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "slicelab/rational.hpp"

namespace slicelab::tree {

/// A node of the finite-sequence tree: a (possibly empty) sequence of
/// positive integers. The empty sequence is the root.
struct TreeNode {
    std::vector<int> entries;

    TreeNode() = default;
    explicit TreeNode(std::vector<int> e);

    int length() const { return static_cast<int>(entries.size()); }
    bool is_root() const { return entries.empty(); }

    TreeNode child(int j) const;
    TreeNode parent() const;

    auto operator<=>(const TreeNode&) const = default;

    /// "()" for the root, else dot-separated entries: "2.1.3".
    std::string str() const;
};

/// True iff `a` is an entrywise prefix of `b` (the tree order); the root
/// is below everything.
bool leq(const TreeNode& a, const TreeNode& b);

/// Product of p_i^{a_i} over the entries, primes in increasing order from 2.
/// The empty node maps to 1. Injective on finite sequences.
BigInt phi0(const TreeNode& node);

/// Finite truncation of the tree: all nodes with length <= max_depth and
/// every entry <= max_branch.
struct Universe {
    int max_depth = 1;
    int max_branch = 1;

    Universe(int depth, int branch);

    bool contains(const TreeNode& node) const;
    long node_count() const;
    /// All nodes, in a fixed deterministic enumeration order.
    std::vector<TreeNode> all_nodes() const;
};

/// Order-preserving bijection node -> {1..|universe|} obtained by ranking
/// the phi0 values. index_of(root) = 1, and the tree order and sibling
/// order are both preserved because phi0(a) divides phi0(b) when a <= b.
class Encoding {
  public:
    explicit Encoding(const Universe& u);

    const Universe& universe() const { return universe_; }
    int size() const { return static_cast<int>(nodes_.size()); }

    int index_of(const TreeNode& node) const;
    const TreeNode& node_of(int index) const;
    bool contains(const TreeNode& node) const { return index_.count(node) > 0; }

    /// Nodes in index order (position i-1 holds the node with index i).
    const std::vector<TreeNode>& nodes_by_index() const { return nodes_; }

    /// Two-column table "node<TAB>index", one row per node, in index order.
    std::string to_table() const;

  private:
    Universe universe_;
    std::vector<TreeNode> nodes_;
    std::map<TreeNode, int> index_;
};

/// Children node.j for j = 1..max_branch, or empty at the depth boundary.
/// Throws if the node is not in the universe.
std::vector<TreeNode> children(const TreeNode& node, const Universe& u);

}  // namespace slicelab::tree
