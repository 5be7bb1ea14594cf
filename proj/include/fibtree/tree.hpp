#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"

namespace fibtree {

/// Default guard on tree height: f(32) - 1 = 2,178,308 nodes.
inline constexpr Index default_height_cap = 30;

class height_limit_exceeded : public std::length_error {
public:
    height_limit_exceeded(Index h, Index cap)
        : std::length_error("tree height " + std::to_string(h) + " exceeds cap " +
                            std::to_string(cap)),
          height(h),
          cap(cap) {}

    Index height;
    Index cap;
};

using NodeIndex = std::uint32_t;

struct Node {
    std::optional<NodeIndex> left;
    std::optional<NodeIndex> right;
    Index depth = 0;

    friend bool operator==(const Node&, const Node&) = default;
};

/// Rooted binary tree stored as a flat arena.
///
/// Trees produced by build() number their nodes in left-first pre-order,
/// so the root is node 0 and two structurally identical trees have equal
/// node vectors.
class FibTree {
public:
    /// Adopts an arbitrary arena, recomputing depths and height from `root`.
    /// Throws std::invalid_argument if a child index is out of range or a
    /// node is reachable twice.
    static FibTree from_nodes(std::vector<Node> nodes, NodeIndex root) {
        if (root >= nodes.size()) throw std::invalid_argument("root index out of range");
        std::vector<bool> seen(nodes.size(), false);
        std::vector<NodeIndex> stack{root};
        nodes[root].depth = 0;
        Index height = 0;
        while (!stack.empty()) {
            const NodeIndex v = stack.back();
            stack.pop_back();
            if (seen[v]) throw std::invalid_argument("node reachable more than once");
            seen[v] = true;
            height = std::max(height, nodes[v].depth);
            for (const auto& child : {nodes[v].left, nodes[v].right}) {
                if (!child) continue;
                if (*child >= nodes.size()) throw std::invalid_argument("child index out of range");
                nodes[*child].depth = nodes[v].depth + 1;
                stack.push_back(*child);
            }
        }
        return FibTree(std::move(nodes), root, height);
    }

    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(NodeIndex i) const { return nodes_.at(i); }
    NodeIndex root() const { return root_; }
    Index height() const { return height_; }

    /// Copy of the subtree rooted at `v`, renumbered in left-first pre-order
    /// with depths relative to `v`.
    FibTree subtree(NodeIndex v) const {
        if (v >= nodes_.size()) throw std::out_of_range("subtree root out of range");
        return from_preorder(nodes_, v);
    }

    friend bool operator==(const FibTree& a, const FibTree& b) {
        return a.root_ == b.root_ && a.nodes_ == b.nodes_;
    }

private:
    friend FibTree build(Index h, Index height_cap);

    FibTree(std::vector<Node> nodes, NodeIndex root, Index height)
        : nodes_(std::move(nodes)), root_(root), height_(height) {}

    static FibTree from_preorder(const std::vector<Node>& src, NodeIndex v) {
        std::vector<Node> out;
        Index height = 0;
        struct Frame {
            NodeIndex src;
            std::optional<NodeIndex> parent;
            bool is_left;
        };
        std::vector<Frame> stack{{v, std::nullopt, false}};
        while (!stack.empty()) {
            const Frame f = stack.back();
            stack.pop_back();
            const auto idx = static_cast<NodeIndex>(out.size());
            const Index depth = src[f.src].depth - src[v].depth;
            height = std::max(height, depth);
            out.push_back(Node{std::nullopt, std::nullopt, depth});
            if (f.parent) (f.is_left ? out[*f.parent].left : out[*f.parent].right) = idx;
            if (src[f.src].right) stack.push_back({*src[f.src].right, idx, false});
            if (src[f.src].left) stack.push_back({*src[f.src].left, idx, true});
        }
        return FibTree(std::move(out), 0, height);
    }

    std::vector<Node> nodes_;
    NodeIndex root_ = 0;
    Index height_ = 0;
};

/// Builds the Fibonacci tree of height h: K_1 at 0, K_2 at 1 (child on the
/// left), otherwise a root over a fresh tree of height h-1 (left) and one
/// of height h-2 (right).
inline FibTree build(Index h, Index height_cap = default_height_cap) {
    if (h > height_cap) throw height_limit_exceeded(h, height_cap);

    struct Pending {
        Index height;
        std::optional<NodeIndex> parent;
        bool is_left;
    };

    std::vector<Node> nodes;
    std::vector<Pending> work{{h, std::nullopt, false}};
    while (!work.empty()) {
        const Pending p = work.back();
        work.pop_back();
        const auto idx = static_cast<NodeIndex>(nodes.size());
        const Index depth = p.parent ? nodes[*p.parent].depth + 1 : 0;
        nodes.push_back(Node{std::nullopt, std::nullopt, depth});
        if (p.parent) (p.is_left ? nodes[*p.parent].left : nodes[*p.parent].right) = idx;

        if (p.height == 1) {
            work.push_back({0, idx, true});
        } else if (p.height >= 2) {
            work.push_back({p.height - 2, idx, false});
            work.push_back({p.height - 1, idx, true});
        }
    }
    return FibTree(std::move(nodes), 0, h);
}

/// Node count by traversal from the root.
inline Natural vertex_count(const FibTree& t) {
    std::uint64_t count = 0;
    std::vector<NodeIndex> stack{t.root()};
    while (!stack.empty()) {
        const Node& n = t.node(stack.back());
        stack.pop_back();
        ++count;
        if (n.left) stack.push_back(*n.left);
        if (n.right) stack.push_back(*n.right);
    }
    return Natural{count};
}

struct LevelProfile {
    Index height = 0;
    std::vector<Natural> counts;  // counts[k] = vertices at depth k

    friend bool operator==(const LevelProfile&, const LevelProfile&) = default;
};

/// Per-depth vertex counts, measured breadth-first. Depths come from the
/// traversal itself, not from the stored node metadata.
inline LevelProfile level_profile(const FibTree& t) {
    LevelProfile out;
    std::vector<NodeIndex> frontier{t.root()};
    std::vector<NodeIndex> next;
    while (!frontier.empty()) {
        out.counts.emplace_back(static_cast<std::uint64_t>(frontier.size()));
        next.clear();
        for (NodeIndex v : frontier) {
            const Node& n = t.node(v);
            if (n.left) next.push_back(*n.left);
            if (n.right) next.push_back(*n.right);
        }
        frontier.swap(next);
    }
    out.height = out.counts.size() - 1;
    return out;
}

/// True iff every subtree is itself a Fibonacci tree: a leaf at height 0,
/// exactly one (leaf) child at height 1, and two children whose heights
/// differ by exactly one at height >= 2. Mirror images are accepted.
inline bool check_balance(const FibTree& t) {
    const auto& nodes = t.nodes();
    std::vector<Index> sub_height(nodes.size(), 0);

    // Post-order via reversed pre-order.
    std::vector<NodeIndex> order;
    std::vector<NodeIndex> stack{t.root()};
    while (!stack.empty()) {
        const NodeIndex v = stack.back();
        stack.pop_back();
        order.push_back(v);
        if (nodes[v].left) stack.push_back(*nodes[v].left);
        if (nodes[v].right) stack.push_back(*nodes[v].right);
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Node& n = nodes[*it];
        const int children = int(n.left.has_value()) + int(n.right.has_value());
        if (children == 0) {
            sub_height[*it] = 0;
        } else if (children == 1) {
            const NodeIndex c = n.left ? *n.left : *n.right;
            if (sub_height[c] != 0) return false;
            sub_height[*it] = 1;
        } else {
            const Index a = sub_height[*n.left];
            const Index b = sub_height[*n.right];
            if (std::max(a, b) - std::min(a, b) != 1) return false;
            sub_height[*it] = std::max(a, b) + 1;
        }
    }
    return true;
}

/// Graphviz digraph: nodes "v<index>" labelled by depth, one edge per
/// parent-child link.
inline std::string to_dot(const FibTree& t) {
    std::ostringstream os;
    os << "digraph F" << t.height() << " {\n";
    const auto& nodes = t.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        os << "  v" << i << " [label=\"" << nodes[i].depth << "\"];\n";
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].left) os << "  v" << i << " -> v" << *nodes[i].left << ";\n";
        if (nodes[i].right) os << "  v" << i << " -> v" << *nodes[i].right << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace fibtree
