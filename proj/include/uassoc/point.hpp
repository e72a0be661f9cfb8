#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uassoc/cube.hpp"
#include "uassoc/numeric.hpp"
#include "uassoc/p_operad.hpp"
#include "uassoc/tree.hpp"
#include "uassoc/tree_ops.hpp"

namespace uassoc {

/// A point of the cube H_T: a binary tree with black corks only, together
/// with one coordinate per inner edge in canonical edge order.
struct LabeledPoint {
    Tree tree = Tree::leaf();
    std::vector<Rational> labels;

    bool operator==(const LabeledPoint&) const = default;
};

/// Canonical representative of a ∼-class: a fully rewritten tree whose
/// labels all lie in (0,1].
struct NormalPoint {
    Tree tree = Tree::leaf();
    std::vector<Rational> labels;

    bool operator==(const NormalPoint&) const = default;
};

inline void validate_point(const LabeledPoint& p) {
    if (!is_binary(p.tree))
        throw std::invalid_argument("point: tree must be binary");
    if (has_white_cork(p.tree))
        throw std::invalid_argument("point: white corks are not allowed");
    if (static_cast<int>(p.labels.size()) != inner_edge_count(p.tree))
        throw std::invalid_argument("point: label/edge count mismatch");
    for (const Rational& x : p.labels)
        if (x < 0 || x > 1) throw std::invalid_argument("point: label outside [0,1]");
}

namespace detail {

// Mutable tree with one label per edge to a non-leaf child; the root edge is
// implicit and unlabeled. Labels sit in canonical inner-edge order under the
// usual walk.
struct LChild;

struct LNode {
    NodeKind kind = NodeKind::Leaf;
    std::vector<LChild> children;
};

struct LChild {
    LNode node;
    std::optional<Rational> label;  // present iff node is not a leaf
};

inline LNode annotate(const Tree& t, const std::vector<Rational>& labels, std::size_t& next) {
    LNode n;
    n.kind = t.kind();
    for (const Tree& c : t.children()) {
        std::optional<Rational> label;
        if (!c.is_leaf()) label = labels.at(next++);
        LNode sub = annotate(c, labels, next);
        n.children.push_back(LChild{std::move(sub), std::move(label)});
    }
    return n;
}

inline LNode annotate(const LabeledPoint& p) {
    std::size_t next = 0;
    LNode root = annotate(p.tree, p.labels, next);
    if (next != p.labels.size())
        throw std::invalid_argument("point: label/edge count mismatch");
    return root;
}

inline void read_off(const LNode& n, std::vector<Tree>& stack, std::vector<Rational>& labels) {
    if (n.kind != NodeKind::Internal) {
        switch (n.kind) {
            case NodeKind::Leaf: stack.push_back(Tree::leaf()); break;
            case NodeKind::BlackCork: stack.push_back(Tree::black_cork()); break;
            default: stack.push_back(Tree::white_cork()); break;
        }
        return;
    }
    std::vector<Tree> ch;
    for (const auto& c : n.children) {
        if (c.label) labels.push_back(*c.label);
        read_off(c.node, stack, labels);
        ch.push_back(std::move(stack.back()));
        stack.pop_back();
    }
    stack.push_back(Tree::internal(std::move(ch)));
}

inline void collect_zero_edges(const LNode& n, Path& prefix, std::vector<Path>& out) {
    for (std::size_t k = 0; k < n.children.size(); ++k) {
        const auto& c = n.children[k];
        prefix.push_back(k);
        if (c.label && *c.label == 0) out.push_back(prefix);
        collect_zero_edges(c.node, prefix, out);
        prefix.pop_back();
    }
}

inline LNode* node_at(LNode& root, const Path& path, std::size_t depth) {
    LNode* n = &root;
    for (std::size_t j = 0; j < depth; ++j) n = &n->children[path[j]].node;
    return n;
}

// Removes the child entry at `path`; if its parent is left with a single
// child, joins the parent's two remaining incident edges: max of labels when
// both are inner, dropping the inner label when the partner is the root or a
// leaf edge, and collapsing to the trivial tree when both are.
inline void erase_child_and_repair(LNode& root, const Path& path) {
    LNode* v = node_at(root, path, path.size() - 1);
    v->children.erase(v->children.begin() + static_cast<long>(path.back()));
    if (v->children.size() >= 2) return;
    if (v->children.empty())
        throw std::logic_error("rewrite: parent lost all children");
    LChild rem = std::move(v->children.front());
    if (path.size() == 1) {
        // v is the top node; the root edge absorbs the remaining edge
        root = std::move(rem.node);
        return;
    }
    LNode* parent = node_at(root, path, path.size() - 2);
    auto& entry = parent->children[path[path.size() - 2]];
    if (rem.node.kind == NodeKind::Leaf) {
        entry = LChild{LNode{}, std::nullopt};  // merged edge is a leaf edge
    } else {
        entry.node = std::move(rem.node);
        entry.label = std::max(*entry.label, *rem.label);
    }
}

// One rewriting step at a zero-labeled inner edge.
inline void apply_zero_step(LNode& root, const Path& path) {
    LNode* v = node_at(root, path, path.size() - 1);
    const std::size_t k = path.back();
    LChild& e = v->children[k];
    if (e.node.kind == NodeKind::Internal) {
        // contraction: splice the upper vertex's children into v
        std::vector<LChild> sub = std::move(e.node.children);
        v->children.erase(v->children.begin() + static_cast<long>(k));
        v->children.insert(v->children.begin() + static_cast<long>(k),
                           std::make_move_iterator(sub.begin()),
                           std::make_move_iterator(sub.end()));
    } else {
        // cork deletion with repair
        erase_child_and_repair(root, path);
    }
}

inline NormalPoint finish(const LNode& root) {
    NormalPoint out;
    std::vector<Tree> stack;
    read_off(root, stack, out.labels);
    out.tree = std::move(stack.back());
    return out;
}

}  // namespace detail

/// Schedule hook for the rewriting loop: receives the number of zero-labeled
/// inner edges and picks which one to process. The canonical schedule always
/// picks the lowest canonical index.
using SchedulePicker = std::function<std::size_t(std::size_t)>;

namespace detail {

inline NormalPoint rewrite_to_normal(LNode root, const SchedulePicker& pick) {
    for (;;) {
        std::vector<Path> zeros;
        Path prefix;
        collect_zero_edges(root, prefix, zeros);
        if (zeros.empty()) break;
        const std::size_t choice = pick ? pick(zeros.size()) : 0;
        if (choice >= zeros.size())
            throw std::out_of_range("normal_form: schedule picked outside range");
        apply_zero_step(root, zeros[choice]);
    }
    return finish(root);
}

}  // namespace detail

inline NormalPoint normal_form(const LabeledPoint& p, const SchedulePicker& pick) {
    validate_point(p);
    return detail::rewrite_to_normal(detail::annotate(p), pick);
}

inline NormalPoint normal_form(const LabeledPoint& p) { return normal_form(p, nullptr); }

/// Re-normalizing a normal point is the identity; the tree here may already
/// be non-binary.
inline NormalPoint normal_form(const NormalPoint& p) {
    if (static_cast<int>(p.labels.size()) != inner_edge_count(p.tree))
        throw std::invalid_argument("point: label/edge count mismatch");
    std::size_t next = 0;
    detail::LNode root = detail::annotate(p.tree, p.labels, next);
    return detail::rewrite_to_normal(std::move(root), nullptr);
}

inline bool equivalent(const LabeledPoint& p, const LabeledPoint& q) {
    return normal_form(p) == normal_form(q);
}

/// Position (1-based) that a new inner edge created by grafting at leaf i
/// takes among the inner edges of the composite.
inline int grafted_edge_index(const Tree& t, int i) {
    // preorder position of the i-th leaf, counting nodes from 0
    int pos = -1, seen = 0, idx = 0;
    std::function<void(const Tree&)> walk = [&](const Tree& node) {
        const int my = idx++;
        if (node.is_leaf() && ++seen == i) {
            pos = my;
            return;
        }
        for (const Tree& c : node.children()) {
            if (pos >= 0) return;
            walk(c);
        }
    };
    walk(t);
    if (pos < 0) throw std::out_of_range("leaf index out of range");
    // count inner edges whose top vertex precedes the grafting position
    int count = 0;
    const TreeStats st = stats(t);
    for (int top : st.inner_edges)
        if (top < pos + 1) ++count;  // stats indices are path order (root vertex = 0)
    return count + 1;
}

/// ∘ᵢ on points: grafts the trees and inserts the labels of q after a new
/// coordinate pinned at 1 for the created inner edge; equals ∂ₖ⁺∘σₖ.
inline LabeledPoint compose_point(const LabeledPoint& p, int i, const LabeledPoint& q) {
    validate_point(p);
    validate_point(q);
    if (p.tree.is_leaf()) {
        if (i != 1) throw std::out_of_range("compose_point: slot out of range");
        return q;
    }
    if (q.tree.is_leaf()) {
        if (i < 1 || i > leaf_count(p.tree))
            throw std::out_of_range("compose_point: slot out of range");
        return p;
    }
    const int k = grafted_edge_index(p.tree, i);
    LabeledPoint out;
    out.tree = graft(p.tree, i, q.tree);
    out.labels.reserve(p.labels.size() + q.labels.size() + 1);
    out.labels.insert(out.labels.end(), p.labels.begin(), p.labels.begin() + (k - 1));
    out.labels.push_back(Rational(1));
    out.labels.insert(out.labels.end(), q.labels.begin(), q.labels.end());
    out.labels.insert(out.labels.end(), p.labels.begin() + (k - 1), p.labels.end());
    return out;
}

/// Associahedral degeneracy ∘ᵢ: K_p → K_{p−1} on a cork-free binary tree with
/// at least three leaves: removes the i-th leaf and joins the two edges
/// adjacent to its parent (connection when both are inner, degeneracy when
/// one is the root or a leaf edge).
inline LabeledPoint degeneracy_map(int i, const LabeledPoint& p) {
    validate_point(p);
    if (cork_count(p.tree) != 0)
        throw std::invalid_argument("degeneracy_map: tree must be cork-free");
    if (leaf_count(p.tree) < 3)
        throw std::invalid_argument("degeneracy_map: need at least three leaves");
    if (i < 1 || i > leaf_count(p.tree))
        throw std::out_of_range("degeneracy_map: leaf index out of range");
    detail::LNode root = detail::annotate(p);
    // locate the i-th leaf
    detail::Path found, prefix;
    int seen = 0;
    std::function<void(const detail::LNode&)> walk = [&](const detail::LNode& n) {
        for (std::size_t k = 0; k < n.children.size(); ++k) {
            prefix.push_back(k);
            if (n.children[k].node.kind == NodeKind::Leaf) {
                if (++seen == i && found.empty()) found = prefix;
            } else {
                walk(n.children[k].node);
            }
            prefix.pop_back();
        }
    };
    walk(root);
    detail::erase_child_and_repair(root, found);
    NormalPoint np = detail::finish(root);
    return LabeledPoint{np.tree, np.labels};
}

/// Top characteristic map of the cork filtration: S marks which leaves of the
/// cork-free binary tree become corks, and t supplies the coordinates of the
/// new cork edges (a shuffle permutation of the cube coordinates).
inline LabeledPoint char_map_top(const CorkSet& s, const LabeledPoint& x, const CubePoint& t) {
    validate_point(x);
    if (cork_count(x.tree) != 0)
        throw std::invalid_argument("char_map_top: tree must be cork-free");
    if (s.size() != t.size())
        throw std::invalid_argument("char_map_top: |S| and |t| must agree");
    check_unit_interval(t);
    LabeledPoint out;
    out.tree = add_corks(x.tree, s);
    std::size_t next_x = 0, next_t = 0;
    std::function<void(const Tree&)> walk = [&](const Tree& node) {
        for (const Tree& c : node.children()) {
            if (c.is_cork())
                out.labels.push_back(t[next_t++]);
            else if (!c.is_leaf())
                out.labels.push_back(x.labels[next_x++]);
            walk(c);
        }
    };
    walk(out.tree);
    return out;
}

/// Boundary characteristic map: the i-th cork coordinate is pinned at 0 and
/// the (R2) projection for that cork edge is applied first, then remaining
/// rewriting runs canonically.
inline NormalPoint char_map_boundary(const CorkSet& s, int i, const LabeledPoint& x,
                                     const CubePoint& t) {
    if (static_cast<int>(s.size()) != static_cast<int>(t.size()) + 1)
        throw std::invalid_argument("char_map_boundary: |t| must be |S|-1");
    if (i < 1 || i > static_cast<int>(s.size()))
        throw std::out_of_range("char_map_boundary: cork index out of range");
    CubePoint t0 = apply_face(false, i, t);
    LabeledPoint top = char_map_top(s, x, t0);
    // force the first step at the i-th cork edge, then continue canonically
    bool first = true;
    std::size_t forced = 0;
    {
        // position of the pinned cork edge among the zero-labeled edges
        std::size_t zero_rank = 0, cork_rank = 0;
        std::size_t next_t = 0;
        std::function<void(const Tree&)> walk = [&](const Tree& node) {
            for (const Tree& c : node.children()) {
                if (c.is_cork() && static_cast<int>(++cork_rank) == i) forced = zero_rank;
                if (!c.is_leaf() && top.labels[next_t] == 0) ++zero_rank;
                if (!c.is_leaf()) ++next_t;
                walk(c);
            }
        };
        walk(top.tree);
    }
    return normal_form(top, [&](std::size_t n) -> std::size_t {
        if (first) {
            first = false;
            return forced < n ? forced : 0;
        }
        return 0;
    });
}

}  // namespace uassoc
