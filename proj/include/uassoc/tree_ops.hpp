#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "uassoc/tree.hpp"

namespace uassoc {

namespace detail {

// Replaces the i-th leaf (1-based countdown through `remaining`) by `repl`.
inline std::optional<Tree> graft_walk(const Tree& t, int& remaining, const Tree& repl) {
    if (t.is_leaf()) {
        if (--remaining == 0) return repl;
        return std::nullopt;
    }
    if (!t.is_internal()) return std::nullopt;
    const auto& ch = t.children();
    for (std::size_t k = 0; k < ch.size(); ++k) {
        if (auto sub = graft_walk(ch[k], remaining, repl)) {
            std::vector<Tree> copy(ch);
            copy[k] = std::move(*sub);
            return Tree::internal(std::move(copy));
        }
        if (remaining == 0) break;  // already replaced deeper (unreachable) or exhausted
    }
    return std::nullopt;
}

}  // namespace detail

/// Grafting T∘ᵢU: the root edge of U is attached to the i-th leaf edge of T
/// (leaves numbered 1..n in path order).
inline Tree graft(const Tree& t, int i, const Tree& u) {
    const int n = leaf_count(t);
    if (i < 1 || i > n) throw std::out_of_range("graft: leaf index out of range");
    if (u.is_leaf()) return t;
    if (t.is_leaf()) return u;
    int remaining = i;
    auto result = detail::graft_walk(t, remaining, u);
    if (!result) throw std::logic_error("graft: leaf not found");
    return *result;
}

namespace detail {

// Locates the inner edge with 1-based index `remaining` and applies `fn` to
// the parent's child list; fn(children, k) returns the replacement child list.
template <typename Fn>
inline std::optional<Tree> inner_edge_walk(const Tree& t, int& remaining, Fn&& fn) {
    if (!t.is_internal()) return std::nullopt;
    const auto& ch = t.children();
    for (std::size_t k = 0; k < ch.size(); ++k) {
        if (!ch[k].is_leaf()) {
            if (--remaining == 0) return fn(ch, k);
        }
        if (auto sub = inner_edge_walk(ch[k], remaining, fn)) {
            std::vector<Tree> copy(ch);
            copy[k] = std::move(*sub);
            return Tree::internal(std::move(copy));
        }
        if (remaining == 0) return std::nullopt;  // fn declined; propagate
    }
    return std::nullopt;
}

}  // namespace detail

/// Contraction T/e of the inner edge with the given 1-based canonical index.
/// The edge's upper endpoint must be an internal vertex; its children are
/// spliced into the lower endpoint's child list in place of the edge.
inline Tree contract_edge(const Tree& t, int inner_edge_index) {
    if (inner_edge_index < 1 || inner_edge_index > inner_edge_count(t))
        throw std::out_of_range("contract_edge: inner edge index out of range");
    int remaining = inner_edge_index;
    bool cork_edge = false;
    auto result = detail::inner_edge_walk(
        t, remaining,
        [&](const std::vector<Tree>& ch, std::size_t k) -> std::optional<Tree> {
            if (!ch[k].is_internal()) {
                cork_edge = true;
                return std::nullopt;
            }
            std::vector<Tree> copy;
            copy.reserve(ch.size() - 1 + ch[k].children().size());
            copy.insert(copy.end(), ch.begin(), ch.begin() + static_cast<long>(k));
            const auto& sub = ch[k].children();
            copy.insert(copy.end(), sub.begin(), sub.end());
            copy.insert(copy.end(), ch.begin() + static_cast<long>(k) + 1, ch.end());
            return Tree::internal(std::move(copy));
        });
    if (cork_edge)
        throw std::invalid_argument("contract_edge: cannot contract a cork edge");
    if (!result) throw std::logic_error("contract_edge: edge not found");
    return *result;
}

/// T^{•S}: replaces the leaves at the (strictly increasing, 1-based)
/// positions S by black corks. Equals the iterated graft of the 0-ary
/// corolla at those positions in descending order.
inline Tree add_corks(const Tree& t, const std::vector<int>& s) {
    const int n = leaf_count(t);
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] < 1 || s[k] > n)
            throw std::out_of_range("add_corks: position out of range");
        if (k > 0 && s[k] <= s[k - 1])
            throw std::invalid_argument("add_corks: positions must be strictly increasing");
    }
    Tree result = t;
    for (auto it = s.rbegin(); it != s.rend(); ++it)
        result = graft(result, *it, Tree::black_cork());
    return result;
}

namespace detail {

// Removes the child at position k of a degree-3 vertex and joins the two
// remaining edges (the spliced T∖e of binary trees).
inline std::optional<Tree> splice_out(const std::vector<Tree>& ch, std::size_t k) {
    if (ch.size() != 2) return std::nullopt;
    return ch[1 - k];
}

}  // namespace detail

/// T∖e for an inner edge whose upper endpoint is a cork: removes the cork and
/// its edge and joins the two other edges at the lower endpoint, which must
/// have degree 3.
inline Tree remove_cork_edge(const Tree& t, int inner_edge_index) {
    if (!is_binary(t)) throw std::invalid_argument("remove_cork_edge: tree must be binary");
    if (inner_edge_index < 1 || inner_edge_index > inner_edge_count(t))
        throw std::out_of_range("remove_cork_edge: inner edge index out of range");
    int remaining = inner_edge_index;
    bool bad_kind = false;
    auto result = detail::inner_edge_walk(
        t, remaining,
        [&](const std::vector<Tree>& ch, std::size_t k) -> std::optional<Tree> {
            if (!ch[k].is_cork()) {
                bad_kind = true;
                return std::nullopt;
            }
            return detail::splice_out(ch, k);
        });
    if (bad_kind)
        throw std::invalid_argument("remove_cork_edge: upper endpoint is not a cork");
    if (!result) throw std::logic_error("remove_cork_edge: edge not found");
    return *result;
}

namespace detail {

inline std::optional<Tree> remove_leaf_walk(const Tree& t, int& remaining) {
    if (!t.is_internal()) return std::nullopt;
    const auto& ch = t.children();
    for (std::size_t k = 0; k < ch.size(); ++k) {
        if (ch[k].is_leaf()) {
            if (--remaining == 0) return splice_out(ch, k);
        } else if (auto sub = remove_leaf_walk(ch[k], remaining)) {
            std::vector<Tree> copy(ch);
            copy[k] = std::move(*sub);
            return Tree::internal(std::move(copy));
        }
        if (remaining == 0) break;
    }
    return std::nullopt;
}

}  // namespace detail

/// T∖e at the i-th leaf edge of a binary tree with at least two endpoints.
inline Tree remove_leaf(const Tree& t, int i) {
    if (!is_binary(t)) throw std::invalid_argument("remove_leaf: tree must be binary");
    if (i < 1 || i > leaf_count(t)) throw std::out_of_range("remove_leaf: leaf index out of range");
    if (!t.is_internal()) throw std::invalid_argument("remove_leaf: no edges to join");
    int remaining = i;
    auto result = detail::remove_leaf_walk(t, remaining);
    if (!result) throw std::logic_error("remove_leaf: leaf not found");
    return *result;
}

/// Replaces every cork by a leaf, keeping the shape.
inline Tree strip_corks(const Tree& t) {
    if (t.is_cork()) return Tree::leaf();
    if (!t.is_internal()) return t;
    std::vector<Tree> ch;
    ch.reserve(t.children().size());
    for (const Tree& c : t.children()) ch.push_back(strip_corks(c));
    return Tree::internal(std::move(ch));
}

}  // namespace uassoc
