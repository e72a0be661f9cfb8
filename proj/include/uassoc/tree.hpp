#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uassoc {

enum class NodeKind : unsigned char { Leaf, BlackCork, WhiteCork, Internal };

/// Planted planar tree whose degree-1 non-root vertices are decorated as
/// leaves or corks. The root vertex and the root edge sit below the top node
/// and are kept implicit; the path order is depth-first preorder with the
/// root vertex first.
class Tree {
public:
    static Tree leaf() { return Tree(NodeKind::Leaf); }
    static Tree black_cork() { return Tree(NodeKind::BlackCork); }
    static Tree white_cork() { return Tree(NodeKind::WhiteCork); }
    static Tree internal(std::vector<Tree> children) {
        if (children.empty())
            throw std::invalid_argument("internal node needs at least one child");
        Tree t(NodeKind::Internal);
        t.children_ = std::move(children);
        return t;
    }

    NodeKind kind() const { return kind_; }
    bool is_leaf() const { return kind_ == NodeKind::Leaf; }
    bool is_black_cork() const { return kind_ == NodeKind::BlackCork; }
    bool is_white_cork() const { return kind_ == NodeKind::WhiteCork; }
    bool is_cork() const { return is_black_cork() || is_white_cork(); }
    bool is_internal() const { return kind_ == NodeKind::Internal; }

    const std::vector<Tree>& children() const { return children_; }

    bool operator==(const Tree&) const = default;

private:
    explicit Tree(NodeKind k) : kind_(k) {}
    NodeKind kind_;
    std::vector<Tree> children_;
};

struct TreeParseError : std::runtime_error {
    TreeParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)),
          position(pos) {}
    std::size_t position;
};

namespace detail {

// Addresses a node (or the edge above it) by successive child indices.
using Path = std::vector<std::size_t>;

inline void skip_spaces(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
}

inline Tree parse_node(std::string_view text, std::size_t& pos) {
    if (pos >= text.size()) throw TreeParseError("unexpected end of input", pos);
    const char c = text[pos];
    switch (c) {
        case 'l': ++pos; return Tree::leaf();
        case 'b': ++pos; return Tree::black_cork();
        case 'w': ++pos; return Tree::white_cork();
        case '(': {
            ++pos;
            std::vector<Tree> children;
            skip_spaces(text, pos);
            children.push_back(parse_node(text, pos));
            for (;;) {
                skip_spaces(text, pos);
                if (pos >= text.size())
                    throw TreeParseError("missing ')'", pos);
                if (text[pos] == ')') {
                    ++pos;
                    return Tree::internal(std::move(children));
                }
                children.push_back(parse_node(text, pos));
            }
        }
        default:
            throw TreeParseError(std::string("unexpected character '") + c + "'", pos);
    }
}

}  // namespace detail

/// Grammar: tree := 'l' | 'b' | 'w' | '(' tree (' ' tree)* ')'
inline Tree parse_tree(std::string_view text) {
    std::size_t pos = 0;
    detail::skip_spaces(text, pos);
    if (pos >= text.size()) throw TreeParseError("empty input", pos);
    Tree t = detail::parse_node(text, pos);
    detail::skip_spaces(text, pos);
    if (pos != text.size())
        throw TreeParseError("trailing characters", pos);
    return t;
}

inline void serialize_tree_to(const Tree& t, std::string& out) {
    switch (t.kind()) {
        case NodeKind::Leaf: out += 'l'; return;
        case NodeKind::BlackCork: out += 'b'; return;
        case NodeKind::WhiteCork: out += 'w'; return;
        case NodeKind::Internal: {
            out += '(';
            bool first = true;
            for (const Tree& c : t.children()) {
                if (!first) out += ' ';
                first = false;
                serialize_tree_to(c, out);
            }
            out += ')';
            return;
        }
    }
}

inline std::string serialize_tree(const Tree& t) {
    std::string out;
    serialize_tree_to(t, out);
    return out;
}

inline int leaf_count(const Tree& t) {
    if (t.is_leaf()) return 1;
    int n = 0;
    for (const Tree& c : t.children()) n += leaf_count(c);
    return n;
}

inline int black_cork_count(const Tree& t) {
    if (t.is_black_cork()) return 1;
    int n = 0;
    for (const Tree& c : t.children()) n += black_cork_count(c);
    return n;
}

inline int white_cork_count(const Tree& t) {
    if (t.is_white_cork()) return 1;
    int n = 0;
    for (const Tree& c : t.children()) n += white_cork_count(c);
    return n;
}

inline int cork_count(const Tree& t) { return black_cork_count(t) + white_cork_count(t); }

/// Number of vertices of the node structure (the implicit root vertex is not
/// counted).
inline int node_count(const Tree& t) {
    int n = 1;
    for (const Tree& c : t.children()) n += node_count(c);
    return n;
}

inline bool is_binary(const Tree& t) {
    if (!t.is_internal()) return true;
    if (t.children().size() != 2) return false;
    return std::all_of(t.children().begin(), t.children().end(),
                       [](const Tree& c) { return is_binary(c); });
}

inline bool has_white_cork(const Tree& t) { return white_cork_count(t) > 0; }

/// Statistics of a tree. Vertices are indexed by path order: the implicit
/// root vertex is 0 and the nodes follow in preorder starting at 1. Inner
/// edges are the edges whose lower endpoint is a node and whose upper
/// endpoint is not a leaf; they are listed by their upper endpoint, in path
/// order.
struct TreeStats {
    int n_leaves = 0;
    int n_black_corks = 0;
    int n_white_corks = 0;
    int height = 0;
    std::vector<int> inner_edges;  // path-order index of each inner edge's upper endpoint
    std::vector<int> degrees;      // per-vertex degree, path order (root vertex first)
};

namespace detail {

inline void stats_walk(const Tree& t, int level, int& next_index, TreeStats& st) {
    ++next_index;
    st.height = std::max(st.height, level);
    switch (t.kind()) {
        case NodeKind::Leaf: st.n_leaves++; st.degrees.push_back(1); return;
        case NodeKind::BlackCork: st.n_black_corks++; st.degrees.push_back(1); return;
        case NodeKind::WhiteCork: st.n_white_corks++; st.degrees.push_back(1); return;
        case NodeKind::Internal: break;
    }
    st.degrees.push_back(static_cast<int>(t.children().size()) + 1);
    for (const Tree& c : t.children()) {
        if (!c.is_leaf()) st.inner_edges.push_back(next_index);
        stats_walk(c, level + 1, next_index, st);
    }
}

}  // namespace detail

inline TreeStats stats(const Tree& t) {
    TreeStats st;
    st.degrees.push_back(1);  // root vertex
    int next_index = 1;
    detail::stats_walk(t, 1, next_index, st);
    return st;
}

inline int inner_edge_count(const Tree& t) {
    int n = 0;
    if (t.is_internal())
        for (const Tree& c : t.children()) {
            if (!c.is_leaf()) ++n;
            n += inner_edge_count(c);
        }
    return n;
}

}  // namespace uassoc
