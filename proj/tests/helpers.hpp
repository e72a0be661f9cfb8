#pragma once

// Shared generators for the property suites: seeded random trees, labeled
// points, and single-move related pairs for each generating relation.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "uassoc/cube.hpp"
#include "uassoc/numeric.hpp"
#include "uassoc/point.hpp"
#include "uassoc/tree.hpp"
#include "uassoc/tree_ops.hpp"

namespace testgen {

using namespace uassoc;

inline Tree random_binary(int n, int m, std::mt19937_64& rng) {
    if (n + m == 1) return n == 1 ? Tree::leaf() : Tree::black_cork();
    for (;;) {
        const int k = n + m;
        const int kl = 1 + static_cast<int>(rng() % static_cast<unsigned>(k - 1));
        const int lo = std::max(0, kl - n), hi = std::min(m, kl);
        if (lo > hi) continue;
        const int ml = lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
        const int nl = kl - ml;
        if (nl < 0 || nl > n) continue;
        return Tree::internal({random_binary(nl, ml, rng), random_binary(n - nl, m - ml, rng)});
    }
}

// label pool {0, 1/3, 1/2, 1}
inline Rational random_label(std::mt19937_64& rng) {
    switch (rng() % 4) {
        case 0: return Rational(0);
        case 1: return Rational(1, 3);
        case 2: return Rational(1, 2);
        default: return Rational(1);
    }
}

inline std::vector<Rational> random_labels(const Tree& t, std::mt19937_64& rng,
                                           bool allow_zero = true) {
    std::vector<Rational> out;
    for (int j = 0; j < inner_edge_count(t); ++j) {
        Rational x = random_label(rng);
        while (!allow_zero && x == 0) x = random_label(rng);
        out.push_back(x);
    }
    return out;
}

inline LabeledPoint random_point(std::mt19937_64& rng, int max_leaves = 4, int max_corks = 2,
                                 bool allow_zero = true, int min_leaves = 1) {
    const int n = min_leaves +
                  static_cast<int>(rng() % static_cast<unsigned>(max_leaves - min_leaves + 1));
    const int m = static_cast<int>(rng() % static_cast<unsigned>(max_corks + 1));
    Tree t = (n + m >= 1) ? random_binary(n, m, rng) : Tree::leaf();
    return LabeledPoint{t, random_labels(t, rng, allow_zero)};
}

inline CubePoint random_cube(int n, std::mt19937_64& rng) {
    CubePoint x;
    for (int j = 0; j < n; ++j) x.push_back(random_label(rng));
    return x;
}

// Inner-edge classification used to pick relation instances. Edges are
// numbered 1..E in canonical order; parent_is_top / sibling kind / side
// determine the (R2) case letter.
struct EdgeInfo {
    int index = 0;              // canonical inner edge index
    bool top_is_cork = false;   // upper endpoint is a black cork
    bool parent_is_top = false; // lower endpoint is the top node
    bool sibling_leaf = false;  // the other upward edge ends in a leaf
    bool cork_left = false;     // cork is the first child
};

inline std::vector<EdgeInfo> classify_edges(const Tree& t) {
    std::vector<EdgeInfo> out;
    int idx = 0;
    std::function<void(const Tree&, bool)> walk = [&](const Tree& node, bool is_top) {
        const auto& ch = node.children();
        for (std::size_t k = 0; k < ch.size(); ++k) {
            if (!ch[k].is_leaf()) {
                EdgeInfo e;
                e.index = ++idx;
                e.top_is_cork = ch[k].is_cork();
                e.parent_is_top = is_top;
                if (ch.size() == 2) {
                    e.sibling_leaf = ch[1 - k].is_leaf();
                    e.cork_left = (k == 0);
                }
                out.push_back(e);
            }
            walk(ch[k], false);
        }
    };
    walk(t, true);
    return out;
}

// R2 case letter 'a'..'h' for a cork inner edge of a binary tree.
inline char r2_case(const EdgeInfo& e) {
    if (!e.parent_is_top && !e.sibling_leaf) return e.cork_left ? 'a' : 'b';
    if (!e.parent_is_top && e.sibling_leaf) return e.cork_left ? 'c' : 'd';
    if (e.parent_is_top && !e.sibling_leaf) return e.cork_left ? 'e' : 'f';
    return e.cork_left ? 'g' : 'h';
}

// A pair of labeled points identified by a single generating relation.
struct RelatedPair {
    LabeledPoint left, right;
};

// R1: expand the vertex merged by contracting edge e of T in the other
// planar way, giving T' with T/e = T'/e'.
inline std::optional<RelatedPair> r1_pair(const Tree& t, std::mt19937_64& rng) {
    auto edges = classify_edges(t);
    std::vector<EdgeInfo> inner;
    for (const auto& e : edges)
        if (!e.top_is_cork) inner.push_back(e);
    if (inner.empty()) return std::nullopt;
    const EdgeInfo chosen = inner[rng() % inner.size()];

    // rebuild t with the chosen edge re-associated the other way
    int idx = 0;
    std::function<Tree(const Tree&)> rebuild = [&](const Tree& node) -> Tree {
        if (!node.is_internal()) return node;
        std::vector<Tree> ch;
        for (std::size_t k = 0; k < node.children().size(); ++k) {
            const Tree& c = node.children()[k];
            if (!c.is_leaf() && ++idx == chosen.index) {
                // binary: node = (x (y z)) or ((y z) x); re-associate
                const Tree& other = node.children()[1 - k];
                const Tree& y = c.children()[0];
                const Tree& z = c.children()[1];
                if (k == 1)  // (x (y z)) -> ((x y) z)
                    return Tree::internal({Tree::internal({other, y}), z});
                // ((y z) x) -> (y (z x))
                return Tree::internal({y, Tree::internal({z, other})});
            }
            ch.push_back(rebuild(c));
        }
        return Tree::internal(std::move(ch));
    };
    const Tree t2 = rebuild(t);
    if (t2 == t) return std::nullopt;

    // locate the re-associated edge in t2: the unique inner edge with the
    // same contraction
    const Tree target = contract_edge(t, chosen.index);
    int j = 0;
    for (int e = 1; e <= inner_edge_count(t2); ++e) {
        bool ok = false;
        try {
            ok = contract_edge(t2, e) == target;
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (ok) {
            j = e;
            break;
        }
    }
    if (j == 0) return std::nullopt;

    std::vector<Rational> x;
    for (int k = 0; k < inner_edge_count(t) - 1; ++k) x.push_back(random_label(rng));
    RelatedPair pair;
    pair.left.tree = t;
    pair.left.labels = x;
    pair.left.labels.insert(pair.left.labels.begin() + (chosen.index - 1), Rational(0));
    pair.right.tree = t2;
    pair.right.labels = x;
    pair.right.labels.insert(pair.right.labels.begin() + (j - 1), Rational(0));
    return pair;
}

// R2: zero out a cork edge and apply the table projection on the other side.
inline std::optional<RelatedPair> r2_pair(const Tree& t, char wanted, std::mt19937_64& rng) {
    std::vector<EdgeInfo> corks;
    for (const auto& e : classify_edges(t))
        if (e.top_is_cork && r2_case(e) == wanted) corks.push_back(e);
    if (corks.empty()) return std::nullopt;
    const EdgeInfo chosen = corks[rng() % corks.size()];
    const int i = chosen.index;

    std::vector<Rational> x;
    for (int k = 0; k < inner_edge_count(t) - 1; ++k) x.push_back(random_label(rng));

    RelatedPair pair;
    pair.left.tree = t;
    pair.left.labels = x;
    pair.left.labels.insert(pair.left.labels.begin() + (i - 1), Rational(0));
    pair.right.tree = remove_cork_edge(t, i);
    // per-case index formulas for the projection
    switch (wanted) {
        case 'a': pair.right.labels = apply_connection(i - 1, x); break;
        case 'b': {
            // the connection merges (j, j+1) where j is the index of the
            // edge below the cork's parent and j+1 the sibling's
            const int j = [&] {
                int idx = 0, found = 0;
                std::function<void(const Tree&, int)> walk = [&](const Tree& node, int my_edge) {
                    const auto& ch = node.children();
                    for (std::size_t k = 0; k < ch.size(); ++k) {
                        int edge = 0;
                        if (!ch[k].is_leaf()) edge = ++idx;
                        if (edge == i && my_edge > 0) found = my_edge;
                        walk(ch[k], edge);
                    }
                };
                walk(t, 0);
                return found;
            }();
            if (j == 0) return std::nullopt;
            pair.right.labels = apply_connection(j, x);
            break;
        }
        case 'c':
        case 'd': pair.right.labels = apply_degeneracy(i - 1, x); break;
        case 'e':
        case 'f': pair.right.labels = apply_degeneracy(1, x); break;
        case 'g':
        case 'h': pair.right.labels.clear(); break;
        default: return std::nullopt;
    }
    return pair;
}

}  // namespace testgen
