#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uassoc/numeric.hpp"
#include "uassoc/tree.hpp"

namespace uassoc {

namespace detail {

// Memoized rows of binary trees, shared across calls. Rows above the cache
// bound are streamed from cached subtrees instead of materialized.
inline constexpr int kBinaryCacheMax = 8;

inline const std::vector<Tree>& binary_row_locked(int n, int m) {
    static std::map<std::pair<int, int>, std::unique_ptr<std::vector<Tree>>> cache;
    auto key = std::make_pair(n, m);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
    auto row = std::make_unique<std::vector<Tree>>();
    if (n + m == 1) {
        row->push_back(n == 1 ? Tree::leaf() : Tree::black_cork());
    } else {
        for (int nl = 0; nl <= n; ++nl)
            for (int ml = 0; ml <= m; ++ml) {
                const int nr = n - nl, mr = m - ml;
                if (nl + ml < 1 || nr + mr < 1) continue;
                for (const Tree& left : binary_row_locked(nl, ml))
                    for (const Tree& right : binary_row_locked(nr, mr))
                        row->push_back(Tree::internal({left, right}));
            }
    }
    auto& slot = cache[key];
    slot = std::move(row);
    return *slot;
}

inline std::mutex& enumeration_mutex() {
    static std::mutex m;
    return m;
}

// Rows are built once under the lock and never mutated afterwards, so the
// returned reference stays valid and readable without it.
inline const std::vector<Tree>& binary_row(int n, int m) {
    std::lock_guard<std::mutex> hold(enumeration_mutex());
    return binary_row_locked(n, m);
}

}  // namespace detail

/// Visits every binary tree (all vertex degrees 1 or 3) with n leaves and m
/// black corks exactly once. Generation order is structural, not sorted.
inline void for_each_binary(int n, int m, const std::function<void(const Tree&)>& fn) {
    if (n < 0 || m < 0 || n + m < 1) return;
    if (n + m <= detail::kBinaryCacheMax) {
        for (const Tree& t : detail::binary_row(n, m)) fn(t);
        return;
    }
    for (int nl = 0; nl <= n; ++nl)
        for (int ml = 0; ml <= m; ++ml) {
            const int nr = n - nl, mr = m - ml;
            if (nl + ml < 1 || nr + mr < 1) continue;
            for_each_binary(nl, ml, [&](const Tree& left) {
                for_each_binary(nr, mr, [&](const Tree& right) {
                    fn(Tree::internal({left, right}));
                });
            });
        }
}

/// All binary trees with n leaves and m corks, in lexicographic order of the
/// canonical serialization.
inline std::vector<Tree> enumerate_binary(int n, int m) {
    std::vector<std::pair<std::string, Tree>> keyed;
    for_each_binary(n, m, [&](const Tree& t) { keyed.emplace_back(serialize_tree(t), t); });
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Tree> out;
    out.reserve(keyed.size());
    for (auto& kv : keyed) out.push_back(std::move(kv.second));
    return out;
}

/// (n+m choose m) · Catalan(n+m−1)
inline BigInt count_binary(int n, int m) {
    if (n < 0 || m < 0 || n + m < 1) throw std::invalid_argument("count_binary: need n+m >= 1");
    return binomial(n + m, m) * catalan(n + m - 1);
}

namespace detail {

// Planar trees with k endpoints and every internal vertex of degree >= 3
// (no degree-2 vertices); endpoints are leaf placeholders.
inline const std::vector<Tree>& reduced_shapes_locked(int k) {
    static std::map<int, std::unique_ptr<std::vector<Tree>>> cache;
    if (auto it = cache.find(k); it != cache.end()) return *it->second;
    auto row = std::make_unique<std::vector<Tree>>();
    if (k == 1) {
        row->push_back(Tree::leaf());
    } else if (k >= 2) {
        // compositions of k into at least two parts, children drawn per part
        std::vector<const std::vector<Tree>*> chosen;
        std::function<void(int)> build = [&](int rest) {
            if (rest == 0) {
                if (chosen.size() < 2) return;
                std::vector<std::size_t> idx(chosen.size(), 0);
                for (;;) {
                    std::vector<Tree> ch;
                    ch.reserve(chosen.size());
                    for (std::size_t j = 0; j < chosen.size(); ++j)
                        ch.push_back((*chosen[j])[idx[j]]);
                    row->push_back(Tree::internal(std::move(ch)));
                    std::size_t j = chosen.size();
                    for (;;) {
                        if (j == 0) return;
                        --j;
                        if (++idx[j] < chosen[j]->size()) break;
                        idx[j] = 0;
                    }
                }
            }
            const int max_part = chosen.empty() ? rest - 1 : rest;
            for (int part = 1; part <= max_part; ++part) {
                chosen.push_back(&reduced_shapes_locked(part));
                build(rest - part);
                chosen.pop_back();
            }
        };
        build(k);
    }
    auto& slot = cache[k];
    slot = std::move(row);
    return *slot;
}

inline const std::vector<Tree>& reduced_shapes(int k) {
    std::lock_guard<std::mutex> hold(enumeration_mutex());
    return reduced_shapes_locked(k);
}

inline void decorate_endpoints(const Tree& shape, const std::vector<NodeKind>& kinds,
                               std::size_t& next, std::vector<Tree>& out_stack) {
    if (shape.is_leaf()) {
        switch (kinds[next++]) {
            case NodeKind::Leaf: out_stack.push_back(Tree::leaf()); return;
            case NodeKind::BlackCork: out_stack.push_back(Tree::black_cork()); return;
            case NodeKind::WhiteCork: out_stack.push_back(Tree::white_cork()); return;
            default: throw std::logic_error("decorate_endpoints: bad kind");
        }
    }
    std::vector<Tree> ch;
    ch.reserve(shape.children().size());
    for (const Tree& c : shape.children()) {
        decorate_endpoints(c, kinds, next, out_stack);
        ch.push_back(std::move(out_stack.back()));
        out_stack.pop_back();
    }
    out_stack.push_back(Tree::internal(std::move(ch)));
}

inline Tree decorate(const Tree& shape, const std::vector<NodeKind>& kinds) {
    std::size_t next = 0;
    std::vector<Tree> stack;
    decorate_endpoints(shape, kinds, next, stack);
    return stack.back();
}

}  // namespace detail

/// Trees with n leaves and at most max_corks corks, no degree-2 vertices,
/// excluding the single-black-cork tree; these index the cells of the
/// cork-filtration stages. White corks are used only when allow_white.
/// Sorted lexicographically by serialization.
inline std::vector<Tree> enumerate_cell_trees(int n, int max_corks, bool allow_white) {
    std::vector<std::pair<std::string, Tree>> keyed;
    for (int c = 0; c <= max_corks; ++c) {
        const int k = n + c;
        if (k < 1) continue;
        for (const Tree& shape : detail::reduced_shapes(k)) {
            // choose which endpoints are corks
            std::vector<int> subset(c);
            for (int j = 0; j < c; ++j) subset[j] = j;
            for (;;) {
                const int colorings = allow_white ? (1 << c) : 1;
                for (int mask = 0; mask < colorings; ++mask) {
                    std::vector<NodeKind> kinds(k, NodeKind::Leaf);
                    for (int j = 0; j < c; ++j)
                        kinds[subset[j]] =
                            (mask >> j) & 1 ? NodeKind::WhiteCork : NodeKind::BlackCork;
                    Tree t = detail::decorate(shape, kinds);
                    if (t.is_black_cork()) continue;  // the excluded h = m_b = 1 tree
                    keyed.emplace_back(serialize_tree(t), std::move(t));
                }
                // next c-subset of {0..k-1}
                if (c == 0) break;
                int j = c - 1;
                while (j >= 0 && subset[j] == k - c + j) --j;
                if (j < 0) break;
                ++subset[j];
                for (int l = j + 1; l < c; ++l) subset[l] = subset[l - 1] + 1;
            }
        }
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Tree> out;
    out.reserve(keyed.size());
    for (auto& kv : keyed) out.push_back(std::move(kv.second));
    return out;
}

}  // namespace uassoc
