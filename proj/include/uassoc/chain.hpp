#pragma once

#include <array>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uassoc/enumerate.hpp"
#include "uassoc/numeric.hpp"
#include "uassoc/p_operad.hpp"
#include "uassoc/tree.hpp"
#include "uassoc/tree_ops.hpp"

namespace uassoc {

/// Cell trees index the cells of unital associahedra and the monomial basis
/// of the chain operad: black/white corks, no degree-2 vertices, and the
/// single-black-cork tree is excluded. The trivial tree is the operad unit.
inline bool is_cell_tree(const Tree& t) {
    if (t.is_black_cork()) return false;
    if (!t.is_internal()) return true;
    if (t.children().size() < 2) return false;
    for (const Tree& c : t.children())
        if (c.is_internal() && !is_cell_tree(c)) return false;
    // nested scan already rejects unary nodes; corks and leaves are fine
    return true;
}

/// degree(T) = 2m + n − 2 − |I(T)| + m_b, with the trivial tree in degree 0.
inline int cell_degree(const Tree& t) {
    if (t.is_leaf()) return 0;
    if (!is_cell_tree(t)) throw std::invalid_argument("cell_degree: not a cell tree");
    const int n = leaf_count(t);
    const int m = cork_count(t);
    const int mb = black_cork_count(t);
    return 2 * m + n - 2 - inner_edge_count(t) + mb;
}

/// Free-operad generator μ_{n+m}^S of degree 2m+n−2; (n,m) = (0,1) is the
/// white-cork tree, every other case the height-2 tree with black corks at S.
struct Generator {
    int arity = 0;       // n
    int corks = 0;       // m
    CorkSet positions;   // S ⊆ [n+m], |S| = m

    Generator(int n, int m, CorkSet s) : arity(n), corks(m), positions(std::move(s)) {
        if ((arity == 0 && corks == 0) || (arity == 1 && corks == 0))
            throw std::invalid_argument("generator: (n,m) = (0,0) and (1,0) are excluded");
        if (static_cast<int>(positions.size()) != corks)
            throw std::invalid_argument("generator: |S| must equal m");
        check_cork_set(positions, arity + corks);
    }

    int degree() const { return 2 * corks + arity - 2; }

    Tree tree() const {
        if (arity == 0 && corks == 1) return Tree::white_cork();
        std::vector<Tree> ch;
        ch.reserve(arity + corks);
        std::size_t next = 0;
        for (int pos = 1; pos <= arity + corks; ++pos) {
            if (next < positions.size() && positions[next] == pos) {
                ch.push_back(Tree::black_cork());
                ++next;
            } else {
                ch.push_back(Tree::leaf());
            }
        }
        return Tree::internal(std::move(ch));
    }

    std::string name() const {
        std::string s = "mu_{" + std::to_string(arity) + "+" + std::to_string(corks) + "}^{";
        for (std::size_t k = 0; k < positions.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(positions[k]);
        }
        return s + "}";
    }
};

/// Parity of m(m−1)/2: the orientation mismatch between a generator with m
/// corks and the product cell it is attached along. For any splitting
/// s + t = m it satisfies st ≡ p(m) − p(s) − p(t) (mod 2), which is why a
/// single global reorientation of the basis absorbs it.
inline int cork_orientation_parity(int m) { return (m * (m - 1) / 2) % 2; }

/// Recognizes generator trees: the white cork, or a height-2 tree whose
/// children are leaves and black corks.
inline std::optional<Generator> generator_of(const Tree& t) {
    if (t.is_white_cork()) return Generator(0, 1, {1});
    if (!t.is_internal()) return std::nullopt;
    CorkSet s;
    int pos = 0;
    for (const Tree& c : t.children()) {
        ++pos;
        if (c.is_black_cork())
            s.push_back(pos);
        else if (!c.is_leaf())
            return std::nullopt;
    }
    const int m = static_cast<int>(s.size());
    const int n = pos - m;
    if ((n == 0 && m == 0) || (n == 1 && m == 0)) return std::nullopt;
    return Generator(n, m, std::move(s));
}

/// Exponent family for the differential. The base exponent is
/// (q+t)p + (q+t−1)(i+r−1) + t(r−1); a shift vector adds any subset of
/// {q+t−1, p−1, i, r, s, t}. Shift 100000 restricts at m = 0 to the
/// classical exponent qp + (q−1)(i−1) of the associativity differential.
struct SignConvention {
    std::array<int, 6> shift{};

    long exponent(long p, long q, long s, long t, long i, long r) const {
        long e = (q + t) * p + (q + t - 1) * (i + r - 1) + t * (r - 1);
        e += shift[0] * (q + t - 1) + shift[1] * (p - 1) + shift[2] * i + shift[3] * r +
             shift[4] * s + shift[5] * t;
        return e;
    }

    int sign(long p, long q, long s, long t, long i, long r) const {
        return (exponent(p, q, s, t, i, r) & 1) ? -1 : +1;
    }

    std::string to_string() const {
        std::string s;
        for (int b : shift) s += static_cast<char>('0' + b);
        return s;
    }

    static SignConvention from_string(const std::string& s) {
        if (s.size() != 6) throw std::invalid_argument("convention: expected 6 bits");
        SignConvention c;
        for (int j = 0; j < 6; ++j) {
            if (s[j] != '0' && s[j] != '1')
                throw std::invalid_argument("convention: expected 6 bits of 0/1");
            c.shift[j] = s[j] - '0';
        }
        return c;
    }

    /// The classical orientation of the associativity differential.
    static SignConvention classical() { return from_string("100000"); }
    /// The unshifted base exponent.
    static SignConvention base() { return from_string("000000"); }
    /// Library default: lexicographically first shift passing the d² = 0
    /// search; pinned here and re-derived by validate_sign_convention.
    static SignConvention validated_default() { return base(); }

    auto operator<=>(const SignConvention&) const = default;
};

/// Finite integer combination of cell-tree monomials of one arity.
class ChainElement {
public:
    ChainElement() = default;

    static ChainElement unit() { return monomial(Tree::leaf()); }

    static ChainElement monomial(const Tree& t, BigInt coef = 1) {
        ChainElement e;
        e.add(t, coef);
        return e;
    }

    void add(const Tree& t, const BigInt& coef) {
        if (coef == 0) return;
        if (!t.is_leaf() && !is_cell_tree(t))
            throw std::invalid_argument("chain: not a cell tree: " + serialize_tree(t));
        const int n = leaf_count(t);
        if (arity_ < 0)
            arity_ = n;
        else if (arity_ != n)
            throw std::invalid_argument("chain: arity mismatch");
        auto [it, inserted] = terms_.emplace(serialize_tree(t), coef);
        if (!inserted) {
            it->second += coef;
            if (it->second == 0) terms_.erase(it);
        }
        if (terms_.empty()) arity_ = -1;
    }

    bool is_zero() const { return terms_.empty(); }
    int arity() const { return arity_; }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<std::string, BigInt>& terms() const { return terms_; }

    BigInt coefficient(const Tree& t) const {
        auto it = terms_.find(serialize_tree(t));
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    /// Homogeneous degree, if any.
    std::optional<int> degree() const {
        std::optional<int> d;
        for (const auto& [key, coef] : terms_) {
            const int dk = cell_degree(parse_tree(key));
            if (!d)
                d = dk;
            else if (*d != dk)
                return std::nullopt;
        }
        return d;
    }

    ChainElement& operator+=(const ChainElement& o) {
        for (const auto& [key, coef] : o.terms_) add(parse_tree(key), coef);
        return *this;
    }

    ChainElement& operator-=(const ChainElement& o) {
        for (const auto& [key, coef] : o.terms_) add(parse_tree(key), -coef);
        return *this;
    }

    friend ChainElement operator+(ChainElement a, const ChainElement& b) { return a += b; }
    friend ChainElement operator-(ChainElement a, const ChainElement& b) { return a -= b; }

    ChainElement scaled(const BigInt& c) const {
        ChainElement out;
        if (c == 0) return out;
        out.arity_ = arity_;
        for (const auto& [key, coef] : terms_) out.terms_.emplace(key, coef * c);
        return out;
    }

    bool operator==(const ChainElement&) const = default;

private:
    std::map<std::string, BigInt> terms_;
    int arity_ = -1;
};

namespace detail {

inline Path leaf_path(const Tree& t, int i) {
    Path prefix, found;
    int seen = 0;
    std::function<void(const Tree&)> walk = [&](const Tree& node) {
        const auto& ch = node.children();
        for (std::size_t k = 0; k < ch.size(); ++k) {
            if (!found.empty()) return;
            prefix.push_back(k);
            if (ch[k].is_leaf()) {
                if (++seen == i) found = prefix;
            } else {
                walk(ch[k]);
            }
            prefix.pop_back();
        }
    };
    if (t.is_leaf() && i == 1) return {};
    walk(t);
    if (found.empty() && !(t.is_leaf() && i == 1))
        throw std::out_of_range("leaf index out of range");
    return found;
}

inline int generator_degree_at(const Tree& node) {
    if (node.is_white_cork()) return 0;
    int mb = 0;
    for (const Tree& c : node.children()) mb += c.is_black_cork() ? 1 : 0;
    return static_cast<int>(node.children().size()) + mb - 2;
}

// Parity of the total degree of the generators that follow the i-th leaf in
// the canonical word of t (root first, then subtrees in decreasing slot
// order).
inline bool word_tail_parity(const Tree& t, int i) {
    const Path target = leaf_path(t, i);
    bool found = false, parity = false;
    Path prefix;
    std::function<void(const Tree&)> visit = [&](const Tree& node) {
        if (found && (generator_degree_at(node) & 1)) parity = !parity;
        const auto& ch = node.children();
        for (std::size_t k = ch.size(); k-- > 0;) {
            if (ch[k].is_black_cork()) continue;
            prefix.push_back(k);
            if (ch[k].is_leaf()) {
                if (prefix == target) found = true;
            } else {
                visit(ch[k]);
            }
            prefix.pop_back();
        }
    };
    visit(t);
    return parity;
}

}  // namespace detail

/// μ_{T₁}∘ᵢμ_{T₂} = ±μ_{T₁∘ᵢT₂}: the sign is the Koszul cost of reordering
/// the grafted word into the canonical decreasing-slot order.
inline std::pair<int, Tree> compose_monomial(const Tree& a, int i, const Tree& b) {
    if (a.is_leaf()) {
        if (i != 1) throw std::out_of_range("compose: slot out of range");
        return {+1, b};
    }
    if (b.is_leaf()) {
        if (i < 1 || i > leaf_count(a)) throw std::out_of_range("compose: slot out of range");
        return {+1, a};
    }
    const bool tail_odd = detail::word_tail_parity(a, i);
    const bool b_odd = (cell_degree(b) & 1) != 0;
    return {tail_odd && b_odd ? -1 : +1, graft(a, i, b)};
}

/// Bilinear extension of monomial grafting with Koszul signs.
inline ChainElement compose_chain(const ChainElement& a, int i, const ChainElement& b) {
    ChainElement out;
    for (const auto& [ka, ca] : a.terms()) {
        const Tree ta = parse_tree(ka);
        for (const auto& [kb, cb] : b.terms()) {
            auto [sign, t] = compose_monomial(ta, i, parse_tree(kb));
            out.add(t, ca * cb * sign);
        }
    }
    return out;
}

/// Canonical decomposition of a basis monomial: the root generator, then the
/// non-black-cork child subtrees by decreasing slot.
struct Decomposition {
    Generator root;
    std::vector<std::pair<int, Decomposition>> subs;
};

inline Decomposition decompose(const Tree& t) {
    if (t.is_leaf()) throw std::invalid_argument("decompose: the unit has no decomposition");
    if (!is_cell_tree(t)) throw std::invalid_argument("decompose: not a cell tree");
    if (t.is_white_cork()) return {Generator(0, 1, {1}), {}};
    CorkSet s;
    int pos = 0;
    for (const Tree& c : t.children()) {
        ++pos;
        if (c.is_black_cork()) s.push_back(pos);
    }
    const int k = static_cast<int>(t.children().size());
    const int m = static_cast<int>(s.size());
    Decomposition d{Generator(k - m, m, std::move(s)), {}};
    int slot = 0;
    std::vector<std::pair<int, Decomposition>> subs;
    for (const Tree& c : t.children()) {
        if (c.is_black_cork()) continue;
        ++slot;
        if (c.is_leaf()) continue;
        subs.emplace_back(slot, decompose(c));
    }
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) d.subs.push_back(std::move(*it));
    return d;
}

/// Replays a decomposition through compose_chain; equals +μ_T by
/// construction of the canonical order.
inline ChainElement recompose(const Decomposition& d) {
    ChainElement acc = ChainElement::monomial(d.root.tree());
    for (const auto& [slot, sub] : d.subs) acc = compose_chain(acc, slot, recompose(sub));
    return acc;
}

/// The differential of the chain operad under a pluggable sign convention:
/// defined on generators by the signed sum over splittings and extended as a
/// degree −1 derivation. Memoizes per monomial.
class Differential {
public:
    explicit Differential(SignConvention conv = SignConvention::validated_default())
        : conv_(conv) {}

    const SignConvention& convention() const { return conv_; }

    ChainElement of_generator(const Generator& g) const {
        const int n = g.arity, m = g.corks;
        if (n == 1 && m == 1) {
            // d(μ_{1+1}^{i}) = μ_{2+0}∘ᵢμ_{0+1} − u, up to the global orientation
            const int i = g.positions[0];
            const int eps = conv_.sign(2, 0, 0, 1, i, 1);
            ChainElement out;
            auto [sg, t] = compose_monomial(Generator(2, 0, {}).tree(), i,
                                            Generator(0, 1, {1}).tree());
            out.add(t, eps * sg);
            out.add(Tree::leaf(), -eps);
            return out;
        }
        ChainElement out;
        for (int p = 1; p <= n + 1; ++p) {
            const int q = n + 1 - p;
            for (int s = 0; s <= m; ++s) {
                const int t = m - s;
                if (p == 1 && s == 0) continue;           // μ_{1+0} excluded
                if (q == 0 && t == 0) continue;           // μ_{0+0} excluded
                if (q == 1 && t == 0) continue;           // μ_{1+0} excluded
                for (int i = 1; i <= p; ++i)
                    for_each_subset(p + s, s, [&](const CorkSet& s1) {
                        const int r = find_r(s1, i);
                        for_each_subset(q + t, t, [&](const CorkSet& s2) {
                            if (p_compose(s1, p + s, i, s2, q + t).first != g.positions)
                                return;
                            const Tree term = graft(Generator(p, s, s1).tree(), i,
                                                    Generator(q, t, s2).tree());
                            out.add(term, conv_.sign(p, q, s, t, i, r));
                        });
                    });
            }
        }
        return out;
    }

    ChainElement of_tree(const Tree& t) {
        const std::string key = serialize_tree(t);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        ChainElement result;
        if (!t.is_leaf()) {
            if (auto g = generator_of(t)) {
                result = of_generator(*g);
            } else {
                // split off the last-composed subtree: smallest slot whose
                // child is a white cork or internal
                int slot = 0;
                std::size_t split_pos = 0;
                for (std::size_t k = 0; k < t.children().size(); ++k) {
                    const Tree& c = t.children()[k];
                    if (c.is_black_cork()) continue;
                    ++slot;
                    if (!c.is_leaf()) {
                        split_pos = k;
                        break;
                    }
                }
                const Tree& b = t.children()[split_pos];
                std::vector<Tree> pruned(t.children());
                pruned[split_pos] = Tree::leaf();
                const Tree nt = Tree::internal(std::move(pruned));
                const int sign_n = (cell_degree(nt) & 1) ? -1 : +1;
                result = compose_chain(of_tree(nt), slot, ChainElement::monomial(b));
                result += compose_chain(ChainElement::monomial(nt), slot, of_tree(b))
                              .scaled(sign_n);
            }
        }
        memo_.emplace(key, result);
        return result;
    }

    ChainElement of_chain(const ChainElement& x) {
        ChainElement out;
        for (const auto& [key, coef] : x.terms())
            out += of_tree(parse_tree(key)).scaled(coef);
        return out;
    }

private:
    template <typename Fn>
    static void for_each_subset(int k, int size, Fn&& fn) {
        CorkSet subset(size);
        for (int j = 0; j < size; ++j) subset[j] = j + 1;
        if (size == 0) {
            fn(subset);
            return;
        }
        if (size > k) return;
        for (;;) {
            fn(subset);
            int j = size - 1;
            while (j >= 0 && subset[j] == k - size + j + 1) --j;
            if (j < 0) return;
            ++subset[j];
            for (int l = j + 1; l < size; ++l) subset[l] = subset[l - 1] + 1;
        }
    }

    SignConvention conv_;
    std::map<std::string, ChainElement> memo_;
};

/// All generators with n+2m ≤ max_weight, ordered by (weight, m, S).
inline std::vector<Generator> generators_up_to_weight(int max_weight) {
    std::vector<Generator> out;
    for (int weight = 2; weight <= max_weight; ++weight)
        for (int m = 0; 2 * m <= weight; ++m) {
            const int n = weight - 2 * m;
            if ((n == 0 && m == 0) || (n == 1 && m == 0)) continue;
            std::vector<CorkSet> subsets;
            CorkSet subset(m);
            for (int j = 0; j < m; ++j) subset[j] = j + 1;
            const int k = n + m;
            if (m == 0) {
                subsets.push_back({});
            } else if (m <= k) {
                for (;;) {
                    subsets.push_back(subset);
                    int j = m - 1;
                    while (j >= 0 && subset[j] == k - m + j + 1) --j;
                    if (j < 0) break;
                    ++subset[j];
                    for (int l = j + 1; l < m; ++l) subset[l] = subset[l - 1] + 1;
                }
            }
            for (auto& s : subsets) out.emplace_back(n, m, std::move(s));
        }
    return out;
}

struct ConventionCandidate {
    SignConvention convention;
    bool passes = false;
    std::string first_failure;  // generator name when failing
    ChainElement residual;      // d²(first failing generator)
};

struct ConventionReport {
    int max_weight = 0;
    std::vector<ConventionCandidate> candidates;      // all 64 shifts, lex order
    std::optional<SignConvention> validated;          // lex-first passing
};

/// Checks d∘d = 0 for every generator with n+2m ≤ max_weight across the
/// whole shift family, in lexicographic order of the shift vector.
inline ConventionReport validate_sign_convention(int max_weight) {
    if (max_weight < 4)
        throw std::invalid_argument("validate_sign_convention: range must be at least 4");
    ConventionReport report;
    report.max_weight = max_weight;
    const std::vector<Generator> gens = generators_up_to_weight(max_weight);
    for (int mask = 0; mask < 64; ++mask) {
        SignConvention conv;
        for (int j = 0; j < 6; ++j) conv.shift[j] = (mask >> (5 - j)) & 1;
        ConventionCandidate cand;
        cand.convention = conv;
        cand.passes = true;
        Differential d(conv);
        for (const Generator& g : gens) {
            const ChainElement dd = d.of_chain(d.of_generator(g));
            if (!dd.is_zero()) {
                cand.passes = false;
                cand.first_failure = g.name();
                cand.residual = dd;
                break;
            }
        }
        if (cand.passes && !report.validated) report.validated = conv;
        report.candidates.push_back(std::move(cand));
    }
    return report;
}

}  // namespace uassoc
