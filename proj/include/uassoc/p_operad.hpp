#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace uassoc {

/// A cork-position set S = {j₁ < … < j_m} ⊆ [arity].
using CorkSet = std::vector<int>;

inline void check_cork_set(const CorkSet& s, int arity) {
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] < 1 || s[k] > arity)
            throw std::out_of_range("cork set element out of range");
        if (k > 0 && s[k] <= s[k - 1])
            throw std::invalid_argument("cork set must be strictly increasing");
    }
}

/// The index r such that the i-th element of the complement of S₁ lies
/// between j_{r−1} and j_r, with r = 1 before j₁ and r = |S₁|+1 after j_s.
inline int find_r(const CorkSet& s1, int i) {
    if (i < 1) throw std::out_of_range("find_r: slot must be positive");
    // c = i-th positive integer not in s1
    int c = 0, seen = 0;
    std::size_t k = 0;
    while (seen < i) {
        ++c;
        if (k < s1.size() && s1[k] == c) { ++k; continue; }
        ++seen;
    }
    int r = 1;
    for (int j : s1)
        if (j < c) ++r;
    return r;
}

/// (S₁,p+s)∘ᵢ(S₂,q+t) = (S₁∘ᵢS₂, p+s+q+t−1): the cork set of the height-2
/// tree obtained by grafting the two decorated corollas and contracting the
/// new inner edge.
inline std::pair<CorkSet, int> p_compose(const CorkSet& s1, int arity1, int i,
                                         const CorkSet& s2, int arity2) {
    check_cork_set(s1, arity1);
    check_cork_set(s2, arity2);
    const int p = arity1 - static_cast<int>(s1.size());
    if (i < 1 || i > p) throw std::out_of_range("p_compose: slot out of range");
    const int r = find_r(s1, i);
    const int qt = arity2;
    CorkSet out;
    out.reserve(s1.size() + s2.size());
    for (int j : s1)
        if (j < i + r - 1) out.push_back(j);
    for (int k : s2) out.push_back(k + i + r - 2);
    for (int j : s1)
        if (j >= i + r - 1) out.push_back(j + qt - 1);
    return {std::move(out), arity1 + arity2 - 1};
}

}  // namespace uassoc
