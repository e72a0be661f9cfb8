#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uassoc/chain.hpp"
#include "uassoc/enumerate.hpp"
#include "uassoc/numeric.hpp"
#include "uassoc/tree.hpp"

namespace uassoc {

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Cellular chain complex of a cork-filtration stage: per-degree ordered
/// bases of cell trees and the integer boundary matrices between them.
struct ChainComplexSlice {
    int arity = 0;
    int max_corks = 0;
    SignConvention convention;
    std::vector<std::vector<Tree>> basis;  // basis[k]: degree-k cells, sorted by text
    std::vector<IntMatrix> boundary;       // boundary[k]: C_k -> C_{k-1}, k >= 1
};

inline std::vector<long> f_vector(int n, int max_corks) {
    std::vector<long> f;
    for (const Tree& t : enumerate_cell_trees(n, max_corks, true)) {
        const int d = cell_degree(t);
        if (static_cast<int>(f.size()) <= d) f.resize(d + 1, 0);
        ++f[d];
    }
    return f;
}

inline ChainComplexSlice build_complex(int n, int max_corks, const SignConvention& conv) {
    ChainComplexSlice slice;
    slice.arity = n;
    slice.max_corks = max_corks;
    slice.convention = conv;
    const std::vector<Tree> cells = enumerate_cell_trees(n, max_corks, true);
    int maxdeg = -1;
    for (const Tree& t : cells) maxdeg = std::max(maxdeg, cell_degree(t));
    slice.basis.resize(maxdeg + 1);
    for (const Tree& t : cells) slice.basis[cell_degree(t)].push_back(t);

    std::vector<std::map<std::string, int>> index(maxdeg + 1);
    for (int k = 0; k <= maxdeg; ++k)
        for (std::size_t j = 0; j < slice.basis[k].size(); ++j)
            index[k].emplace(serialize_tree(slice.basis[k][j]), static_cast<int>(j));

    slice.boundary.resize(maxdeg + 1);
    Differential d(conv);
    for (int k = 1; k <= maxdeg; ++k) {
        IntMatrix mat(slice.basis[k - 1].size(),
                      std::vector<BigInt>(slice.basis[k].size(), 0));
        for (std::size_t col = 0; col < slice.basis[k].size(); ++col) {
            const ChainElement dcol = d.of_tree(slice.basis[k][col]);
            for (const auto& [key, coef] : dcol.terms()) {
                auto it = index[k - 1].find(key);
                if (it == index[k - 1].end())
                    throw std::logic_error("boundary left the truncation at " + key);
                mat[it->second][col] = coef;
            }
        }
        slice.boundary[k] = std::move(mat);
    }
    return slice;
}

inline long euler_characteristic(const ChainComplexSlice& slice) {
    long chi = 0;
    int sign = 1;
    for (const auto& b : slice.basis) {
        chi += sign * static_cast<long>(b.size());
        sign = -sign;
    }
    return chi;
}

struct SnfResult {
    std::vector<BigInt> invariants;  // d1 | d2 | ..., all positive
    int rank = 0;
};

/// Smith normal form by row/column reduction with minimal-absolute-value
/// pivoting, exact integer arithmetic throughout.
inline SnfResult smith_normal_form(IntMatrix a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    auto abs_of = [](const BigInt& x) { return x < 0 ? BigInt(-x) : x; };
    SnfResult out;
    int t = 0;
    while (t < rows && t < cols) {
        int pi = -1, pj = -1;
        BigInt best;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (a[i][j] != 0) {
                    BigInt v = abs_of(a[i][j]);
                    if (pi < 0 || v < best) {
                        best = std::move(v);
                        pi = i;
                        pj = j;
                    }
                }
        if (pi < 0) break;
        std::swap(a[t], a[pi]);
        for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
        for (;;) {
            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                const BigInt q = a[i][t] / a[t][t];
                if (q != 0)
                    for (int j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);  // remainder is strictly smaller
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                const BigInt q = a[t][j] / a[t][t];
                if (q != 0)
                    for (int i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // enforce divisibility of the remaining block by the pivot
            bool divisible = true;
            for (int i = t + 1; i < rows && divisible; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (int jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        out.invariants.push_back(abs_of(a[t][t]));
        ++t;
    }
    out.rank = static_cast<int>(out.invariants.size());
    return out;
}

struct HomologyDegree {
    int degree = 0;
    long betti = 0;
    std::vector<BigInt> torsion;  // coefficients > 1, each dividing the next
};

struct HomologySummary {
    std::vector<HomologyDegree> degrees;
};

/// Integer homology from SNF ranks and invariant factors. Verifies that
/// consecutive boundary matrices compose to zero first.
inline HomologySummary homology_summary(const ChainComplexSlice& slice) {
    const int top = static_cast<int>(slice.basis.size()) - 1;
    for (int k = 1; k + 1 <= top; ++k) {
        const IntMatrix& d1 = slice.boundary[k];
        const IntMatrix& d2 = slice.boundary[k + 1];
        for (std::size_t col = 0; col < slice.basis[k + 1].size(); ++col)
            for (std::size_t row = 0; row < slice.basis[k - 1].size(); ++row) {
                BigInt acc = 0;
                for (std::size_t mid = 0; mid < slice.basis[k].size(); ++mid)
                    acc += d1[row][mid] * d2[mid][col];
                if (acc != 0)
                    throw std::runtime_error(
                        "d^2 != 0 at basis element " +
                        serialize_tree(slice.basis[k + 1][col]));
            }
    }
    std::vector<SnfResult> snf(top + 2);
    for (int k = 1; k <= top; ++k) snf[k] = smith_normal_form(slice.boundary[k]);
    HomologySummary out;
    for (int k = 0; k <= top; ++k) {
        HomologyDegree h;
        h.degree = k;
        const int rank_k = k >= 1 ? snf[k].rank : 0;
        const int rank_k1 = k + 1 <= top ? snf[k + 1].rank : 0;
        h.betti = static_cast<long>(slice.basis[k].size()) - rank_k - rank_k1;
        if (k + 1 <= top)
            for (const BigInt& dinv : snf[k + 1].invariants)
                if (dinv > 1) h.torsion.push_back(dinv);
        out.degrees.push_back(std::move(h));
    }
    return out;
}

/// Betti numbers over F_p, for cross-checking the integer results.
inline std::vector<long> betti_mod_p(const ChainComplexSlice& slice, const BigInt& p) {
    auto rank_mod = [&](const IntMatrix& m) -> int {
        if (m.empty() || m[0].empty()) return 0;
        const int rows = static_cast<int>(m.size());
        const int cols = static_cast<int>(m[0].size());
        std::vector<std::vector<BigInt>> a(m);
        for (auto& row : a)
            for (auto& x : row) {
                x %= p;
                if (x < 0) x += p;
            }
        int rank = 0;
        for (int col = 0; col < cols && rank < rows; ++col) {
            int pivot = -1;
            for (int i = rank; i < rows; ++i)
                if (a[i][col] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(a[rank], a[pivot]);
            const BigInt inv = boost::multiprecision::powm(a[rank][col], p - 2, p);
            for (int j = col; j < cols; ++j) a[rank][j] = a[rank][j] * inv % p;
            for (int i = 0; i < rows; ++i) {
                if (i == rank || a[i][col] == 0) continue;
                const BigInt f = a[i][col];
                for (int j = col; j < cols; ++j) {
                    a[i][j] = (a[i][j] - f * a[rank][j]) % p;
                    if (a[i][j] < 0) a[i][j] += p;
                }
            }
            ++rank;
        }
        return rank;
    };
    const int top = static_cast<int>(slice.basis.size()) - 1;
    std::vector<int> ranks(top + 2, 0);
    for (int k = 1; k <= top; ++k) ranks[k] = rank_mod(slice.boundary[k]);
    std::vector<long> betti(top + 1, 0);
    for (int k = 0; k <= top; ++k)
        betti[k] = static_cast<long>(slice.basis[k].size()) - ranks[k] -
                   (k + 1 <= top ? ranks[k + 1] : 0);
    return betti;
}

}  // namespace uassoc
