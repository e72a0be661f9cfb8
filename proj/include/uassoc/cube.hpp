#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "uassoc/numeric.hpp"

namespace uassoc {

/// A point of [0,1]^n with exact rational coordinates.
using CubePoint = std::vector<Rational>;

inline void check_unit_interval(const CubePoint& x) {
    for (const Rational& c : x)
        if (c < 0 || c > 1) throw std::invalid_argument("coordinate outside [0,1]");
}

/// ∂ᵢ^±: inserts 0 (negative) or 1 (positive) at position i, 1 ≤ i ≤ |x|+1.
inline CubePoint apply_face(bool positive, int i, const CubePoint& x) {
    const int n = static_cast<int>(x.size()) + 1;
    if (i < 1 || i > n) throw std::out_of_range("apply_face: index out of range");
    CubePoint y(x);
    y.insert(y.begin() + (i - 1), positive ? Rational(1) : Rational(0));
    return y;
}

/// πᵢ: deletes coordinate i, 1 ≤ i ≤ |x|.
inline CubePoint apply_degeneracy(int i, const CubePoint& x) {
    if (i < 1 || i > static_cast<int>(x.size()))
        throw std::out_of_range("apply_degeneracy: index out of range");
    CubePoint y(x);
    y.erase(y.begin() + (i - 1));
    return y;
}

/// γᵢ: replaces (xᵢ, xᵢ₊₁) by max(xᵢ, xᵢ₊₁), 1 ≤ i < |x|.
inline CubePoint apply_connection(int i, const CubePoint& x) {
    if (i < 1 || i + 1 > static_cast<int>(x.size()))
        throw std::out_of_range("apply_connection: index out of range");
    CubePoint y;
    y.reserve(x.size() - 1);
    y.insert(y.end(), x.begin(), x.begin() + (i - 1));
    y.push_back(std::max(x[i - 1], x[i]));
    y.insert(y.end(), x.begin() + i + 1, x.end());
    return y;
}

/// σᵢ: (x₁..x_{i−1}, y₁..y_t, x_i..x_s), 1 ≤ i ≤ s+1.
inline CubePoint apply_shuffle(int i, const CubePoint& x, const CubePoint& y) {
    if (i < 1 || i > static_cast<int>(x.size()) + 1)
        throw std::out_of_range("apply_shuffle: index out of range");
    CubePoint z;
    z.reserve(x.size() + y.size());
    z.insert(z.end(), x.begin(), x.begin() + (i - 1));
    z.insert(z.end(), y.begin(), y.end());
    z.insert(z.end(), x.begin() + (i - 1), x.end());
    return z;
}

}  // namespace uassoc
