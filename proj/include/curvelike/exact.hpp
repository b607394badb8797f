#pragma once

// Exact linear algebra on Gram matrices: fraction-free determinants and the
// signature of a symmetric integer form.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "curvelike/lattice.hpp"

namespace curvelike {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Signature triple of a symmetric form.
struct Inertia {
    std::size_t positives = 0;
    std::size_t zeros = 0;
    std::size_t negatives = 0;

    std::size_t dimension() const noexcept { return positives + zeros + negatives; }
    bool operator==(const Inertia&) const = default;

    std::string to_string() const {
        return "(" + std::to_string(positives) + "," + std::to_string(zeros) + "," + std::to_string(negatives) + ")";
    }
};

/// Square integer matrix stored row-major.
struct IntMatrix {
    std::size_t n = 0;
    std::vector<Int> entries;

    Int at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

/// Gram matrix of the configuration restricted to `support` (in that order).
inline IntMatrix gram(const CurveConfig& cfg, std::span<const std::size_t> support) {
    IntMatrix m{support.size(), {}};
    m.entries.reserve(support.size() * support.size());
    for (std::size_t i : support) {
        for (std::size_t j : support) m.entries.push_back(cfg.pair(i, j));
    }
    return m;
}

inline std::vector<std::size_t> all_curves(const CurveConfig& cfg) {
    std::vector<std::size_t> s(cfg.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
    return s;
}

/// Leading principal minors det(M_1), ..., det(M_n) by Bareiss elimination
/// without pivoting. Stops at the first vanishing pivot: the returned vector is
/// then shorter than n and its last entry is zero.
inline std::vector<BigInt> leading_minors(const IntMatrix& m) {
    const std::size_t n = m.n;
    std::vector<BigInt> a(m.entries.begin(), m.entries.end());
    std::vector<BigInt> minors;
    BigInt prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        const BigInt pivot = a[k * n + k];
        minors.push_back(pivot);
        if (pivot == 0) break;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i * n + j] = (a[i * n + j] * pivot - a[i * n + k] * a[k * n + j]) / prev;
            }
        }
        prev = pivot;
    }
    return minors;
}

/// Sylvester: negative definite iff (-1)^k det(M_k) > 0 for every k.
inline bool sylvester_negative_definite(const IntMatrix& m) {
    if (m.n == 0) return false;
    const auto minors = leading_minors(m);
    if (minors.size() != m.n) return false;
    for (std::size_t k = 0; k < minors.size(); ++k) {
        const bool odd = (k + 1) % 2 == 1;
        if (odd ? minors[k] >= 0 : minors[k] <= 0) return false;
    }
    return true;
}

/// Signature by symmetric congruence diagonalization over the rationals.
inline Inertia inertia(const IntMatrix& m) {
    std::size_t n = m.n;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    }
    Inertia result;
    auto remove = [&a](std::vector<std::size_t> idx) {
        // Drop rows/columns idx (descending) from the working matrix.
        std::sort(idx.rbegin(), idx.rend());
        for (std::size_t r : idx) {
            a.erase(a.begin() + static_cast<std::ptrdiff_t>(r));
            for (auto& row : a) row.erase(row.begin() + static_cast<std::ptrdiff_t>(r));
        }
    };
    while (n > 0) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i][i] != 0) {
                p = i;
                break;
            }
        }
        if (p < n) {
            const Rational pivot = a[p][p];
            for (std::size_t r = 0; r < n; ++r) {
                if (r == p || a[r][p] == 0) continue;
                const Rational factor = a[r][p] / pivot;
                for (std::size_t s = 0; s < n; ++s) a[r][s] -= factor * a[p][s];
            }
            (pivot > 0 ? result.positives : result.negatives)++;
            remove({p});
            --n;
            continue;
        }
        // Zero diagonal: find an off-diagonal pair to form a hyperbolic block.
        std::size_t bi = n, bj = n;
        for (std::size_t i = 0; i < n && bi == n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (a[i][j] != 0) {
                    bi = i;
                    bj = j;
                    break;
                }
            }
        }
        if (bi == n) {
            result.zeros += n;
            break;
        }
        // Block [[0, b], [b, 0]] has signature (1, 0, 1). Eliminate the rest:
        // entry(r,s) -= (a_ri a_sj + a_rj a_si) / b.
        const Rational b = a[bi][bj];
        std::vector<std::size_t> rest;
        for (std::size_t r = 0; r < n; ++r) {
            if (r != bi && r != bj) rest.push_back(r);
        }
        std::vector<std::vector<Rational>> next(rest.size(), std::vector<Rational>(rest.size()));
        for (std::size_t x = 0; x < rest.size(); ++x) {
            for (std::size_t y = 0; y < rest.size(); ++y) {
                const std::size_t r = rest[x], s = rest[y];
                next[x][y] = a[r][s] - (a[r][bi] * a[s][bj] + a[r][bj] * a[s][bi]) / b;
            }
        }
        a = std::move(next);
        n = rest.size();
        result.positives++;
        result.negatives++;
    }
    return result;
}

inline Inertia inertia(const CurveConfig& cfg, std::span<const std::size_t> support) { return inertia(gram(cfg, support)); }

inline Inertia inertia(const CurveConfig& cfg) {
    const auto s = all_curves(cfg);
    return inertia(cfg, s);
}

}  // namespace curvelike
