#pragma once

// Laufer's algorithm for the numerical (fundamental) cycle of a negative
// definite connected configuration.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "curvelike/lattice.hpp"
#include "curvelike/props.hpp"

namespace curvelike {

inline constexpr std::size_t kLauferIterationCap = 10'000;

/// Minimal Z > 0 on `support` with Z.C <= 0 for every C in it. Starts at the
/// first curve of `priority` and always adds the first curve (in that order)
/// with Z.C > 0.
inline Divisor laufer_cycle(const ConfigPtr& config, std::span<const std::size_t> support,
                            std::span<const std::size_t> priority) {
    if (support.empty()) throw InvalidInput("numerical cycle of an empty support");
    std::vector<Int> mult(config->size(), 0);
    for (std::size_t i : support) {
        if (i >= config->size()) throw InvalidInput("support names an unknown curve");
        mult[i] = 1;
    }
    if (!is_connected(Divisor(config, mult))) throw PreconditionFailed("numerical cycle needs a connected support");
    if (!is_negative_definite(*config, support)) throw PreconditionFailed("numerical cycle needs a negative definite support");
    if (priority.size() != support.size()) throw InvalidInput("priority must order the support");

    std::vector<Int> z(config->size(), 0);
    z[priority.front()] = 1;
    for (std::size_t iter = 0;; ++iter) {
        if (iter > kLauferIterationCap) throw InternalError("Laufer iteration cap exceeded");
        bool added = false;
        for (std::size_t c : priority) {
            if (detail::curve_dot(*config, c, z) > 0) {
                ++z[c];
                added = true;
                break;
            }
        }
        if (!added) break;
    }
    for (std::size_t i : support) {
        if (z[i] == 0) throw InternalError("numerical cycle missed part of the support");
    }
    return Divisor(config, std::move(z));
}

inline Divisor laufer_cycle(const ConfigPtr& config, std::span<const std::size_t> support) {
    std::vector<std::size_t> order(support.begin(), support.end());
    std::sort(order.begin(), order.end());
    return laufer_cycle(config, order, order);
}

inline Divisor laufer_cycle(const ConfigPtr& config) {
    std::vector<std::size_t> all(config->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return laufer_cycle(config, all, all);
}

}  // namespace curvelike
