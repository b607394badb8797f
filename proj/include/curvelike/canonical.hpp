#pragma once

// Canonical forms of divisors up to relabelling of their curves.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "curvelike/lattice.hpp"

namespace curvelike {

struct CanonicalLimits {
    std::size_t max_curves = 12;
    std::size_t max_permutations = 10'000'000;
};

struct CanonicalForm {
    std::string form;
    /// Support indices of the input in canonical position order.
    std::vector<std::size_t> order;
};

namespace detail {

using Signature = std::vector<Int>;

// Ranks signatures so that colours do not depend on the input order.
inline std::vector<std::size_t> rank(const std::vector<Signature>& sigs) {
    std::vector<Signature> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> out;
    for (const auto& s : sigs) {
        out.push_back(static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin()));
    }
    return out;
}

inline std::string encode(const CurveConfig& cfg, std::span<const Int> mult, std::span<const std::size_t> pos) {
    std::string s = "v" + std::to_string(pos.size()) + ";";
    for (std::size_t i : pos) {
        s += std::to_string(cfg.weight(i)) + "," + std::to_string(cfg.genus(i)) + "," + std::to_string(mult[i]) + ";";
    }
    s += "|";
    for (std::size_t a = 0; a < pos.size(); ++a) {
        for (std::size_t b = a + 1; b < pos.size(); ++b) {
            const Int p = cfg.pair(pos[a], pos[b]);
            if (p != 0) s += std::to_string(a) + "-" + std::to_string(b) + ":" + std::to_string(p) + ";";
        }
    }
    return s;
}

}  // namespace detail

/// Canonical form of D restricted to its support: colour refinement on
/// (weight, genus, multiplicity, intersections), then the lexicographically
/// smallest encoding over all colour-respecting orderings.
inline CanonicalForm canonical_form(const Divisor& d, CanonicalLimits limits = {}) {
    const auto& cfg = d.config();
    const auto supp = d.support();
    const std::size_t n = supp.size();
    if (n > limits.max_curves) {
        throw SearchSpaceTooLarge("canonical form limited to " + std::to_string(limits.max_curves) + " curves");
    }
    std::vector<detail::Signature> sigs(n);
    for (std::size_t a = 0; a < n; ++a) {
        sigs[a] = {cfg.weight(supp[a]), cfg.genus(supp[a]), d[supp[a]]};
        std::vector<Int> pairs;
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b && cfg.pair(supp[a], supp[b]) != 0) pairs.push_back(cfg.pair(supp[a], supp[b]));
        }
        std::sort(pairs.begin(), pairs.end());
        sigs[a].insert(sigs[a].end(), pairs.begin(), pairs.end());
    }
    std::vector<std::size_t> colour = detail::rank(sigs);
    for (std::size_t round = 0; round < n; ++round) {
        std::vector<detail::Signature> next(n);
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<std::pair<Int, Int>> nb;
            for (std::size_t b = 0; b < n; ++b) {
                if (a != b && cfg.pair(supp[a], supp[b]) != 0) {
                    nb.emplace_back(cfg.pair(supp[a], supp[b]), static_cast<Int>(colour[b]));
                }
            }
            std::sort(nb.begin(), nb.end());
            next[a] = {static_cast<Int>(colour[a])};
            for (auto [p, c] : nb) {
                next[a].push_back(p);
                next[a].push_back(c);
            }
        }
        auto refined = detail::rank(next);
        const bool stable = std::set<std::size_t>(refined.begin(), refined.end()).size() ==
                            std::set<std::size_t>(colour.begin(), colour.end()).size();
        colour = std::move(refined);
        if (stable) break;
    }

    // Group positions by colour; permute within each class.
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t a = 0; a < n; ++a) classes[colour[a]].push_back(supp[a]);
    std::vector<std::vector<std::size_t>> groups;
    std::size_t perms = 1;
    for (auto& [c, members] : classes) {
        for (std::size_t k = 2; k <= members.size(); ++k) {
            perms *= k;
            if (perms > limits.max_permutations) throw SearchSpaceTooLarge("canonical form permutation cap exceeded");
        }
        groups.push_back(members);
    }

    std::string best;
    std::vector<std::size_t> best_order;
    std::vector<std::size_t> pos;
    auto recurse = [&](auto&& self, std::size_t g) -> void {
        if (g == groups.size()) {
            std::string s = detail::encode(cfg, d.mult(), pos);
            if (best_order.empty() || s < best) {
                best = std::move(s);
                best_order = pos;
            }
            return;
        }
        auto members = groups[g];
        std::sort(members.begin(), members.end());
        do {
            pos.insert(pos.end(), members.begin(), members.end());
            self(self, g + 1);
            pos.resize(pos.size() - members.size());
        } while (std::next_permutation(members.begin(), members.end()));
    };
    recurse(recurse, 0);
    return {best, best_order};
}

inline std::string canonicalize(const Divisor& d) { return canonical_form(d).form; }

inline bool is_isomorphic(const Divisor& a, const Divisor& b) { return canonicalize(a) == canonicalize(b); }

/// D restricted to its support and relabelled <prefix>1, <prefix>2, ... in
/// canonical order.
inline Divisor canonical_relabel(const Divisor& d, const std::string& prefix = "C") {
    const auto cf = canonical_form(d);
    const auto& cfg = d.config();
    std::vector<std::string> labels;
    std::vector<Int> genus, matrix, mult;
    for (std::size_t k = 0; k < cf.order.size(); ++k) {
        const std::size_t i = cf.order[k];
        labels.push_back(prefix + std::to_string(k + 1));
        genus.push_back(cfg.genus(i));
        mult.push_back(d[i]);
        for (std::size_t j : cf.order) matrix.push_back(cfg.pair(i, j));
    }
    return Divisor(share(CurveConfig::from_matrix(std::move(labels), std::move(genus), std::move(matrix))),
                   std::move(mult));
}

}  // namespace curvelike
