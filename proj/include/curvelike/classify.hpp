#pragma once

// Enumeration of minimal (-n)-divisors supported on trees.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "curvelike/canonical.hpp"
#include "curvelike/error.hpp"
#include "curvelike/lattice.hpp"
#include "curvelike/props.hpp"

namespace curvelike {

/// An unlabelled tree on vertices 0..vertices-1.
struct TreeTopology {
    std::size_t vertices = 1;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::vector<std::vector<std::size_t>> adjacency() const {
        std::vector<std::vector<std::size_t>> adj(vertices);
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return adj;
    }
};

namespace detail {

inline std::string ahu_encode(const std::vector<std::vector<std::size_t>>& adj, std::size_t u, std::size_t parent) {
    std::vector<std::string> kids;
    for (std::size_t w : adj[u]) {
        if (w != parent) kids.push_back(ahu_encode(adj, w, u));
    }
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    return s + ")";
}

}  // namespace detail

/// Isomorphism invariant of a tree: AHU encoding rooted at its centre(s).
inline std::string tree_code(const TreeTopology& t) {
    const auto adj = t.adjacency();
    std::vector<std::size_t> degree(t.vertices);
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < t.vertices; ++i) {
        degree[i] = adj[i].size();
        if (degree[i] <= 1) layer.push_back(i);
    }
    std::size_t remaining = t.vertices;
    while (remaining > 2) {
        remaining -= layer.size();
        std::vector<std::size_t> next;
        for (std::size_t u : layer) {
            for (std::size_t w : adj[u]) {
                if (--degree[w] == 1) next.push_back(w);
            }
        }
        layer = std::move(next);
    }
    std::string best;
    for (std::size_t c : layer) {
        std::string s = detail::ahu_encode(adj, c, npos);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

inline constexpr std::size_t kMaxTreeVertices = 8;

/// All unlabelled trees on v vertices, each once, ordered by tree_code.
inline std::vector<TreeTopology> free_trees(std::size_t v) {
    if (v < 1 || v > kMaxTreeVertices) {
        throw InvalidInput("tree vertex count must lie in [1, " + std::to_string(kMaxTreeVertices) + "]");
    }
    std::map<std::string, TreeTopology> level{{tree_code(TreeTopology{}), TreeTopology{}}};
    for (std::size_t size = 2; size <= v; ++size) {
        std::map<std::string, TreeTopology> next;
        for (const auto& [code, tree] : level) {
            for (std::size_t at = 0; at < tree.vertices; ++at) {
                TreeTopology grown = tree;
                grown.edges.emplace_back(at, grown.vertices);
                ++grown.vertices;
                next.try_emplace(tree_code(grown), std::move(grown));
            }
        }
        level = std::move(next);
    }
    std::vector<TreeTopology> out;
    for (auto& [code, tree] : level) out.push_back(std::move(tree));
    return out;
}

/// Rational curves on the tree labelled C1, C2, ... with unit intersections.
inline ConfigPtr tree_config(const TreeTopology& t, std::span<const Int> weights) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < t.vertices; ++i) labels.push_back("C" + std::to_string(i + 1));
    std::vector<Int> matrix(t.vertices * t.vertices, 0);
    for (std::size_t i = 0; i < t.vertices; ++i) matrix[i * t.vertices + i] = weights[i];
    for (auto [a, b] : t.edges) matrix[a * t.vertices + b] = matrix[b * t.vertices + a] = 1;
    return share(CurveConfig::from_matrix(std::move(labels), std::vector<Int>(t.vertices, 0), std::move(matrix)));
}

struct EnumerationParams {
    std::size_t vertices = 1;
    std::optional<TreeTopology> tree;
    Int n = 2;
    Int max_mult = 6;
    std::optional<Int> min_weight;
    std::size_t max_states = 20'000'000;

    Int lowest_weight() const { return min_weight.value_or(-(n + 1)); }

    void validate() const {
        if (tree) {
            if (tree->vertices < 1 || tree->edges.size() + 1 != tree->vertices) throw InvalidInput("tree topology is not a tree");
        } else if (vertices < 1 || vertices > kMaxTreeVertices) {
            throw InvalidInput("vertex count must lie in [1, " + std::to_string(kMaxTreeVertices) + "]");
        }
        if (n < 1) throw InvalidInput("n must be at least 1");
        if (max_mult < 1) throw InvalidInput("maximal multiplicity must be at least 1");
        if (lowest_weight() > -1) throw InvalidInput("minimal weight must be at most -1");
    }
};

/// A state of the multiplicity search: weights not yet pinned are absent.
struct PartialState {
    std::size_t tree_index;
    std::vector<Int> mult;
    std::vector<std::optional<Int>> weight;
};

struct EnumerationStats {
    std::size_t trees = 0;
    std::size_t states = 0;
    std::size_t pruned_positive = 0;    // removed: some subdivisor has A^2 >= 0 for every completion
    std::size_t weight_out_of_range = 0; // raises whose pinned weight left the grid
    std::size_t frontier = 0;           // raises blocked only by the multiplicity cap
    std::size_t completions = 0;        // full weight assignments examined
    std::size_t numerical_matches = 0;  // negatively filtered with D.K = n - 2
    std::size_t rejected_non_minimal = 0;
};

struct EnumerationResult {
    /// One representative per isomorphism class, relabelled in canonical
    /// order and sorted by canonical form.
    std::vector<Divisor> divisors;
    std::vector<std::string> forms;
    EnumerationStats stats;
    std::vector<TreeTopology> trees;
    /// A sample of states removed by the positivity prune.
    std::vector<PartialState> pruned_sample;
};

class EnumerationCapExceeded : public SearchSpaceTooLarge {
public:
    EnumerationCapExceeded(std::string branch, EnumerationResult partial)
        : SearchSpaceTooLarge("enumeration state cap exceeded; uncovered branch: " + branch),
          branch_(std::move(branch)),
          partial_(std::move(partial)) {}

    const std::string& branch() const noexcept { return branch_; }
    const EnumerationResult& partial() const noexcept { return partial_; }

private:
    std::string branch_;
    EnumerationResult partial_;
};

/// Curvelike with the given n, and minimal.
inline bool declarative_filter(const Divisor& d, Int n) {
    const auto v = is_curvelike(d);
    const auto* c = std::get_if<CurvelikeN>(&v);
    return c && c->n == n && minimality_report(d).minimal();
}

namespace detail {

class TreeEnumerator {
public:
    TreeEnumerator(const TreeTopology& tree, std::size_t tree_index, const EnumerationParams& params,
                   EnumerationResult& result, std::map<std::string, Divisor>& found, std::size_t sample_cap)
        : tree_(tree),
          adj_(tree.adjacency()),
          tree_index_(tree_index),
          p_(params),
          min_w_(params.lowest_weight()),
          result_(result),
          found_(found),
          sample_cap_(sample_cap) {}

    void run() {
        PartialState start{tree_index_, std::vector<Int>(tree_.vertices, 1),
                           std::vector<std::optional<Int>>(tree_.vertices)};
        if (has_nonnegative_subdivisor(start, npos)) {
            prune(start);
            return;
        }
        stack_.push_back(std::move(start));
        while (!stack_.empty()) {
            PartialState s = std::move(stack_.back());
            stack_.pop_back();
            if (!seen_.insert(key(s)).second) continue;
            if (++result_.stats.states > p_.max_states) {
                throw EnumerationCapExceeded("tree " + std::to_string(tree_index_) + " at multiplicities " + describe(s.mult),
                                             result_);
            }
            complete(s);
            expand(s);
        }
    }

private:
    std::vector<Int> key(const PartialState& s) const {
        std::vector<Int> k = s.mult;
        for (const auto& w : s.weight) k.push_back(w ? *w : 1);
        return k;
    }

    static std::string describe(const std::vector<Int>& m) {
        std::string s = "(";
        for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
        return s + ")";
    }

    Int neighbour_sum(const PartialState& s, std::size_t c) const {
        Int t = 0;
        for (std::size_t j : adj_[c]) t += s.mult[j];
        return t;
    }

    // Lower bound of A^2 over all weight completions (unknown weights at min).
    Int square_lower_bound(const PartialState& s, std::span<const Int> a) const {
        Int q = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            q += a[i] * a[i] * (s.weight[i] ? *s.weight[i] : min_w_);
            for (std::size_t j : adj_[i]) q += a[i] * a[j];
        }
        return q;
    }

    // Checks subdivisors A of the state with A_c = mult_c (all when c == npos).
    bool has_nonnegative_subdivisor(const PartialState& s, std::size_t c) const {
        const std::size_t v = s.mult.size();
        std::vector<Int> a(v, 0);
        std::vector<Int> bound = s.mult;
        if (c != npos) a[c] = s.mult[c];
        // Odometer over the free coordinates.
        while (true) {
            bool nonzero = std::any_of(a.begin(), a.end(), [](Int x) { return x != 0; });
            if (nonzero && square_lower_bound(s, a) >= 0) return true;
            std::size_t k = v;
            while (k > 0) {
                const std::size_t i = k - 1;
                if (i != c && a[i] < bound[i]) break;
                if (i != c) a[i] = 0;
                --k;
            }
            if (k == 0) return false;
            ++a[k - 1];
        }
    }

    void prune(const PartialState& s) {
        ++result_.stats.pruned_positive;
        if (result_.pruned_sample.size() < sample_cap_) result_.pruned_sample.push_back(s);
    }

    void expand(const PartialState& s) {
        for (std::size_t c = 0; c < s.mult.size(); ++c) {
            const Int k = s.mult[c];
            const Int nb = neighbour_sum(s, c);
            PartialState t = s;
            if (k == 1) {
                const Int w = 1 - nb;
                if (s.weight[c] && *s.weight[c] != w) continue;
                if (w < min_w_ || w > -1) {
                    ++result_.stats.weight_out_of_range;
                    continue;
                }
                t.weight[c] = w;
            } else if (k * *s.weight[c] + nb != 1) {
                continue;
            }
            if (k + 1 > p_.max_mult) {
                ++result_.stats.frontier;
                continue;
            }
            t.mult[c] = k + 1;
            if (seen_.contains(key(t))) continue;
            if (has_nonnegative_subdivisor(t, c)) {
                prune(t);
                continue;
            }
            stack_.push_back(std::move(t));
        }
    }

    void complete(const PartialState& s) {
        std::vector<std::size_t> unknown;
        std::vector<Int> w(s.mult.size());
        for (std::size_t i = 0; i < s.mult.size(); ++i) {
            if (s.weight[i]) w[i] = *s.weight[i];
            else {
                unknown.push_back(i);
                w[i] = min_w_;
            }
        }
        while (true) {
            check(s, w);
            std::size_t k = unknown.size();
            while (k > 0 && w[unknown[k - 1]] == -1) {
                w[unknown[k - 1]] = min_w_;
                --k;
            }
            if (k == 0) break;
            ++w[unknown[k - 1]];
        }
    }

    void check(const PartialState& s, const std::vector<Int>& w) {
        ++result_.stats.completions;
        // D.K = n - 2 with K.C = -2 - w for rational C.
        Int dk = 0;
        for (std::size_t i = 0; i < w.size(); ++i) dk += s.mult[i] * (-2 - w[i]);
        if (dk != p_.n - 2) return;
        const auto config = tree_config(tree_, w);
        const Divisor d(config, s.mult);
        if (!find_negative_filtration(d)) return;
        ++result_.stats.numerical_matches;
        if (!minimality_report(d).minimal()) {
            ++result_.stats.rejected_non_minimal;
            return;
        }
        if (!declarative_filter(d, p_.n)) throw InternalError("enumerated divisor fails the declarative filter: " + d.to_string());
        const Divisor canon = canonical_relabel(d);
        found_.try_emplace(canonicalize(canon), canon);
    }

    const TreeTopology& tree_;
    std::vector<std::vector<std::size_t>> adj_;
    std::size_t tree_index_;
    const EnumerationParams& p_;
    Int min_w_;
    EnumerationResult& result_;
    std::map<std::string, Divisor>& found_;
    std::size_t sample_cap_;
    std::vector<PartialState> stack_;
    std::unordered_set<std::vector<Int>, VectorHash> seen_;
};

}  // namespace detail

/// Incremental multiplicity search over tree topologies: start reduced, raise
/// one multiplicity at a time keeping a 1-decomposition, drop states with a
/// subdivisor of non-negative square, then fill the remaining weights and keep
/// negatively filtered minimal divisors with D.K = n - 2.
inline EnumerationResult enumerate_minimal(const EnumerationParams& params, std::size_t pruned_sample_cap = 0) {
    params.validate();
    EnumerationResult result;
    result.trees = params.tree ? std::vector<TreeTopology>{*params.tree} : free_trees(params.vertices);
    std::map<std::string, Divisor> found;
    for (std::size_t t = 0; t < result.trees.size(); ++t) {
        detail::TreeEnumerator(result.trees[t], t, params, result, found, pruned_sample_cap).run();
        ++result.stats.trees;
    }
    for (auto& [form, d] : found) {
        result.forms.push_back(form);
        result.divisors.push_back(d);
    }
    return result;
}

/// Fills the unknown weights of a state with the given values (in vertex order).
inline Divisor realize_state(const TreeTopology& tree, const PartialState& s, std::span<const Int> fill) {
    std::vector<Int> w(s.mult.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = s.weight[i] ? *s.weight[i] : fill[k++];
    return Divisor(tree_config(tree, w), s.mult);
}

}  // namespace curvelike
