#pragma once

// Realizability of weighted trees as dual graphs of reduced divisors on
// rational surfaces: a sufficient construction and the inertia obstruction.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curvelike/exact.hpp"
#include "curvelike/lattice.hpp"
#include "curvelike/script.hpp"
#include "curvelike/transforms.hpp"

namespace curvelike {

struct VertexExcess {
    std::size_t curve;
    Int weight;
    Int valency;
    Int sigma;  // weight + valency
};

struct BadnessReport {
    std::vector<VertexExcess> vertices;
    std::vector<std::size_t> bad;  // curves with sigma >= 1, ascending
    /// distances[a][b] between bad[a] and bad[b].
    std::vector<std::vector<std::size_t>> distances;

    std::size_t badness() const noexcept { return bad.size(); }
};

/// Connected, acyclic, and every intersection number is 0 or 1.
inline bool is_simple_tree(const CurveConfig& cfg) {
    if (cfg.size() == 0) return false;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        for (std::size_t j = i + 1; j < cfg.size(); ++j) {
            if (cfg.pair(i, j) > 1) return false;
        }
    }
    return is_tree(Divisor::reduced(share(cfg)));
}

inline std::vector<std::size_t> bfs_distances(const CurveConfig& cfg, std::size_t from) {
    std::vector<std::size_t> dist(cfg.size(), npos);
    std::queue<std::size_t> q;
    dist[from] = 0;
    q.push(from);
    while (!q.empty()) {
        const std::size_t u = q.front();
        q.pop();
        for (std::size_t w : cfg.neighbors(u)) {
            if (dist[w] == npos) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

inline BadnessReport badness_report(const CurveConfig& cfg) {
    if (!is_simple_tree(cfg)) throw InvalidInput("badness needs a tree with unit intersections");
    BadnessReport r;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        const Int v = static_cast<Int>(cfg.neighbors(i).size());
        r.vertices.push_back({i, cfg.weight(i), v, cfg.weight(i) + v});
        if (cfg.weight(i) + v >= 1) r.bad.push_back(i);
    }
    for (std::size_t a : r.bad) {
        const auto dist = bfs_distances(cfg, a);
        std::vector<std::size_t> row;
        for (std::size_t b : r.bad) row.push_back(dist[b]);
        r.distances.push_back(std::move(row));
    }
    return r;
}

/// Inertia with at least two positive directions: no surface carries it.
inline bool hodge_obstructed(const CurveConfig& cfg) { return cfg.size() > 0 && inertia(cfg).positives >= 2; }

struct ClosureStage {
    std::string contracted;  // empty for the initial stage
    ConfigPtr config;
    Inertia inertia;
};

struct ClosureResult {
    std::vector<ClosureStage> stages;
    /// First stage with two or more positive directions.
    std::optional<std::size_t> obstructed_at;

    const ConfigPtr& terminal() const { return stages.back().config; }
};

/// Contracts rational (-1)-curves, lowest index first, skipping the protected
/// labels, until none is left. Stops early at the first obstructed stage when
/// `short_circuit` is set.
inline ClosureResult contraction_closure(const ConfigPtr& config, const std::set<std::string>& protect = {},
                                         bool short_circuit = true) {
    for (const auto& l : protect) config->require_index(l);
    ClosureResult r;
    ConfigPtr cur = config;
    std::string last;
    while (true) {
        const Inertia in = cur->size() ? inertia(*cur) : Inertia{};
        r.stages.push_back({last, cur, in});
        if (in.positives >= 2 && !r.obstructed_at) {
            r.obstructed_at = r.stages.size() - 1;
            if (short_circuit) break;
        }
        std::optional<std::size_t> next;
        for (std::size_t i = 0; i < cur->size(); ++i) {
            if (cur->weight(i) == -1 && cur->genus(i) == 0 && !protect.contains(cur->label(i))) {
                next = i;
                break;
            }
        }
        if (!next) break;
        last = cur->label(*next);
        cur = contract(cur, *next).result;
    }
    return r;
}

/// A starting configuration and the blow-ups that build the target from it.
struct Construction {
    std::string seed;
    ConfigPtr seed_config;
    MoveScript script;
};

namespace detail {

inline ConfigPtr labelled_config(const std::vector<std::string>& labels, const std::vector<Int>& weights,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    const std::size_t n = labels.size();
    std::vector<Int> m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = weights[i];
    for (auto [a, b] : edges) m[a * n + b] = m[b * n + a] = 1;
    return share(CurveConfig::from_matrix(labels, std::vector<Int>(n, 0), std::move(m)));
}

}  // namespace detail

/// The case table of the sufficient criterion; builds the blow-up script when
/// a case applies.
inline std::optional<Construction> realizability_sufficient(const CurveConfig& cfg) {
    const BadnessReport r = badness_report(cfg);
    const std::size_t b = r.badness();
    const auto sigma = [&](std::size_t i) { return r.vertices[i].sigma; };
    std::vector<std::size_t> path;  // protected vertices
    if (b <= 1) {
        path = r.bad;
    } else if (b == 2) {
        const std::size_t d = r.distances[0][1];
        const Int s1 = sigma(r.bad[0]), s2 = sigma(r.bad[1]);
        const bool ok = (d == 1 && (s1 == 1 || s2 == 1 || (s1 == 2 && s2 == 2))) || (d == 2 && s1 == 1 && s2 == 1);
        if (!ok) return std::nullopt;
    } else if (b == 3) {
        for (std::size_t i : r.bad) {
            if (sigma(i) != 1) return std::nullopt;
        }
        std::size_t far = 0;
        for (const auto& row : r.distances) far = std::max(far, *std::max_element(row.begin(), row.end()));
        if (far != 2) return std::nullopt;
    } else {
        return std::nullopt;
    }
    if (b >= 2) {
        // Vertices on the paths between bad vertices.
        std::set<std::size_t> on_path;
        for (std::size_t x : r.bad) {
            for (std::size_t y : r.bad) {
                const auto dx = bfs_distances(cfg, x);
                const auto dy = bfs_distances(cfg, y);
                for (std::size_t v = 0; v < cfg.size(); ++v) {
                    if (dx[v] + dy[v] == dx[y]) on_path.insert(v);
                }
            }
        }
        path.assign(on_path.begin(), on_path.end());
        if (b == 3 && path.size() != 3) return std::nullopt;
    }

    // Raise good vertices to sigma = 0; the deficit is restored later by
    // generic blow-ups.
    const std::size_t n = cfg.size();
    std::vector<Int> weight(n);
    std::vector<Int> extra(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        weight[i] = cfg.weight(i);
        if (sigma(i) <= 0) {
            extra[i] = -sigma(i);
            weight[i] = -r.vertices[i].valency;
        }
    }
    std::vector<std::set<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : cfg.neighbors(i)) adj[i].insert(j);
    }
    std::vector<bool> alive(n, true);
    const std::set<std::size_t> protect(path.begin(), path.end());
    std::vector<std::pair<std::size_t, std::size_t>> removed;  // (leaf, neighbour)
    std::size_t left = n;
    while (left > 1) {
        std::optional<std::size_t> leaf;
        for (std::size_t i = 0; i < n; ++i) {
            if (alive[i] && !protect.contains(i) && adj[i].size() == 1 && weight[i] == -1) {
                leaf = i;
                break;
            }
        }
        if (!leaf) break;
        const std::size_t nb = *adj[*leaf].begin();
        removed.emplace_back(*leaf, nb);
        weight[nb] += 1;
        adj[nb].erase(*leaf);
        adj[*leaf].clear();
        alive[*leaf] = false;
        --left;
    }

    std::vector<std::size_t> core;
    for (std::size_t i = 0; i < n; ++i) {
        if (alive[i]) core.push_back(i);
    }
    // Order the core as a chain starting from an end.
    if (core.size() > 1) {
        std::size_t start = core.front();
        for (std::size_t i : core) {
            if (adj[i].size() == 1) {
                start = i;
                break;
            }
        }
        std::vector<std::size_t> chain{start};
        while (chain.size() < core.size()) {
            std::optional<std::size_t> step;
            for (std::size_t w : adj[chain.back()]) {
                if (chain.size() < 2 || w != chain[chain.size() - 2]) step = w;
            }
            if (!step) throw InternalError("core of the construction is not a chain");
            chain.push_back(*step);
        }
        core = std::move(chain);
    }
    std::vector<Int> cw;
    for (std::size_t i : core) cw.push_back(weight[i]);
    const auto label = [&](std::size_t i) { return cfg.label(i); };

    Construction out;
    MoveScript script;
    if (core.size() == 1 && cw[0] == 0) {
        out.seed = "quadric: 0-curve on P1xP1";
        out.seed_config = detail::labelled_config({label(core[0])}, {0}, {});
    } else if (core.size() == 1 && cw[0] > 0) {
        out.seed = "hirzebruch F" + std::to_string(cw[0]) + ": section of square " + std::to_string(cw[0]);
        out.seed_config = detail::labelled_config({label(core[0])}, {cw[0]}, {});
    } else if (core.size() == 2 && (cw[0] == 0 || cw[1] == 0)) {
        const Int m = cw[0] == 0 ? cw[1] : cw[0];
        out.seed = "hirzebruch F" + std::to_string(m) + ": fibre and section of square " + std::to_string(m);
        out.seed_config = detail::labelled_config({label(core[0]), label(core[1])}, cw, {{0, 1}});
    } else if (core.size() == 2 && cw[0] == 1 && cw[1] == 1) {
        out.seed = "plane: two lines";
        out.seed_config = detail::labelled_config({label(core[0]), label(core[1])}, {1, 1}, {{0, 1}});
    } else if (core.size() == 3 && cw[0] == 0 && cw[2] == 0 && (cw[1] == -1 || cw[1] == -2)) {
        out.seed = cw[1] == -1 ? "plane: two lines, blown up at their intersection"
                               : "plane: two lines, blown up at their intersection and on the new curve";
        out.seed_config = detail::labelled_config({label(core[0]), label(core[2])}, {1, 1}, {{0, 1}});
        script.push_back(Move::blow_up_intersection(label(core[0]), label(core[2]), label(core[1])));
        if (cw[1] == -2) {
            // The generic point is restored below as an auxiliary curve.
            ++extra[core[1]];
        }
    } else {
        throw InternalError("unexpected core after numerical contraction");
    }

    for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
        script.push_back(Move::blow_up_generic(label(it->second), label(it->first)));
    }
    std::set<std::string> used(cfg.labels().begin(), cfg.labels().end());
    std::size_t aux = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (Int k = 0; k < extra[i]; ++k) {
            std::string name;
            do {
                name = "X" + std::to_string(++aux);
            } while (used.contains(name));
            used.insert(name);
            script.push_back(Move::blow_up_generic(label(i), name));
        }
    }
    out.script = std::move(script);
    return out;
}

/// Replays a construction and compares the result on the target's labels.
inline bool construction_reproduces(const Construction& c, const CurveConfig& target) {
    const Presentation p = replay(Presentation{c.seed_config, std::nullopt}, c.script);
    std::vector<std::size_t> idx;
    for (const auto& l : target.labels()) {
        const auto i = p.config->index_of(l);
        if (!i) return false;
        idx.push_back(*i);
    }
    return same_presentation(subconfig(*p.config, idx), target);
}

struct RealizableWith {
    Construction construction;
};

struct Obstructed {
    std::size_t stage;
    ClosureResult closure;
};

struct Unknown {
    std::string reason;
};

using RealizabilityVerdict = std::variant<RealizableWith, Obstructed, Unknown>;

struct RealizabilityReport {
    ConfigPtr config;
    Inertia inertia;
    std::optional<BadnessReport> badness;
    ClosureResult closure;
    RealizabilityVerdict verdict;
};

inline RealizabilityReport realize(const ConfigPtr& config, const std::set<std::string>& protect = {}) {
    RealizabilityReport rep{config, inertia(*config), std::nullopt, contraction_closure(config, protect, false),
                            Unknown{""}};
    if (rep.closure.obstructed_at) {
        rep.verdict = Obstructed{*rep.closure.obstructed_at, rep.closure};
        return rep;
    }
    if (!is_simple_tree(*config)) {
        rep.verdict = Unknown{"not a tree with unit intersections"};
        return rep;
    }
    rep.badness = badness_report(*config);
    if (auto c = realizability_sufficient(*config)) {
        if (!construction_reproduces(*c, *config)) throw InternalError("construction does not reproduce the tree");
        rep.verdict = RealizableWith{std::move(*c)};
    } else {
        rep.verdict = Unknown{"no sufficient case applies (b = " + std::to_string(rep.badness->badness()) + ")"};
    }
    return rep;
}

}  // namespace curvelike
