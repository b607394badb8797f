#pragma once

// Blow-ups, numerical contractions and twists on divisors.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "curvelike/lattice.hpp"
#include "curvelike/props.hpp"

namespace curvelike {

/// A point to blow up: a general point of one curve, or a transversal
/// intersection point of two curves.
struct BlowUpSite {
    std::size_t first;
    std::optional<std::size_t> second;

    static BlowUpSite generic(std::size_t curve) { return {curve, std::nullopt}; }
    static BlowUpSite intersection(std::size_t a, std::size_t b) { return {a, b}; }

    bool is_intersection() const noexcept { return second.has_value(); }
    bool operator==(const BlowUpSite&) const = default;
};

struct BlowUp {
    ConfigPtr source;
    ConfigPtr result;
    BlowUpSite site;
    std::size_t exceptional;

    /// Total transform: the exceptional curve picks up the multiplicities of
    /// the curves through the site.
    Divisor pullback(const Divisor& d) const {
        if (!(d.config_ptr() == source || d.config() == *source)) throw ConfigMismatch();
        std::vector<Int> mult(d.mult().begin(), d.mult().end());
        Int e = d[site.first];
        if (site.second) e += d[*site.second];
        mult.push_back(e);
        return Divisor(result, std::move(mult));
    }

    /// Drops the exceptional coefficient.
    Divisor pushforward(const Divisor& d) const {
        if (!(d.config_ptr() == result || d.config() == *result)) throw ConfigMismatch();
        std::vector<Int> mult(d.mult().begin(), d.mult().end() - 1);
        return Divisor(source, std::move(mult));
    }
};

inline BlowUp blow_up(const ConfigPtr& config, BlowUpSite site, std::optional<std::string> label = std::nullopt) {
    const auto& cfg = *config;
    const std::size_t n = cfg.size();
    if (site.first >= n || (site.second && *site.second >= n)) throw InvalidInput("blow-up site names an unknown curve");
    if (site.second) {
        if (*site.second == site.first) throw InvalidInput("intersection site needs two distinct curves");
        if (cfg.pair(site.first, *site.second) < 1) {
            throw InvalidInput("curves '" + cfg.label(site.first) + "' and '" + cfg.label(*site.second) + "' do not meet");
        }
    }
    std::string name = label ? *label : cfg.fresh_label("E");
    if (cfg.index_of(name)) throw InvalidInput("label '" + name + "' already in use");

    std::vector<std::string> labels = cfg.labels();
    labels.push_back(name);
    std::vector<Int> genus(n + 1, 0), matrix((n + 1) * (n + 1), 0);
    for (std::size_t i = 0; i < n; ++i) {
        genus[i] = cfg.genus(i);
        for (std::size_t j = 0; j < n; ++j) matrix[i * (n + 1) + j] = cfg.pair(i, j);
    }
    auto touch = [&](std::size_t i) {
        matrix[i * (n + 1) + i] -= 1;
        matrix[i * (n + 1) + n] = matrix[n * (n + 1) + i] = 1;
    };
    touch(site.first);
    if (site.second) {
        touch(*site.second);
        matrix[site.first * (n + 1) + *site.second] -= 1;
        matrix[*site.second * (n + 1) + site.first] -= 1;
    }
    matrix[n * (n + 1) + n] = -1;
    auto result = share(CurveConfig::from_matrix(std::move(labels), std::move(genus), std::move(matrix)));
    return BlowUp{config, std::move(result), site, n};
}

struct Contraction {
    ConfigPtr source;
    ConfigPtr result;
    std::size_t removed;
    /// Source index -> result index, npos for the removed curve.
    std::vector<std::size_t> index_map;

    Divisor pushforward(const Divisor& d) const {
        if (!(d.config_ptr() == source || d.config() == *source)) throw ConfigMismatch();
        std::vector<Int> mult;
        mult.reserve(result->size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i != removed) mult.push_back(d[i]);
        }
        return Divisor(result, std::move(mult));
    }

    /// Total transform back to the source: the removed curve gets sum d_j (C_j.E).
    Divisor pullback(const Divisor& d) const {
        if (!(d.config_ptr() == result || d.config() == *result)) throw ConfigMismatch();
        std::vector<Int> mult(source->size(), 0);
        Int e = 0;
        for (std::size_t i = 0; i < source->size(); ++i) {
            if (i == removed) continue;
            mult[i] = d[index_map[i]];
            e += mult[i] * source->pair(i, removed);
        }
        mult[removed] = e;
        return Divisor(source, std::move(mult));
    }
};

/// Numerical contraction of a rational (-1)-curve.
inline Contraction contract(const ConfigPtr& config, std::size_t e) {
    const auto& cfg = *config;
    if (e >= cfg.size()) throw InvalidInput("contraction of an unknown curve");
    if (cfg.weight(e) != -1) {
        throw PreconditionFailed("cannot contract '" + cfg.label(e) + "': weight " + std::to_string(cfg.weight(e)) + " != -1");
    }
    if (cfg.genus(e) != 0) throw PreconditionFailed("cannot contract '" + cfg.label(e) + "': genus != 0");
    const std::size_t n = cfg.size();
    std::vector<std::size_t> index_map(n, npos);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == e) continue;
        index_map[i] = keep.size();
        keep.push_back(i);
    }
    std::vector<std::string> labels;
    std::vector<Int> genus, matrix;
    for (std::size_t i : keep) {
        labels.push_back(cfg.label(i));
        genus.push_back(cfg.genus(i));
        for (std::size_t j : keep) matrix.push_back(cfg.pair(i, j) + cfg.pair(i, e) * cfg.pair(j, e));
    }
    auto result = share(CurveConfig::from_matrix(std::move(labels), std::move(genus), std::move(matrix)));
    return Contraction{config, std::move(result), e, std::move(index_map)};
}

/// A rational (-1)-curve of D with D.E = 0.
inline bool contractible_in(const Divisor& d, std::size_t i) {
    const auto& cfg = d.config();
    return i < d.size() && cfg.weight(i) == -1 && cfg.genus(i) == 0 && d[i] >= 1 &&
           detail::curve_dot(cfg, i, d.mult()) == 0;
}

inline bool twistable_off(const Divisor& d, std::size_t i) {
    const auto& cfg = d.config();
    return i < d.size() && cfg.weight(i) == -2 && cfg.genus(i) == 0 && d[i] >= 1 &&
           detail::curve_dot(cfg, i, d.mult()) == -1;
}

namespace detail {

inline void check_curvelike_preserved(const Divisor& before, const Divisor& after, Int expected_n) {
    const auto n = curvelike_n(before);
    if (!n) return;
    const auto m = curvelike_n(after);
    if (!m || *m != expected_n) throw InternalError("twist did not produce a curvelike divisor with the expected degree");
}

}  // namespace detail

/// D - C for a rational (-2)-curve C of D with D.C = -1.
inline Divisor twist_off(const Divisor& d, std::size_t i) {
    const auto& cfg = d.config();
    if (i >= d.size()) throw InvalidInput("twist-off of an unknown curve");
    const std::string name = "'" + cfg.label(i) + "'";
    if (cfg.weight(i) != -2) throw PreconditionFailed("twist-off needs " + name + "^2 = -2");
    if (cfg.genus(i) != 0) throw PreconditionFailed("twist-off needs " + name + " rational");
    if (d[i] < 1) throw PreconditionFailed("twist-off needs " + name + " in D");
    const Int deg = detail::curve_dot(cfg, i, d.mult());
    if (deg != -1) throw PreconditionFailed("twist-off needs D." + name + " = -1, got " + std::to_string(deg));
    Divisor out = d.with(i, d[i] - 1);
    detail::check_curvelike_preserved(d, out, -self_intersection(d));
    return out;
}

/// D + C for a rational curve C with C^2 = -m <= -2 and D.C = 1; the result
/// is a (-n-m+2)-divisor.
inline Divisor twist_on(const Divisor& d, std::size_t i) {
    const auto& cfg = d.config();
    if (i >= d.size()) throw InvalidInput("twist-on of an unknown curve");
    const std::string name = "'" + cfg.label(i) + "'";
    if (cfg.weight(i) > -2) throw PreconditionFailed("twist-on needs " + name + "^2 <= -2");
    if (cfg.genus(i) != 0) throw PreconditionFailed("twist-on needs " + name + " rational");
    const Int deg = detail::curve_dot(cfg, i, d.mult());
    if (deg != 1) throw PreconditionFailed("twist-on needs D." + name + " = 1, got " + std::to_string(deg));
    Divisor out = d.with(i, d[i] + 1);
    detail::check_curvelike_preserved(d, out, -self_intersection(d) - cfg.weight(i) - 2);
    return out;
}

}  // namespace curvelike
