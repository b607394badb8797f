#pragma once

// Numerical properties of effective divisors, with witnesses where one exists.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "curvelike/exact.hpp"
#include "curvelike/lattice.hpp"

namespace curvelike {

enum class WitnessKind { OneDecomposition, NegativeFiltration };

/// An ordering C_1, ..., C_m of the curves of a divisor, with repetition.
struct SequenceWitness {
    WitnessKind kind;
    std::vector<std::size_t> order;

    bool operator==(const SequenceWitness&) const = default;
};

inline std::string to_string(WitnessKind k) {
    return k == WitnessKind::OneDecomposition ? "1-decomposition" : "negative filtration";
}

inline std::string format_order(const CurveConfig& cfg, std::span<const std::size_t> order) {
    std::string out;
    for (std::size_t i : order) {
        if (!out.empty()) out += ",";
        out += cfg.label(i);
    }
    return out;
}

/// Checks the counts against d and the defining inequality at every position.
inline bool validate_witness(const Divisor& d, const SequenceWitness& w) {
    const auto& cfg = d.config();
    std::vector<Int> tail(d.size(), 0);
    for (std::size_t i : w.order) {
        if (i >= d.size()) return false;
        ++tail[i];
    }
    if (!std::equal(tail.begin(), tail.end(), d.mult().begin()) || w.order.empty()) return false;
    for (std::size_t pos = 0; pos < w.order.size(); ++pos) {
        const std::size_t c = w.order[pos];
        if (w.kind == WitnessKind::NegativeFiltration) {
            if (detail::curve_dot(cfg, c, tail) >= 0) return false;
            --tail[c];
        } else {
            --tail[c];
            if (pos + 1 < w.order.size() && detail::curve_dot(cfg, c, tail) != 1) return false;
        }
    }
    return true;
}

inline bool is_negative_definite(const CurveConfig& cfg, std::span<const std::size_t> support) {
    if (support.empty()) throw InvalidInput("negative definiteness of an empty support");
    return sylvester_negative_definite(gram(cfg, support));
}

inline bool is_negative_definite(const Divisor& d) {
    const auto s = d.support();
    return is_negative_definite(d.config(), s);
}

/// C.D < 0 for every curve C of D: a strictly diagonally dominant (negated)
/// Gram matrix, hence negative definite support.
inline bool dominance_sufficient(const Divisor& d) {
    if (!d.is_effective()) throw InvalidInput("dominance check on the zero divisor");
    for (std::size_t i : d.support()) {
        if (detail::curve_dot(d.config(), i, d.mult()) >= 0) return false;
    }
    return true;
}

/// Every 0 < A <= D has A^2 < 0.
inline bool is_negatively_closed(const Divisor& d, std::size_t cap = kDefaultSubdivisorCap) {
    if (!d.is_effective()) throw InvalidInput("negatively closed check on the zero divisor");
    subdivisor_space(d, cap);
    const auto& cfg = d.config();
    return detail::for_each_subvector(d.mult(), false,
                                      [&](std::span<const Int> a) { return detail::pairing(cfg, a, a) < 0; });
}

/// Every 0 < A < D has A.(D - A) >= 1.
inline bool is_one_connected(const Divisor& d, std::size_t cap = kDefaultSubdivisorCap) {
    if (!d.is_effective()) throw InvalidInput("1-connected check on the zero divisor");
    subdivisor_space(d, cap);
    const auto& cfg = d.config();
    std::vector<Int> rest(d.size());
    return detail::for_each_subvector(d.mult(), true, [&](std::span<const Int> a) {
        for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = d[i] - a[i];
        return detail::pairing(cfg, a, rest) >= 1;
    });
}

namespace detail {

class WitnessSearch {
public:
    WitnessSearch(const CurveConfig& cfg, WitnessKind kind) : cfg_(cfg), kind_(kind) {}

    std::optional<std::vector<std::size_t>> run(std::span<const Int> mult) {
        std::vector<Int> rest(mult.begin(), mult.end());
        order_.clear();
        if (std::all_of(rest.begin(), rest.end(), [](Int c) { return c == 0; })) return std::nullopt;
        if (!search(rest)) return std::nullopt;
        return order_;
    }

private:
    bool search(std::vector<Int>& rest) {
        if (kind_ == WitnessKind::NegativeFiltration) {
            if (std::all_of(rest.begin(), rest.end(), [](Int c) { return c == 0; })) return true;
        } else {
            Int total = 0;
            for (Int c : rest) total += c;
            if (total == 1) {
                const auto it = std::find(rest.begin(), rest.end(), 1);
                order_.push_back(static_cast<std::size_t>(it - rest.begin()));
                return true;
            }
        }
        if (failed_.contains(rest)) return false;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (rest[i] == 0) continue;
            bool ok;
            if (kind_ == WitnessKind::NegativeFiltration) {
                ok = curve_dot(cfg_, i, rest) < 0;
                --rest[i];
            } else {
                --rest[i];
                ok = curve_dot(cfg_, i, rest) == 1;
            }
            if (ok) {
                order_.push_back(i);
                if (search(rest)) {
                    ++rest[i];
                    return true;
                }
                order_.pop_back();
            }
            ++rest[i];
        }
        failed_.insert(rest);
        return false;
    }

    const CurveConfig& cfg_;
    WitnessKind kind_;
    std::vector<std::size_t> order_;
    std::unordered_set<std::vector<Int>, VectorHash> failed_;
};

}  // namespace detail

inline std::optional<SequenceWitness> find_negative_filtration(const Divisor& d) {
    detail::WitnessSearch search(d.config(), WitnessKind::NegativeFiltration);
    if (auto order = search.run(d.mult())) return SequenceWitness{WitnessKind::NegativeFiltration, std::move(*order)};
    return std::nullopt;
}

inline std::optional<SequenceWitness> find_one_decomposition(const Divisor& d) {
    detail::WitnessSearch search(d.config(), WitnessKind::OneDecomposition);
    if (auto order = search.run(d.mult())) return SequenceWitness{WitnessKind::OneDecomposition, std::move(*order)};
    return std::nullopt;
}

/// Completes a partial 1-decomposition prefix, if any completion exists.
inline std::optional<SequenceWitness> complete_one_decomposition(const Divisor& d,
                                                                 std::span<const std::size_t> prefix) {
    std::vector<Int> rest(d.mult().begin(), d.mult().end());
    for (std::size_t i : prefix) {
        if (i >= rest.size() || rest[i] == 0) return std::nullopt;
        --rest[i];
        if (std::any_of(rest.begin(), rest.end(), [](Int c) { return c != 0; }) &&
            detail::curve_dot(d.config(), i, rest) != 1) {
            return std::nullopt;
        }
    }
    std::vector<std::size_t> order(prefix.begin(), prefix.end());
    if (std::any_of(rest.begin(), rest.end(), [](Int c) { return c != 0; })) {
        detail::WitnessSearch search(d.config(), WitnessKind::OneDecomposition);
        auto tail = search.run(rest);
        if (!tail) return std::nullopt;
        order.insert(order.end(), tail->begin(), tail->end());
    }
    return SequenceWitness{WitnessKind::OneDecomposition, std::move(order)};
}

struct CurvelikeN {
    Int n;
    SequenceWitness one_decomposition;
    SequenceWitness negative_filtration;
};

struct NotCurvelike {
    std::string reason;
};

struct Inapplicable {
    std::string reason;
};

using CurvelikeVerdict = std::variant<CurvelikeN, NotCurvelike, Inapplicable>;

inline bool is_rational(const Divisor& d) {
    for (std::size_t i : d.support()) {
        if (d.config().genus(i) != 0) return false;
    }
    return true;
}

/// Rational, 1-decomposable and negatively filtered with D^2 = -n < 0.
inline CurvelikeVerdict is_curvelike(const Divisor& d) {
    if (!d.is_effective()) throw InvalidInput("curvelike check on the zero divisor");
    for (std::size_t i : d.support()) {
        if (d.config().genus(i) != 0) {
            return Inapplicable{"curve '" + d.config().label(i) + "' has genus " + std::to_string(d.config().genus(i)) +
                                "; the numerical criterion needs rational curves"};
        }
    }
    auto one = find_one_decomposition(d);
    if (!one) return NotCurvelike{"no 1-decomposition"};
    auto filtration = find_negative_filtration(d);
    if (!filtration) return NotCurvelike{"no negative filtration"};
    const Int n = -self_intersection(d);
    if (n < 1) return NotCurvelike{"D^2 = " + std::to_string(-n) + " is not negative"};
    if (k_degree(d) != n - 2) throw InternalError("D.K != n - 2 for a rational 1-decomposable divisor");
    return CurvelikeN{n, std::move(*one), std::move(*filtration)};
}

inline std::optional<Int> curvelike_n(const Divisor& d) {
    const auto v = is_curvelike(d);
    if (const auto* c = std::get_if<CurvelikeN>(&v)) return c->n;
    return std::nullopt;
}

enum class MinimalityMove { Contract, TwistOff };

/// A (-1)- or (-2)-curve of D together with D.C; `violates` marks a move.
struct MinimalityEntry {
    std::size_t curve;
    Int weight;
    Int degree;
    bool violates;
    MinimalityMove move;
};

struct MinimalityReport {
    std::vector<MinimalityEntry> entries;

    bool minimal() const {
        return std::none_of(entries.begin(), entries.end(), [](const MinimalityEntry& e) { return e.violates; });
    }

    std::vector<MinimalityEntry> violations() const {
        std::vector<MinimalityEntry> out;
        for (const auto& e : entries) {
            if (e.violates) out.push_back(e);
        }
        return out;
    }
};

/// Inspects every rational (-1)- and (-2)-curve of D. No curvelike check.
inline MinimalityReport minimality_report(const Divisor& d) {
    MinimalityReport r;
    const auto& cfg = d.config();
    for (std::size_t i : d.support()) {
        if (cfg.genus(i) != 0) continue;
        const Int w = cfg.weight(i);
        if (w != -1 && w != -2) continue;
        const Int deg = detail::curve_dot(cfg, i, d.mult());
        if (w == -1) {
            r.entries.push_back({i, w, deg, deg == 0, MinimalityMove::Contract});
        } else {
            r.entries.push_back({i, w, deg, deg == -1, MinimalityMove::TwistOff});
        }
    }
    return r;
}

/// Minimality of a curvelike divisor; throws on non-curvelike input.
inline MinimalityReport is_minimal(const Divisor& d) {
    if (!curvelike_n(d)) throw PreconditionFailed("minimality is defined for curvelike divisors only");
    return minimality_report(d);
}

}  // namespace curvelike
