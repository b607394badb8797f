#pragma once

// Curvelike decompositions D = D_1 + ... + D_m with D_i.(D_{i+1} + ... + D_m) = 1
// and -2 >= D_i^2 >= D^2.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "curvelike/lattice.hpp"
#include "curvelike/props.hpp"
#include "curvelike/script.hpp"
#include "curvelike/transforms.hpp"

namespace curvelike {

struct Decomposition {
    /// Parts on the configuration of the input divisor. Parts found after a
    /// contraction are pulled back through it.
    std::vector<Divisor> parts;
    /// Contractions performed along the way, in order.
    MoveScript contractions;
};

/// Checks sum, the tail intersections and (for two or more parts) the square bounds.
inline bool validate_decomposition(const Divisor& whole, std::span<const Divisor> parts) {
    if (parts.empty()) return false;
    Divisor sum = Divisor::zero(whole.config_ptr());
    for (const auto& p : parts) {
        if (!same_config(whole, p) || !p.is_effective()) return false;
        sum = sum + p;
    }
    if (!(sum == whole)) return false;
    if (parts.size() == 1) return true;
    const Int d2 = self_intersection(whole);
    Divisor tail = whole;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        tail = tail - parts[i];
        const Int s = self_intersection(parts[i]);
        if (s > -2 || s < d2) return false;
        if (i + 1 < parts.size() && pairing(parts[i], tail) != 1) return false;
    }
    return true;
}

/// One chop along a 1-decomposition C_1, ..., C_m of a (-n)-divisor with no
/// contractible curves: C_1 + rest when -2 >= C_1^2 >= -n, and otherwise
/// (C_1^2 = -n-1) the prefix up to the first (-1)-curve plus the rest.
inline std::vector<Divisor> split_along(const Divisor& d, const SequenceWitness& w) {
    if (w.kind != WitnessKind::OneDecomposition || !validate_witness(d, w)) {
        throw InvalidInput("split needs a valid 1-decomposition of the divisor");
    }
    const auto& cfg = d.config();
    const Int n = -self_intersection(d);
    const Int first = cfg.weight(w.order.front());
    if (w.order.size() < 2) throw PreconditionFailed("a single curve does not split");
    std::size_t cut;
    if (first <= -2 && first >= -n) {
        cut = 1;
    } else if (first == -n - 1) {
        cut = 0;
        for (std::size_t pos = 1; pos < w.order.size(); ++pos) {
            if (cfg.weight(w.order[pos]) == -1) {
                cut = pos + 1;
                break;
            }
        }
        if (cut == 0 || cut == w.order.size()) throw PreconditionFailed("no (-1)-curve closes the leading chain");
    } else {
        throw PreconditionFailed("first curve has square " + std::to_string(first) + " outside [-n-1, -2]");
    }
    Divisor head = Divisor::zero(d.config_ptr());
    for (std::size_t pos = 0; pos < cut; ++pos) head = head + Divisor::curve(d.config_ptr(), w.order[pos]);
    return {head, d - head};
}

namespace detail {

inline std::vector<Divisor> decompose_recursive(const Divisor& d, MoveScript& script, std::size_t depth) {
    if (depth > 10'000) throw InternalError("decomposition recursion does not terminate");
    // Contract everything contractible, remembering how to pull back.
    std::vector<Contraction> steps;
    Divisor cur = d;
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (contractible_in(cur, i)) {
                script.push_back(Move::contract(cur.config().label(i)));
                steps.push_back(contract(cur.config_ptr(), i));
                cur = steps.back().pushforward(cur);
                again = true;
                break;
            }
        }
    }
    auto pull = [&](std::vector<Divisor> parts) {
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            for (auto& p : parts) p = it->pullback(p);
        }
        return parts;
    };

    if (cur.as_single_curve()) return pull({cur});
    const Int n = -self_intersection(cur);
    const auto& cfg = cur.config();

    // A single curve C with C.(D - C) = 1, -2 >= C^2 >= -n and D - C curvelike.
    for (std::size_t i : cur.support()) {
        const Int w = cfg.weight(i);
        if (w > -2 || w < -n) continue;
        const Divisor c = Divisor::curve(cur.config_ptr(), i);
        const Divisor rest = cur - c;
        if (pairing(c, rest) != 1 || !curvelike_n(rest)) continue;
        std::vector<Divisor> parts{c};
        for (auto& p : decompose_recursive(rest, script, depth + 1)) parts.push_back(std::move(p));
        return pull(std::move(parts));
    }

    // Otherwise every 1-decomposition opens with a (-n-1)-curve; follow it to
    // the first (-1)-curve and extract the simple chain back to the start.
    const auto w = find_one_decomposition(cur);
    if (!w) throw InternalError("curvelike divisor lost its 1-decomposition");
    const auto& order = w->order;
    if (cfg.weight(order.front()) != -n - 1) throw InternalError("1-decomposition does not open with a (-n-1)-curve");
    std::size_t last = 0;
    for (std::size_t pos = 1; pos < order.size(); ++pos) {
        if (cfg.weight(order[pos]) == -1) {
            last = pos;
            break;
        }
    }
    if (last == 0) throw InternalError("no (-1)-curve ends the leading chain");
    std::vector<std::size_t> chain{order[last]};
    std::size_t pos = last;
    while (pos != 0) {
        std::size_t next = pos;
        for (std::size_t q = 0; q < pos; ++q) {
            if (order[q] != order[pos] && cfg.pair(order[q], order[pos]) == 1) {
                next = q;
                break;
            }
        }
        if (next == pos) throw InternalError("chain extraction found no predecessor");
        chain.push_back(order[next]);
        pos = next;
    }
    Divisor a = Divisor::zero(cur.config_ptr());
    for (std::size_t i : chain) a = a + Divisor::curve(cur.config_ptr(), i);
    const Divisor rest = cur - a;
    std::vector<Divisor> parts{a};
    for (auto& p : decompose_recursive(rest, script, depth + 1)) parts.push_back(std::move(p));
    return pull(std::move(parts));
}

}  // namespace detail

/// Decomposes a curvelike divisor into (pullbacks of) single curves and simple
/// chains. A (-1)-divisor gets the trivial decomposition.
inline Decomposition curvelike_decomposition(const Divisor& d) {
    const auto n = curvelike_n(d);
    if (!n) throw PreconditionFailed("decomposition needs a curvelike divisor");
    Decomposition out;
    if (*n == 1) {
        out.parts = {d};
        return out;
    }
    out.parts = detail::decompose_recursive(d, out.contractions, 0);
    if (!validate_decomposition(d, out.parts)) throw InternalError("decomposition failed validation");
    return out;
}

}  // namespace curvelike
