#pragma once

// Move scripts: recorded sequences of blow-ups, contractions and twists, their
// text form, replay, and reduction of a curvelike divisor to a minimal one.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "curvelike/error.hpp"
#include "curvelike/lattice.hpp"
#include "curvelike/props.hpp"
#include "curvelike/transforms.hpp"

namespace curvelike {

enum class MoveKind { BlowUpGeneric, BlowUpIntersection, Contract, TwistOff, TwistOn };

/// One move, addressed by curve labels so it stays meaningful across the
/// changing configurations of a script.
struct Move {
    MoveKind kind;
    std::string curve;
    std::string other;     // second curve of an intersection blow-up
    std::string new_label; // label for the exceptional curve, empty = automatic

    static Move blow_up_generic(std::string c, std::string as = {}) {
        return {MoveKind::BlowUpGeneric, std::move(c), {}, std::move(as)};
    }
    static Move blow_up_intersection(std::string a, std::string b, std::string as = {}) {
        return {MoveKind::BlowUpIntersection, std::move(a), std::move(b), std::move(as)};
    }
    static Move contract(std::string c) { return {MoveKind::Contract, std::move(c), {}, {}}; }
    static Move twist_off(std::string c) { return {MoveKind::TwistOff, std::move(c), {}, {}}; }
    static Move twist_on(std::string c) { return {MoveKind::TwistOn, std::move(c), {}, {}}; }

    bool operator==(const Move&) const = default;
};

using MoveScript = std::vector<Move>;

inline std::string format_move(const Move& m) {
    switch (m.kind) {
        case MoveKind::BlowUpGeneric:
            return "blowup " + m.curve + (m.new_label.empty() ? "" : " as " + m.new_label);
        case MoveKind::BlowUpIntersection:
            return "blowup " + m.curve + "*" + m.other + (m.new_label.empty() ? "" : " as " + m.new_label);
        case MoveKind::Contract:
            return "contract " + m.curve;
        case MoveKind::TwistOff:
            return "twistoff " + m.curve;
        case MoveKind::TwistOn:
            return "twiston " + m.curve;
    }
    throw InternalError("unknown move kind");
}

inline std::string format_script(const MoveScript& script) {
    std::string out;
    for (const auto& m : script) out += format_move(m) + "\n";
    return out;
}

/// Parses the line-based trace; blank lines and '#' comments are skipped.
inline MoveScript parse_script(const std::string& text) {
    MoveScript script;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::vector<std::string> w;
        for (std::string t; words >> t;) w.push_back(t);
        if (w.empty()) continue;
        const std::string& verb = w[0];
        if (verb == "blowup") {
            if (w.size() != 2 && !(w.size() == 4 && w[2] == "as")) throw ParseError(lineno, "expected 'blowup <site> [as <label>]'");
            const std::string as = w.size() == 4 ? w[3] : std::string{};
            if (const auto star = w[1].find('*'); star != std::string::npos) {
                const std::string a = w[1].substr(0, star), b = w[1].substr(star + 1);
                if (a.empty() || b.empty()) throw ParseError(lineno, "malformed intersection site '" + w[1] + "'");
                script.push_back(Move::blow_up_intersection(a, b, as));
            } else {
                script.push_back(Move::blow_up_generic(w[1], as));
            }
        } else if (verb == "contract" || verb == "twistoff" || verb == "twiston") {
            if (w.size() != 2) throw ParseError(lineno, "expected '" + verb + " <label>'");
            if (verb == "contract") script.push_back(Move::contract(w[1]));
            else if (verb == "twistoff") script.push_back(Move::twist_off(w[1]));
            else script.push_back(Move::twist_on(w[1]));
        } else {
            throw ParseError(lineno, "unknown move '" + verb + "'");
        }
    }
    return script;
}

/// A configuration together with an optional divisor on it.
struct Presentation {
    ConfigPtr config;
    std::optional<Divisor> divisor;
};

/// Applies one move. Twists need a divisor; blow-ups pull it back and
/// contractions push it forward.
inline Presentation apply_move(const Presentation& p, const Move& m) {
    const auto& cfg = *p.config;
    switch (m.kind) {
        case MoveKind::BlowUpGeneric:
        case MoveKind::BlowUpIntersection: {
            const std::size_t a = cfg.require_index(m.curve);
            const BlowUpSite site = m.kind == MoveKind::BlowUpGeneric
                                        ? BlowUpSite::generic(a)
                                        : BlowUpSite::intersection(a, cfg.require_index(m.other));
            const BlowUp b = blow_up(p.config, site,
                                     m.new_label.empty() ? std::nullopt : std::optional<std::string>(m.new_label));
            Presentation out{b.result, std::nullopt};
            if (p.divisor) out.divisor = b.pullback(*p.divisor);
            return out;
        }
        case MoveKind::Contract: {
            const Contraction c = contract(p.config, cfg.require_index(m.curve));
            Presentation out{c.result, std::nullopt};
            if (p.divisor) out.divisor = c.pushforward(*p.divisor);
            return out;
        }
        case MoveKind::TwistOff:
        case MoveKind::TwistOn: {
            if (!p.divisor) throw InvalidInput("twist moves need a divisor");
            const std::size_t i = cfg.require_index(m.curve);
            return {p.config, m.kind == MoveKind::TwistOff ? twist_off(*p.divisor, i) : twist_on(*p.divisor, i)};
        }
    }
    throw InternalError("unknown move kind");
}

inline Presentation replay(Presentation p, const MoveScript& script) {
    for (const auto& m : script) p = apply_move(p, m);
    return p;
}

struct Reduction {
    Divisor minimal;
    MoveScript script;
};

/// Contracts contractible (-1)-curves, then twists off (-2)-curves with
/// D.C = -1, lowest index first, until neither applies.
inline Reduction reduce_to_minimal(const Divisor& d) {
    if (!curvelike_n(d)) throw PreconditionFailed("reduction needs a curvelike divisor");
    Divisor cur = d;
    MoveScript script;
    auto first_where = [&](auto pred) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (pred(cur, i)) return i;
        }
        return std::nullopt;
    };
    while (true) {
        bool moved = false;
        while (auto i = first_where(contractible_in)) {
            script.push_back(Move::contract(cur.config().label(*i)));
            cur = contract(cur.config_ptr(), *i).pushforward(cur);
            moved = true;
        }
        while (auto i = first_where(twistable_off)) {
            script.push_back(Move::twist_off(cur.config().label(*i)));
            cur = twist_off(cur, *i);
            moved = true;
        }
        if (!moved) break;
    }
    if (!minimality_report(cur).minimal()) throw InternalError("reduction stopped at a non-minimal divisor");
    return {std::move(cur), std::move(script)};
}

/// The weight of the terminal curve when D reduces to a single reduced curve.
inline std::optional<Int> is_essentially_curve(const Divisor& d) {
    const Reduction r = reduce_to_minimal(d);
    if (const auto c = r.minimal.as_single_curve()) return r.minimal.config().weight(*c);
    return std::nullopt;
}

}  // namespace curvelike
