#pragma once

// The .dvg text format for curve configurations and divisors, and DOT export.
//
//   curve <label> w=<int> [g=<int>] [m=<int>]
//   pair <label> <label> <int>
//   divisor <name> <label>=<int> ...
//
// '#' starts a comment. Curves must be declared before they are referenced.

#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curvelike/error.hpp"
#include "curvelike/lattice.hpp"

namespace curvelike {

struct NamedDivisor {
    std::string name;
    Divisor divisor;
};

struct DvgDocument {
    ConfigPtr config;
    /// Per-curve m= values (default 1): the document's default divisor.
    std::vector<Int> default_mult;
    std::vector<NamedDivisor> divisors;

    Divisor default_divisor() const { return Divisor(config, default_mult); }

    /// The named divisor, or the default one when `name` is empty.
    Divisor divisor(const std::string& name = {}) const {
        if (name.empty()) return default_divisor();
        for (const auto& d : divisors) {
            if (d.name == name) return d.divisor;
        }
        throw InvalidInput("no divisor named '" + name + "'");
    }
};

namespace detail {

inline Int parse_int(std::string_view s, std::size_t line, std::string_view what) {
    Int v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError(line, "expected an integer for " + std::string(what) + ", got '" + std::string(s) + "'");
    }
    return v;
}

inline std::pair<std::string, std::string> split_assignment(const std::string& token, std::size_t line) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(line, "expected key=value, got '" + token + "'");
    return {token.substr(0, eq), token.substr(eq + 1)};
}

}  // namespace detail

inline DvgDocument parse_dvg(const std::string& text) {
    std::vector<Curve> curves;
    std::vector<Int> mult;
    std::map<std::string, std::size_t> index;
    std::map<std::pair<std::size_t, std::size_t>, Int> pairs;
    std::vector<std::pair<std::string, std::vector<Int>>> divisors;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto lookup = [&](const std::string& label) {
        const auto it = index.find(label);
        if (it == index.end()) throw ParseError(lineno, "unknown curve '" + label + "'");
        return it->second;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::vector<std::string> w;
        for (std::string t; words >> t;) w.push_back(t);
        if (w.empty()) continue;

        if (w[0] == "curve") {
            if (w.size() < 3) throw ParseError(lineno, "expected 'curve <label> w=<int> [g=<int>] [m=<int>]'");
            const std::string& label = w[1];
            if (label.find('=') != std::string::npos || label.find('*') != std::string::npos) {
                throw ParseError(lineno, "invalid curve label '" + label + "'");
            }
            if (index.contains(label)) throw ParseError(lineno, "duplicate curve label '" + label + "'");
            std::optional<Int> weight, genus, m;
            for (std::size_t k = 2; k < w.size(); ++k) {
                auto [key, value] = detail::split_assignment(w[k], lineno);
                std::optional<Int>* slot = key == "w" ? &weight : key == "g" ? &genus : key == "m" ? &m : nullptr;
                if (!slot) throw ParseError(lineno, "unknown curve attribute '" + key + "'");
                if (*slot) throw ParseError(lineno, "attribute '" + key + "' given twice");
                *slot = detail::parse_int(value, lineno, key);
            }
            if (!weight) throw ParseError(lineno, "curve '" + label + "' needs a weight w=<int>");
            if (genus.value_or(0) < 0) throw ParseError(lineno, "negative genus");
            if (m.value_or(1) < 0) throw ParseError(lineno, "negative multiplicity");
            index[label] = curves.size();
            curves.push_back({label, *weight, genus.value_or(0)});
            mult.push_back(m.value_or(1));
        } else if (w[0] == "pair") {
            if (w.size() != 4) throw ParseError(lineno, "expected 'pair <label> <label> <int>'");
            const std::size_t a = lookup(w[1]);
            const std::size_t b = lookup(w[2]);
            if (a == b) throw ParseError(lineno, "self-pair; give the self-intersection as the weight");
            const Int p = detail::parse_int(w[3], lineno, "intersection number");
            if (p < 0) throw ParseError(lineno, "negative intersection number");
            const auto key = std::minmax(a, b);
            if (const auto it = pairs.find(key); it != pairs.end() && it->second != p) {
                throw ParseError(lineno, "conflicting intersection number for '" + w[1] + "' and '" + w[2] + "'");
            }
            pairs[key] = p;
        } else if (w[0] == "divisor") {
            if (w.size() < 2) throw ParseError(lineno, "expected 'divisor <name> <label>=<int> ...'");
            for (const auto& d : divisors) {
                if (d.first == w[1]) throw ParseError(lineno, "duplicate divisor name '" + w[1] + "'");
            }
            std::vector<Int> c(curves.size(), 0);
            std::vector<bool> given(curves.size(), false);
            for (std::size_t k = 2; k < w.size(); ++k) {
                auto [label, value] = detail::split_assignment(w[k], lineno);
                const std::size_t i = lookup(label);
                if (given[i]) throw ParseError(lineno, "curve '" + label + "' listed twice");
                given[i] = true;
                c[i] = detail::parse_int(value, lineno, "multiplicity");
                if (c[i] < 0) throw ParseError(lineno, "negative multiplicity");
            }
            divisors.emplace_back(w[1], std::move(c));
        } else {
            throw ParseError(lineno, "unknown directive '" + w[0] + "'");
        }
    }

    std::vector<Intersection> inters;
    for (const auto& [key, p] : pairs) inters.push_back({curves[key.first].label, curves[key.second].label, p});
    DvgDocument doc{share(CurveConfig(curves, inters)), std::move(mult), {}};
    for (auto& [name, c] : divisors) {
        // Divisors declared before later curves are padded with zeros.
        c.resize(doc.config->size(), 0);
        doc.divisors.push_back({name, Divisor(doc.config, std::move(c))});
    }
    return doc;
}

inline std::string serialize_dvg(const DvgDocument& doc) {
    const auto& cfg = *doc.config;
    std::string out;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        out += "curve " + cfg.label(i) + " w=" + std::to_string(cfg.weight(i));
        if (cfg.genus(i) != 0) out += " g=" + std::to_string(cfg.genus(i));
        if (doc.default_mult[i] != 1) out += " m=" + std::to_string(doc.default_mult[i]);
        out += "\n";
    }
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        for (std::size_t j = i + 1; j < cfg.size(); ++j) {
            if (cfg.pair(i, j) != 0) out += "pair " + cfg.label(i) + " " + cfg.label(j) + " " + std::to_string(cfg.pair(i, j)) + "\n";
        }
    }
    for (const auto& nd : doc.divisors) {
        out += "divisor " + nd.name;
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            if (nd.divisor[i] != 0) out += " " + cfg.label(i) + "=" + std::to_string(nd.divisor[i]);
        }
        out += "\n";
    }
    return out;
}

/// A document whose default divisor is d.
inline DvgDocument document_for(const Divisor& d) {
    return DvgDocument{d.config_ptr(), std::vector<Int>(d.mult().begin(), d.mult().end()), {}};
}

/// Undirected DOT graph; an intersection number p becomes p parallel edges.
inline std::string to_dot(const CurveConfig& cfg, std::span<const Int> mult, const std::string& name = "divisor") {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"' || ch == '\\') q += '\\';
            q += ch;
        }
        return q + "\"";
    };
    std::string out = "graph " + quote(name) + " {\n";
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        out += "  " + quote(cfg.label(i)) + " [label=" +
               quote(cfg.label(i) + " w=" + std::to_string(cfg.weight(i)) + " m=" + std::to_string(mult[i])) + "];\n";
    }
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        for (std::size_t j = i + 1; j < cfg.size(); ++j) {
            for (Int k = 0; k < cfg.pair(i, j); ++k) out += "  " + quote(cfg.label(i)) + " -- " + quote(cfg.label(j)) + ";\n";
        }
    }
    return out + "}\n";
}

}  // namespace curvelike
