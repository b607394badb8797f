#pragma once

// Command-line front end. Exit codes: 0 ran, 2 parse or validation error,
// 3 search cap exceeded, 1 internal error.

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvelike/canonical.hpp"
#include "curvelike/classify.hpp"
#include "curvelike/decomposition.hpp"
#include "curvelike/dvg.hpp"
#include "curvelike/laufer.hpp"
#include "curvelike/props.hpp"
#include "curvelike/realize.hpp"
#include "curvelike/script.hpp"

namespace curvelike::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCap = 3;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline DvgDocument load(const std::string& path) { return parse_dvg(read_file(path)); }

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string witness_text(const Divisor& d, const std::optional<SequenceWitness>& w) {
    return w ? format_order(d.config(), w->order) : "absent";
}

inline void print_check(const Divisor& d, std::ostream& out) {
    const auto& cfg = d.config();
    out << "divisor: " << d.to_string() << "\n";
    out << "D^2: " << self_intersection(d) << "\n";
    out << "D.K: " << k_degree(d) << "\n";
    out << "chi: " << euler_char(d) << "\n";
    out << "connected: " << yes_no(is_connected(d)) << "\n";
    out << "tree: " << yes_no(is_tree(d)) << "\n";
    out << "negative definite: " << yes_no(is_negative_definite(d)) << "\n";
    out << "diagonally dominant: " << yes_no(dominance_sufficient(d)) << "\n";
    out << "negatively closed: " << yes_no(is_negatively_closed(d)) << "\n";
    const auto filtration = find_negative_filtration(d);
    const auto one = find_one_decomposition(d);
    out << "negative filtration: " << witness_text(d, filtration) << "\n";
    out << "1-decomposition: " << witness_text(d, one) << "\n";
    out << "1-connected: " << yes_no(is_one_connected(d)) << "\n";
    const auto verdict = is_curvelike(d);
    if (const auto* c = std::get_if<CurvelikeN>(&verdict)) {
        out << "curvelike: n=" << c->n << "\n";
    } else if (const auto* nc = std::get_if<NotCurvelike>(&verdict)) {
        out << "curvelike: no (" << nc->reason << ")\n";
    } else {
        out << "curvelike: inapplicable (" << std::get<Inapplicable>(verdict).reason << ")\n";
    }
    const auto report = minimality_report(d);
    if (std::holds_alternative<CurvelikeN>(verdict)) {
        out << "minimal: " << yes_no(report.minimal()) << "\n";
    } else {
        out << "minimal: n/a\n";
    }
    for (const auto& e : report.entries) {
        out << "  " << cfg.label(e.curve) << " w=" << e.weight << " D.C=" << e.degree;
        if (e.violates) out << (e.move == MinimalityMove::Contract ? " contract" : " twistoff");
        out << "\n";
    }
}

inline void print_realize(const RealizabilityReport& r, std::ostream& out) {
    const auto& cfg = *r.config;
    if (std::holds_alternative<RealizableWith>(r.verdict)) {
        out << "verdict: realizable\n";
    } else if (const auto* o = std::get_if<Obstructed>(&r.verdict)) {
        const auto& st = o->closure.stages[o->stage];
        out << "verdict: obstructed\n";
        out << "evidence: stage " << o->stage << " has inertia " << st.inertia.to_string() << " with "
            << st.inertia.positives << " positive directions\n";
    } else {
        out << "verdict: unknown (" << std::get<Unknown>(r.verdict).reason << ")\n";
    }
    out << "inertia: " << r.inertia.to_string() << "\n";
    out << "closure:\n";
    for (std::size_t k = 0; k < r.closure.stages.size(); ++k) {
        const auto& st = r.closure.stages[k];
        out << "  stage " << k;
        if (!st.contracted.empty()) out << " contract " << st.contracted;
        out << " inertia=" << st.inertia.to_string() << "\n";
    }
    const auto& term = *r.closure.terminal();
    out << "terminal:";
    for (std::size_t i = 0; i < term.size(); ++i) out << " " << term.label(i) << "(" << term.weight(i) << ")";
    out << "\n";
    if (r.badness) {
        out << "vertices:\n";
        for (const auto& v : r.badness->vertices) {
            out << "  " << cfg.label(v.curve) << " w=" << v.weight << " v=" << v.valency << " sigma=" << v.sigma << "\n";
        }
        out << "badness: " << r.badness->badness() << "\n";
        for (std::size_t a = 0; a < r.badness->bad.size(); ++a) {
            for (std::size_t b = a + 1; b < r.badness->bad.size(); ++b) {
                out << "distance " << cfg.label(r.badness->bad[a]) << " " << cfg.label(r.badness->bad[b]) << ": "
                    << r.badness->distances[a][b] << "\n";
            }
        }
    }
    if (const auto* rw = std::get_if<RealizableWith>(&r.verdict)) {
        out << "seed: " << rw->construction.seed << "\n";
        out << "seed configuration:\n";
        std::istringstream seed(serialize_dvg(DvgDocument{rw->construction.seed_config,
                                                          std::vector<Int>(rw->construction.seed_config->size(), 1),
                                                          {}}));
        for (std::string line; std::getline(seed, line);) out << "  " << line << "\n";
        out << "script:\n";
        for (const auto& m : rw->construction.script) out << "  " << format_move(m) << "\n";
    }
}

/// Runs the tool on `args` (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical calculus of curvelike divisors on surfaces"};
    app.require_subcommand(1);

    std::string file, divisor_name, twist_name, script_file, protect_list;
    std::size_t vertices = 0;
    Int n = 2;
    Int max_mult = 6;
    std::optional<Int> min_weight;
    std::size_t max_states = 20'000'000;

    auto* check = app.add_subcommand("check", "property table of a divisor");
    check->add_option("file", file, ".dvg file")->required();
    check->add_option("--divisor", divisor_name, "named divisor (default: curve multiplicities)");

    auto* chi = app.add_subcommand("chi", "D^2, D.K and Euler characteristic");
    chi->add_option("file", file)->required();
    chi->add_option("--divisor", divisor_name)->required();
    chi->add_option("--twist", twist_name, "divisor L for chi(O_D(L))");

    auto* reduce = app.add_subcommand("reduce", "reduce a curvelike divisor to a minimal one");
    reduce->add_option("file", file)->required();
    reduce->add_option("--divisor", divisor_name)->required();

    auto* decompose = app.add_subcommand("decompose", "curvelike decomposition");
    decompose->add_option("file", file)->required();
    decompose->add_option("--divisor", divisor_name)->required();

    auto* laufer = app.add_subcommand("laufer", "numerical cycle of the configuration");
    laufer->add_option("file", file)->required();
    laufer->add_option("--divisor", divisor_name, "restrict to the support of this divisor");

    auto* enumerate = app.add_subcommand("enumerate", "minimal (-n)-divisors on trees");
    enumerate->add_option("--vertices", vertices)->required()->check(CLI::Range(1, 8));
    enumerate->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    enumerate->add_option("--max-mult", max_mult)->check(CLI::PositiveNumber);
    enumerate->add_option("--min-weight", min_weight);
    enumerate->add_option("--max-states", max_states);

    auto* realize_cmd = app.add_subcommand("realize", "realizability report of a configuration");
    realize_cmd->add_option("file", file)->required();
    realize_cmd->add_option("--protect", protect_list, "comma-separated labels never contracted");

    auto* dot = app.add_subcommand("dot", "DOT graph of a divisor");
    dot->add_option("file", file)->required();
    dot->add_option("--divisor", divisor_name);

    auto* replay_cmd = app.add_subcommand("replay", "apply a move script");
    replay_cmd->add_option("file", file)->required();
    replay_cmd->add_option("--script", script_file)->required();
    replay_cmd->add_option("--divisor", divisor_name);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (check->parsed()) {
            print_check(load(file).divisor(divisor_name), out);
        } else if (chi->parsed()) {
            const auto doc = load(file);
            const Divisor d = doc.divisor(divisor_name);
            out << "divisor: " << d.to_string() << "\n";
            out << "D^2: " << self_intersection(d) << "\n";
            out << "D.K: " << k_degree(d) << "\n";
            out << "chi: " << euler_char(d) << "\n";
            if (!twist_name.empty()) {
                const Divisor l = doc.divisor(twist_name);
                out << "D.L: " << pairing(d, l) << "\n";
                out << "chi(L): " << euler_char_twisted(d, l) << "\n";
            }
        } else if (reduce->parsed()) {
            const Divisor d = load(file).divisor(divisor_name);
            const Reduction r = reduce_to_minimal(d);
            out << "minimal: " << r.minimal.to_string() << "\n";
            out << "D^2: " << self_intersection(r.minimal) << "\n";
            if (const auto c = r.minimal.as_single_curve()) {
                out << "essentially a curve: w=" << r.minimal.config().weight(*c) << "\n";
            } else {
                out << "essentially a curve: no\n";
            }
            out << "script:\n" << format_script(r.script);
            out << "configuration:\n" << serialize_dvg(document_for(r.minimal));
        } else if (decompose->parsed()) {
            const Divisor d = load(file).divisor(divisor_name);
            const Decomposition dec = curvelike_decomposition(d);
            for (std::size_t i = 0; i < dec.parts.size(); ++i) {
                out << "part " << i + 1 << ": " << dec.parts[i].to_string()
                    << "  square=" << self_intersection(dec.parts[i]) << "\n";
            }
            out << "contractions:\n" << format_script(dec.contractions);
        } else if (laufer->parsed()) {
            const auto doc = load(file);
            std::vector<std::size_t> support;
            if (divisor_name.empty()) support = all_curves(*doc.config);
            else support = doc.divisor(divisor_name).support();
            const Divisor z = laufer_cycle(doc.config, support);
            const auto& cfg = *doc.config;
            out << "cycle: " << z.to_string() << "\n";
            out << "Z^2: " << self_intersection(z) << "\n";
            out << "Z.K: " << k_degree(z) << "\n";
            out << "chi: " << euler_char(z) << "\n";
            const auto one = find_one_decomposition(z);
            out << "1-decomposition: " << witness_text(z, one) << "\n";
            for (std::size_t i : support) {
                const Divisor c = Divisor::curve(doc.config, i);
                out << "  " << cfg.label(i) << " Z.C=" << pairing(z, c) << " C.(Z-C)=" << pairing(c, z - c) << "\n";
            }
        } else if (enumerate->parsed()) {
            EnumerationParams p;
            p.vertices = vertices;
            p.n = n;
            p.max_mult = max_mult;
            p.min_weight = min_weight;
            p.max_states = max_states;
            const auto result = enumerate_minimal(p);
            for (std::size_t k = 0; k < result.divisors.size(); ++k) {
                if (k) out << "\n";
                out << "# class " << k + 1 << " of " << result.divisors.size() << "\n";
                out << serialize_dvg(document_for(result.divisors[k]));
            }
            out << "# " << result.divisors.size() << " classes, complete within max-mult=" << p.max_mult
                << " min-weight=" << p.lowest_weight() << "; states=" << result.stats.states
                << " frontier=" << result.stats.frontier << "\n";
        } else if (realize_cmd->parsed()) {
            const auto doc = load(file);
            std::set<std::string> protect;
            std::stringstream ss(protect_list);
            for (std::string l; std::getline(ss, l, ',');) {
                if (!l.empty()) protect.insert(l);
            }
            print_realize(realize(doc.config, protect), out);
        } else if (dot->parsed()) {
            const auto doc = load(file);
            const Divisor d = doc.divisor(divisor_name);
            out << to_dot(d.config(), d.mult(), divisor_name.empty() ? "divisor" : divisor_name);
        } else if (replay_cmd->parsed()) {
            const auto doc = load(file);
            const MoveScript script = parse_script(read_file(script_file));
            const Presentation p = replay(Presentation{doc.config, doc.divisor(divisor_name)}, script);
            out << serialize_dvg(document_for(*p.divisor));
        }
    } catch (const SearchSpaceTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}

}  // namespace curvelike::cli
