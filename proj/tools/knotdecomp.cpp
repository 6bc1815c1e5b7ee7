// knotdecomp: command-line front end.
//
// Exit status: 0 success, 1 domain error (JSON on stdout), 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "knotdecomp/builders.hpp"
#include "knotdecomp/decomposition.hpp"
#include "knotdecomp/errors.hpp"
#include "knotdecomp/flype.hpp"
#include "knotdecomp/periodicity.hpp"
#include "knotdecomp/structure_tree.hpp"
#include "knotdecomp/tangle_calculus.hpp"

using nlohmann::json;
using namespace knot;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& src) {
    if (src == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(src);
    if (!in) throw UsageError("cannot read '" + src + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

// A file, "-" for stdin, or "@name:args" for a built-in construction.
LinkDiagram load_diagram(const std::string& src) {
    if (!src.empty() && src[0] == '@') return build_named(std::string_view(src).substr(1));
    std::string text = read_source(src);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return diagram_from_json(json::parse(text));
        } catch (const json::exception& e) {
            throw KnotError(ErrorCode::kMalformedCode, e.what());
        }
    }
    return parse_diagram(text);
}

std::size_t default_budget() {
    if (const char* env = std::getenv("KNOT_BUDGET")) {
        try {
            return std::stoul(env);
        } catch (const std::exception&) {
            throw UsageError("KNOT_BUDGET must be a non-negative integer");
        }
    }
    return kDefaultFlypeBudget;
}

json pd_json(const LinkDiagram& d) { return to_pd(d); }

json decomposition_json(const LinkDiagram& d, const Decomposition& dec) {
    json fam = json::array();
    for (const auto& c : dec.family) fam.push_back({{"inside", c.inside.members()}, {"cut_edges", c.cut_edges}});
    json regs = json::array();
    for (const auto& r : dec.regions) {
        json j{{"kind", std::string(to_string(r.kind))},
               {"crossings", r.vertices.members()},
               {"boundary", r.boundary},
               {"parent_circle", r.parent_circle},
               {"degenerate", r.degenerate}};
        if (r.kind == RegionKind::kTBD) {
            j["weights"] = r.weights;
            j["total_weight"] = r.total_weight;
            j["mixed_signs"] = r.mixed_signs;
        }
        regs.push_back(j);
    }
    json mrts = json::array();
    for (const auto& t : maximal_rational_tangles(dec))
        mrts.push_back({{"circle", t.boundary_circle},
                        {"fraction", to_string(t.fraction)},
                        {"cf", t.cf},
                        {"regions", t.regions}});
    json out{{"crossings", d.crossing_count()},
             {"components", component_count(d)},
             {"family", fam},
             {"essential", essential_indices(dec)},
             {"regions", regs},
             {"rational_tangles", mrts},
             {"rational_link", is_rational_link(dec)}};
    if (is_rational_link(dec)) out["rational_label"] = to_string(rational_link_label(dec));
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conway decomposition, flypes and periodicity of alternating link diagrams"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format;
    std::optional<std::size_t> budget_flag;
    app.add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    app.add_option("--budget", budget_flag, "flype closure budget (default 10000, env KNOT_BUDGET)");

    std::string input, input2, action, tree_kind = "essential", cf_text, atoms_file;
    int q = 0;
    std::size_t move_index = 0;
    bool strict = true;

    auto* parse = app.add_subcommand("parse", "read a diagram and report basic data");
    parse->add_option("diagram", input)->required();

    auto* analyze = app.add_subcommand("analyze", "canonical decomposition and structure trees");
    analyze->add_option("diagram", input)->required();

    auto* fraction = app.add_subcommand("fraction", "continued fractions and tangle fractions");
    fraction->add_option("action", action, "eval, expand or cardan")
        ->required()
        ->check(CLI::IsMember({"eval", "expand", "cardan"}));
    fraction->add_option("value", cf_text, "term list or fraction")->required();

    auto* flype = app.add_subcommand("flype", "efficient flypes");
    flype->add_option("action", action, "list, apply, closure or equivalent")
        ->required()
        ->check(CLI::IsMember({"list", "apply", "closure", "equivalent"}));
    flype->add_option("diagram", input)->required();
    flype->add_option("other", input2, "second diagram for equivalent");
    flype->add_option("--move", move_index, "index into the move list for apply");

    auto* symmetry = app.add_subcommand("symmetry", "free rotational symmetries of the projection");
    symmetry->add_option("diagram", input)->required();
    symmetry->add_flag("--strict,!--no-strict", strict, "only strict symmetries (default)");

    auto* period = app.add_subcommand("periodicity", "q-periodicity obstructions and visible witnesses");
    period->add_option("diagram", input)->required();
    period->add_option("--q", q)->required()->check(CLI::Range(2, 1000));
    period->add_option("--atoms", atoms_file, "Murasugi atom tree JSON");

    auto* render = app.add_subcommand("render", "structure tree as DOT");
    render->add_option("diagram", input)->required();
    render->add_option("--tree", tree_kind)->check(CLI::IsMember({"canonical", "essential"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        const std::size_t budget = budget_flag ? *budget_flag : default_budget();
        if (*parse) {
            LinkDiagram d = load_diagram(input);
            emit({{"pd", pd_json(d)},
                  {"crossings", d.crossing_count()},
                  {"components", component_count(d)},
                  {"alternating", is_alternating(d)},
                  {"reduced", is_reduced(d)},
                  {"prime", is_prime(d)},
                  {"writhe", writhe(d)},
                  {"diagram", to_json(d)}});
        } else if (*analyze) {
            LinkDiagram d = load_diagram(input);
            Decomposition dec = canonical_decomposition(d);
            auto ct = canonical_tree(dec);
            auto et = essential_tree(dec);
            if (format == "dot") {
                std::cout << to_dot(ct, "canonical") << to_dot(et, "essential");
            } else {
                json j = decomposition_json(d, dec);
                j["canonical_tree"] = to_json(ct);
                j["essential_tree"] = to_json(et);
                emit(j);
            }
        } else if (*fraction) {
            json j;
            if (action == "eval") {
                ContinuedFraction cf = parse_cf(cf_text);
                Fraction f = eval_cf(cf);
                j = {{"cf", cf}, {"fraction", to_string(f)}};
            } else if (action == "expand") {
                Fraction f = parse_fraction(cf_text);
                j = {{"fraction", to_string(f)}, {"cf", expand_homogeneous(f)}};
            } else {
                // Build T[a0,...,am] and read its fraction back off the diagram.
                ContinuedFraction cf = parse_cf(cf_text);
                Tangle t = cardan_to_diagram(cf);
                j = {{"cf", cf},
                     {"fraction", to_string(tangle_fraction(t))},
                     {"crossings", t.crossing_count()},
                     {"numerator_pd", pd_json(finish(numerator(t)))}};
            }
            if (format == "json") emit(j);
            else if (action == "expand") std::cout << cf_to_string(j["cf"].get<ContinuedFraction>()) << "\n";
            else std::cout << j["fraction"].get<std::string>() << "\n";
        } else if (*flype) {
            LinkDiagram d = load_diagram(input);
            if (action == "list") {
                json moves = json::array();
                for (const auto& m : available_flypes(d)) moves.push_back(to_json(m));
                emit({{"moves", moves}});
            } else if (action == "apply") {
                auto moves = available_flypes(d);
                if (move_index >= moves.size()) throw UsageError("--move is out of range");
                LinkDiagram g = apply_flype(d, moves[move_index]);
                emit({{"move", to_json(moves[move_index])}, {"pd", pd_json(g)}});
            } else if (action == "closure") {
                FlypeClosure cl = flype_closure(d, budget);
                json members = json::array();
                for (const auto& m : cl.members) members.push_back(pd_json(m));
                emit({{"size", cl.members.size()}, {"truncated", cl.truncated}, {"members", members}});
            } else {
                if (input2.empty()) throw UsageError("flype equivalent needs two diagrams");
                LinkDiagram e = load_diagram(input2);
                emit({{"result", std::string(to_string(flype_equivalent(d, e, budget)))}});
            }
        } else if (*symmetry) {
            LinkDiagram d = load_diagram(input);
            json syms = json::array();
            for (const auto& s : projection_symmetries(d))
                if (s.strict || !strict) syms.push_back(to_json(s));
            emit({{"crossings", d.crossing_count()}, {"symmetries", syms}});
        } else if (*period) {
            LinkDiagram d = load_diagram(input);
            std::optional<AtomTree> atoms;
            if (!atoms_file.empty()) {
                try {
                    atoms = atom_tree_from_json(json::parse(read_source(atoms_file)));
                } catch (const json::parse_error& e) {
                    throw KnotError(ErrorCode::kMalformedCode, std::string("atom tree: ") + e.what());
                }
            }
            emit(to_json(periodicity(d, q, atoms, budget)));
        } else if (*render) {
            LinkDiagram d = load_diagram(input);
            auto t = tree_kind == "canonical" ? canonical_tree(d) : essential_tree(d);
            if (format == "json") emit(to_json(t));
            else std::cout << to_dot(t, tree_kind);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const KnotError& e) {
        emit({{"error", std::string(to_string(e.code()))}, {"message", e.what()}});
        return 1;
    } catch (const json::exception& e) {
        emit({{"error", "MalformedCode"}, {"message", e.what()}});
        return 1;
    }
    return 0;
}
