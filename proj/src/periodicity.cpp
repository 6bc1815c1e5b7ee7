#include "knotdecomp/periodicity.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "knotdecomp/decomposition.hpp"
#include "knotdecomp/errors.hpp"

namespace knot {

namespace {

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {  // a after b
    std::vector<int> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
    return out;
}

bool is_identity(const std::vector<int>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) return false;
    return true;
}

int permutation_order(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    long long ord = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = static_cast<int>(i); !seen[j]; j = p[j]) {
            seen[j] = 1;
            ++len;
        }
        ord = std::lcm(ord, static_cast<long long>(len));
    }
    return static_cast<int>(ord);
}

// No vertex and no edge of the map is mapped to itself.
bool moves_everything(const PlanarMap& d, const std::vector<int>& p) {
    for (int v = 0; v < d.vertex_count(); ++v)
        if (dart_vertex(p[make_dart(v, 0)]) == v) return false;
    for (int e : d.edge_darts())
        if (p[e] == e || p[e] == d.partner[e]) return false;
    return true;
}

bool free_action(const PlanarMap& d, const std::vector<int>& p, int order) {
    std::vector<int> pk = p;
    for (int k = 1; k < order; ++k) {
        if (!moves_everything(d, pk)) return false;
        pk = compose(p, pk);
    }
    return true;
}

std::vector<int> fixed_faces(const PlanarMap& d, const std::vector<int>& p) {
    int nf = 0;
    auto face = d.face_of_dart(&nf);
    std::vector<char> fixed(nf, 0);
    for (int x = 0; x < d.dart_count(); ++x)
        if (face[p[x]] == face[x]) fixed[face[x]] = 1;
    std::vector<int> out;
    for (int f = 0; f < nf; ++f)
        if (fixed[f]) out.push_back(f);
    return out;
}

bool preserves_orientation(const PlanarMap& d, const std::vector<int>& p) {
    for (int x = 0; x < d.dart_count(); ++x)
        if (d.outgoing[p[x]] != d.outgoing[x]) return false;
    return true;
}

void require_knot(const LinkDiagram& d) {
    if (component_count(d) != 1) throw KnotError(ErrorCode::kNotAKnot, "periodicity needs a knot diagram");
    if (!d.is_alternating()) throw KnotError(ErrorCode::kNotAlternating, "periodicity needs an alternating diagram");
    if (!is_reduced(d)) throw KnotError(ErrorCode::kInvalidDiagram, "periodicity needs a reduced diagram");
}

VertexSet image(const VertexSet& s, const std::vector<int>& vmap) {
    VertexSet out;
    for (int v : s.members()) out.set(vmap[v]);
    return out;
}

}  // namespace

nlohmann::json to_json(const ProjectionSymmetry& s) {
    return {{"order", s.order},
            {"strict", s.strict},
            {"fixed_faces", s.fixed_faces},
            {"preserves_orientation", s.preserves_orientation},
            {"crossing_map", s.crossing_map()}};
}

std::vector<ProjectionSymmetry> projection_symmetries(const LinkDiagram& d) {
    std::vector<ProjectionSymmetry> out;
    if (d.vertex_count() == 0 || !d.connected()) return out;
    for (auto& p : map_automorphisms(d, false)) {
        if (is_identity(p)) continue;
        const int order = permutation_order(p);
        if (!free_action(d, p, order)) continue;
        ProjectionSymmetry s;
        s.order = order;
        s.fixed_faces = fixed_faces(d, p);
        s.preserves_orientation = preserves_orientation(d, p);
        s.dart_map = std::move(p);
        out.push_back(std::move(s));
    }
    // phi is a proper power of psi when it lies in the cyclic group of a
    // symmetry of larger order.
    for (auto& phi : out) {
        for (const auto& psi : out) {
            if (psi.order <= phi.order || psi.order % phi.order != 0) continue;
            std::vector<int> pk = psi.dart_map;
            for (int k = 1; k < psi.order && phi.strict; ++k) {
                if (pk == phi.dart_map) phi.strict = false;
                pk = compose(psi.dart_map, pk);
            }
            if (!phi.strict) break;
        }
    }
    std::sort(out.begin(), out.end(), [](const ProjectionSymmetry& a, const ProjectionSymmetry& b) {
        return a.order != b.order ? a.order < b.order : a.dart_map < b.dart_map;
    });
    return out;
}

std::optional<ProjectionSymmetry> is_q_periodic_projection(const LinkDiagram& d, int q) {
    if (q < 2) return std::nullopt;
    for (auto& s : projection_symmetries(d))
        if (s.order == q && s.strict) return s;
    return std::nullopt;
}

TreeAutomorphism induced_tree_automorphism(const LinkDiagram& d, const StructureTree& tree,
                                           const ProjectionSymmetry& s) {
    Decomposition dec = canonical_decomposition(d, 0);
    const auto vmap = s.crossing_map();
    const VertexSet all = d.all_vertices();
    const int ne = static_cast<int>(tree.edges.size());
    std::vector<int> edge_map(ne, -1);
    for (int e = 0; e < ne; ++e) {
        VertexSet img = image(dec.family[tree.edge_circle[e]].inside, vmap);
        for (int f = 0; f < ne && edge_map[e] < 0; ++f) {
            const VertexSet& in = dec.family[tree.edge_circle[f]].inside;
            if (in == img || all.minus(in) == img) edge_map[e] = f;
        }
        if (edge_map[e] < 0) throw std::logic_error("symmetry does not preserve the essential circles");
    }
    const int nv = tree.size();
    std::vector<VertexSet> crossings(nv);
    std::vector<std::vector<int>> incident(nv);
    for (int v = 0; v < nv; ++v)
        for (int r : tree.vertices[v].regions) crossings[v] |= dec.regions[r].vertices;
    for (int e = 0; e < ne; ++e)
        for (int v : tree.edges[e]) incident[v].push_back(e);
    for (auto& l : incident) std::sort(l.begin(), l.end());

    TreeAutomorphism phi;
    phi.vertex_map.assign(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (!crossings[v].empty()) {
            VertexSet img = image(crossings[v], vmap);
            for (int w = 0; w < nv; ++w)
                if (crossings[w] == img) phi.vertex_map[v] = w;
        } else {
            std::vector<int> img;
            for (int e : incident[v]) img.push_back(edge_map[e]);
            std::sort(img.begin(), img.end());
            for (int w = 0; w < nv; ++w)
                if (incident[w] == img) phi.vertex_map[v] = w;
        }
        if (phi.vertex_map[v] < 0) throw std::logic_error("symmetry does not preserve the essential regions");
    }
    phi.order = permutation_order(phi.vertex_map);
    return phi;
}

// Atoms ------------------------------------------------------------------

AtomTree atom_tree_from_json(const nlohmann::json& j) {
    AtomTree t;
    try {
        for (const auto& v : j.at("vertices")) {
            AtomInfo a;
            a.name = v.at("name").get<std::string>();
            a.is_rational = v.value("is_rational", false);
            a.is_torus2q = v.value("is_torus2q", false);
            if (v.contains("periods")) a.periods = v.at("periods").get<std::vector<int>>();
            t.vertices.push_back(std::move(a));
        }
        for (const auto& e : j.at("edges")) t.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    } catch (const nlohmann::json::exception& e) {
        throw KnotError(ErrorCode::kMalformedCode, std::string("atom tree: ") + e.what());
    }
    return t;
}

nlohmann::json to_json(const AtomTree& t) {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& a : t.vertices)
        vs.push_back({{"name", a.name}, {"is_rational", a.is_rational}, {"is_torus2q", a.is_torus2q},
                      {"periods", a.periods}});
    nlohmann::json es = nlohmann::json::array();
    for (const auto& e : t.edges) es.push_back({e[0], e[1]});
    return {{"vertices", vs}, {"edges", es}};
}

std::optional<std::vector<int>> known_atom_periods(std::string_view name) {
    if (name.substr(0, 7) == "mirror ") name.remove_prefix(7);
    else if (name.substr(0, 1) == "m") name.remove_prefix(1);
    // (2,n) torus knots have exactly the divisors of 2 and of n as periods;
    // the other rational knots listed here are only 2-periodic.
    static const std::map<std::string, std::vector<int>, std::less<>> table = {
        {"3_1", {2, 3}},  {"5_1", {2, 5}}, {"7_1", {2, 7}}, {"9_1", {2, 3, 9}}, {"11a_367", {2, 11}},
        {"4_1", {2}},     {"5_2", {2}},    {"6_1", {2}},    {"6_2", {2}},       {"6_3", {2}},
        {"7_2", {2}},     {"7_3", {2}},    {"7_4", {2}},    {"9_10", {2}},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

bool atom_admits_period(const AtomInfo& a, int q) {
    auto contains = [q](const std::vector<int>& v) { return std::find(v.begin(), v.end(), q) != v.end(); };
    if (!a.periods.empty()) return contains(a.periods);
    if (auto known = known_atom_periods(a.name)) return contains(*known);
    if (a.is_rational && !a.is_torus2q) return q == 2;
    return true;
}

std::vector<int> atom_lemma(const AtomTree& t, int q) {
    const int n = static_cast<int>(t.vertices.size());
    if (n == 0 || static_cast<int>(t.edges.size()) != n - 1)
        throw KnotError(ErrorCode::kNotATree, "atom graph must have n-1 edges");
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : t.edges) {
        if (e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n)
            throw KnotError(ErrorCode::kNotATree, "atom edge out of range");
        int a = find(e[0]), b = find(e[1]);
        if (a == b) throw KnotError(ErrorCode::kNotATree, "atom graph has a cycle");
        parent[a] = b;
    }
    // Reuse the labeled tree machinery: atoms with equal names share a label.
    std::map<std::string, int> ids;
    StructureTree st;
    for (const auto& a : t.vertices) {
        TreeVertex v;
        v.label = TreeLabel::weight(ids.emplace(a.name, static_cast<int>(ids.size())).first->second);
        st.vertices.push_back(v);
    }
    st.edges = t.edges;
    st.edge_circle.assign(t.edges.size(), -1);
    std::vector<char> forced(n, 1);
    for (const auto& phi : automorphisms_of_order(st, q, TreeMatch::kLoose))
        for (int v = 0; v < n; ++v)
            if (phi.vertex_map[v] != v) forced[v] = 0;
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (forced[v]) out.push_back(v);
    return out;
}

// Reports ----------------------------------------------------------------

std::string_view to_string(Obstruction o) {
    switch (o) {
        case Obstruction::kCrossingCount: return "CrossingCount";
        case Obstruction::kRationalKnot: return "RationalKnot";
        case Obstruction::kNoTreeAutomorphism: return "NoTreeAutomorphism";
        case Obstruction::kEdgeFixed: return "EdgeFixed";
        case Obstruction::kParityTBD: return "ParityTBD";
        case Obstruction::kAtomLemma: return "AtomLemma";
        case Obstruction::kClosureExhausted: return "ClosureExhausted";
    }
    return "?";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::kVisible: return "visible";
        case Verdict::kObstructed: return "obstructed";
        case Verdict::kInconclusive: return "inconclusive";
    }
    return "?";
}

nlohmann::json to_json(const PeriodicityReport& r) {
    nlohmann::json j;
    j["q"] = r.q;
    j["verdict"] = std::string(to_string(r.verdict));
    j["reasons"] = nlohmann::json::array();
    for (auto o : r.reasons) j["reasons"].push_back(std::string(to_string(o)));
    j["flags"] = nlohmann::json::array();
    if (r.q2_not_decided) j["flags"].push_back("q2-not-decided");
    if (r.budget_exceeded) j["flags"].push_back("budget-exceeded");
    j["searched"] = r.searched;
    j["forced_atoms"] = r.forced_atoms;
    if (r.witness) {
        j["witness"] = {{"pd", to_pd(r.witness->diagram)},
                        {"crossings", r.witness->diagram.crossing_count()},
                        {"symmetry", to_json(r.witness->symmetry)}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

PeriodicityReport obstruction_report(const LinkDiagram& d, int q, const std::optional<AtomTree>& atoms) {
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    require_knot(d);
    PeriodicityReport r;
    r.q = q;
    if (q == 2) {
        r.q2_not_decided = true;
        return r;
    }
    if (d.crossing_count() % q != 0) r.reasons.push_back(Obstruction::kCrossingCount);

    Decomposition dec = canonical_decomposition(d, 0);
    const bool torus = dec.regions.size() == 1 && dec.regions[0].kind == RegionKind::kTBD;
    if (is_rational_link(dec) && !torus) r.reasons.push_back(Obstruction::kRationalKnot);

    StructureTree tree = essential_tree(dec);
    std::vector<TreeAutomorphism> candidates = automorphisms_of_order(tree, q, TreeMatch::kLoose);
    if (tree.size() == 1) candidates.push_back(identity_automorphism(tree));
    std::vector<int> fixed_vertex;
    for (const auto& phi : candidates) {
        FixedSubtree fs = fixed_subtree(tree, phi);
        if (fs.vertices.size() == 1 && fs.edges.empty() && !fs.edge_flipped) fixed_vertex.push_back(fs.vertices[0]);
    }
    if (candidates.empty()) r.reasons.push_back(Obstruction::kNoTreeAutomorphism);
    else if (fixed_vertex.empty()) r.reasons.push_back(Obstruction::kEdgeFixed);
    else if (q % 2 == 0 &&
             std::all_of(fixed_vertex.begin(), fixed_vertex.end(), [&](int v) { return tree.vertices[v].is_tbd; }))
        r.reasons.push_back(Obstruction::kParityTBD);

    if (atoms) {
        r.forced_atoms = atom_lemma(*atoms, q);
        for (int v : r.forced_atoms)
            if (!atom_admits_period(atoms->vertices[v], q)) {
                r.reasons.push_back(Obstruction::kAtomLemma);
                break;
            }
    }
    r.verdict = r.reasons.empty() ? Verdict::kInconclusive : Verdict::kObstructed;
    return r;
}

namespace {

PeriodicSearch search_impl(const LinkDiagram& d, int q, std::size_t budget, bool parallel) {
    PeriodicSearch out;
    auto accept = [&](const LinkDiagram& g, ProjectionSymmetry s) {
        if (g.crossing_count() % q != 0)
            throw std::logic_error("periodic witness violates the crossing count law");
        out.witness = PeriodicWitness{g, std::move(s)};
    };
    out.searched = 1;
    if (auto s = is_q_periodic_projection(d, q)) {
        accept(d, std::move(*s));
        return out;
    }
    FlypeClosure cl = parallel ? flype_closure_parallel(d, budget) : flype_closure_serial(d, budget);
    out.truncated = cl.truncated;
    const int n = static_cast<int>(cl.members.size());
    std::vector<std::optional<ProjectionSymmetry>> found(n);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i < n; ++i) found[i] = is_q_periodic_projection(cl.members[i], q);
    } else {
        for (int i = 0; i < n; ++i) {
            found[i] = is_q_periodic_projection(cl.members[i], q);
            if (found[i]) break;
        }
    }
    out.searched += static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i)
        if (found[i]) {
            accept(cl.members[i], std::move(*found[i]));
            break;
        }
    return out;
}

}  // namespace

PeriodicSearch find_periodic_projection_serial(const LinkDiagram& d, int q, std::size_t budget) {
    return search_impl(d, q, budget, false);
}

PeriodicSearch find_periodic_projection_parallel(const LinkDiagram& d, int q, std::size_t budget) {
    return search_impl(d, q, budget, true);
}

PeriodicSearch find_periodic_projection(const LinkDiagram& d, int q, std::size_t budget) {
    return search_impl(d, q, budget, true);
}

PeriodicityReport periodicity(const LinkDiagram& d, int q, const std::optional<AtomTree>& atoms,
                              std::size_t budget) {
    PeriodicityReport r = obstruction_report(d, q, atoms);
    if (r.verdict == Verdict::kObstructed) return r;
    PeriodicSearch s = find_periodic_projection(d, q, budget);
    r.searched = s.searched;
    if (s.witness) {
        r.witness = std::move(s.witness);
        r.verdict = Verdict::kVisible;
    } else if (s.truncated) {
        r.budget_exceeded = true;
    } else if (q >= 3) {
        r.reasons.push_back(Obstruction::kClosureExhausted);
        r.verdict = Verdict::kObstructed;
    }
    return r;
}

// Seifert circles --------------------------------------------------------

SeifertReport seifert_report(const LinkDiagram& d, const std::optional<ProjectionSymmetry>& s) {
    SeifertReport r;
    r.circle_of_dart.assign(d.dart_count(), -1);
    int circles = 0;
    for (int a = 0; a < d.dart_count(); ++a) {
        if (d.outgoing[a] || r.circle_of_dart[a] >= 0) continue;
        for (int x = a; r.circle_of_dart[x] < 0;) {
            r.circle_of_dart[x] = circles;
            const int out = d.outgoing[ccw_next(x)] ? ccw_next(x) : ccw_prev(x);
            x = d.partner[out];
        }
        ++circles;
    }
    r.circle_count = circles + d.free_loops;
    const int mu = component_count(d);
    r.genus = (d.crossing_count() - r.circle_count - mu + 2) / 2;
    if (!s || !s->preserves_orientation) return r;

    std::vector<int> cmap(circles, -1);
    for (int a = 0; a < d.dart_count(); ++a)
        if (r.circle_of_dart[a] >= 0) cmap[r.circle_of_dart[a]] = r.circle_of_dart[s->dart_map[a]];
    auto orbits = [](const std::vector<int>& p, const std::vector<char>& use) {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(p.size(), 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (seen[i] || !use[i]) continue;
            std::vector<int> o;
            for (int j = static_cast<int>(i); !seen[j]; j = p[j]) {
                seen[j] = 1;
                o.push_back(j);
            }
            std::sort(o.begin(), o.end());
            out.push_back(std::move(o));
        }
        return out;
    };
    r.circle_orbits = orbits(cmap, std::vector<char>(circles, 1));
    std::vector<char> is_x(d.vertex_count());
    for (int v = 0; v < d.vertex_count(); ++v) is_x[v] = d.is_crossing(v);
    r.crossing_orbits = orbits(s->crossing_map(), is_x);
    return r;
}

nlohmann::json to_json(const SeifertReport& r) {
    return {{"circles", r.circle_count},
            {"genus", r.genus},
            {"circle_orbits", r.circle_orbits},
            {"crossing_orbits", r.crossing_orbits}};
}

}  // namespace knot
