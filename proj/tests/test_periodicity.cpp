#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "knotdecomp/errors.hpp"
#include "knotdecomp/periodicity.hpp"
#include "reference_diagrams.hpp"
#include "test_support.hpp"

using namespace knot;

namespace {

// Map automorphisms grown from the image of dart 0 by rotation and pairing.
std::vector<std::vector<int>> brute_automorphisms(const LinkDiagram& d) {
    std::vector<std::vector<int>> out;
    const int n = d.dart_count();
    for (int x = 0; x < n; ++x) {
        std::vector<int> f(n, -1);
        std::vector<int> stack{0};
        f[0] = x;
        bool ok = true;
        while (!stack.empty() && ok) {
            int a = stack.back();
            stack.pop_back();
            for (auto [u, v] : {std::pair{ccw_next(a), ccw_next(f[a])}, std::pair{d.partner[a], d.partner[f[a]]}}) {
                if (f[u] < 0) {
                    f[u] = v;
                    stack.push_back(u);
                } else if (f[u] != v) {
                    ok = false;
                }
            }
        }
        if (!ok || std::count(f.begin(), f.end(), -1)) continue;
        std::vector<int> sorted = f;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n && ok; ++i) ok = sorted[i] == i;
        for (int a = 0; a < n && ok; ++a) ok = d.is_over(a) == d.is_over(f[a]);
        if (ok) out.push_back(f);
    }
    return out;
}

int order_of(const std::vector<int>& p) {
    std::vector<int> pk = p;
    for (int k = 1;; ++k) {
        bool id = true;
        for (std::size_t i = 0; i < pk.size() && id; ++i) id = pk[i] == static_cast<int>(i);
        if (id) return k;
        for (auto& x : pk) x = p[x];
    }
}

// Free iff every orbit on crossings and on edges has full length.
bool all_orbits_full(const LinkDiagram& d, const std::vector<int>& p, int order) {
    for (int v = 0; v < d.vertex_count(); ++v) {
        int len = 0, w = v;
        do {
            w = dart_vertex(p[make_dart(w, 0)]);
            ++len;
        } while (w != v);
        if (len != order) return false;
    }
    for (int e : d.edge_darts()) {
        int len = 0, x = e;
        do {
            x = p[x];
            x = std::min(x, d.partner[x]);
            ++len;
        } while (x != e);
        if (len != order) return false;
    }
    return true;
}

// Faces traced directly as corner sequences.
std::set<std::set<int>> invariant_faces(const LinkDiagram& d, const std::vector<int>& p) {
    std::vector<std::set<int>> faces;
    std::vector<char> seen(d.dart_count(), 0);
    for (int s = 0; s < d.dart_count(); ++s) {
        if (seen[s]) continue;
        std::set<int> f;
        for (int x = s; !seen[x]; x = ccw_next(d.partner[x])) {
            seen[x] = 1;
            f.insert(x);
        }
        faces.push_back(f);
    }
    std::set<std::set<int>> out;
    for (const auto& f : faces) {
        std::set<int> img;
        for (int x : f) img.insert(p[x]);
        if (img == f) out.insert(f);
    }
    return out;
}

struct OracleSymmetry {
    std::vector<int> map;
    int order;
    std::set<std::set<int>> poles;
    bool strict = true;
};

std::vector<OracleSymmetry> oracle_symmetries(const LinkDiagram& d) {
    std::vector<OracleSymmetry> out;
    for (auto& p : brute_automorphisms(d)) {
        int q = order_of(p);
        if (q == 1 || !all_orbits_full(d, p, q)) continue;
        out.push_back({p, q, invariant_faces(d, p)});
    }
    // Rotations about one axis form a cyclic group, so phi is a proper power
    // exactly when a larger rotation shares its poles.
    for (auto& a : out)
        for (const auto& b : out)
            if (b.poles == a.poles && b.order > a.order && b.order % a.order == 0) a.strict = false;
    return out;
}

// Seifert circles by merging edges through each smoothed crossing.
int oracle_seifert_circles(const LinkDiagram& d) {
    std::vector<int> parent(d.dart_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int a = 0; a < d.dart_count(); ++a) unite(a, d.partner[a]);
    for (int v = 0; v < d.vertex_count(); ++v)
        for (int k = 0; k < 4; ++k) {
            int a = make_dart(v, k);
            // an incoming end joins the outgoing end of the other strand beside it
            if (d.outgoing[a]) continue;
            for (int b : {ccw_next(a), ccw_prev(a)})
                if (d.outgoing[b]) unite(a, b);
        }
    std::set<int> roots;
    for (int a = 0; a < d.dart_count(); ++a) roots.insert(find(a));
    return static_cast<int>(roots.size()) + d.free_loops;
}

// Intersection of fixed sets over all label- and edge-preserving
// permutations psi with psi^q = id.
std::vector<int> oracle_atom_lemma(const AtomTree& t, int q) {
    const int n = static_cast<int>(t.vertices.size());
    std::set<std::pair<int, int>> edges;
    for (auto e : t.edges) edges.insert({std::min(e[0], e[1]), std::max(e[0], e[1])});
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<char> forced(n, 1);
    do {
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) ok = t.vertices[v].name == t.vertices[p[v]].name;
        for (auto [a, b] : edges)
            ok = ok && edges.count({std::min(p[a], p[b]), std::max(p[a], p[b])});
        if (!ok) continue;
        std::vector<int> pk(n);
        std::iota(pk.begin(), pk.end(), 0);
        for (int k = 0; k < q; ++k)
            for (auto& x : pk) x = p[x];
        for (int v = 0; v < n && ok; ++v) ok = pk[v] == v;
        if (!ok) continue;
        for (int v = 0; v < n; ++v)
            if (p[v] != v) forced[v] = 0;
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (forced[v]) out.push_back(v);
    return out;
}

AtomTree atoms_12a634() {
    AtomTree t;
    t.vertices = {{"3_1", true, true, {}}, {"m9_10", true, false, {}}};
    t.edges = {{0, 1}};
    return t;
}

bool has_reason(const PeriodicityReport& r, Obstruction o) {
    return std::find(r.reasons.begin(), r.reasons.end(), o) != r.reasons.end();
}

// Checks every property a witness has to satisfy.
void check_witness(const PeriodicWitness& w, int q) {
    const LinkDiagram& g = w.diagram;
    CHECK(g.crossing_count() % q == 0);
    CHECK(w.symmetry.order == q);
    CHECK(w.symmetry.strict);
    CHECK(w.symmetry.fixed_faces.size() == 2);
    auto tree = essential_tree(g);
    auto phi = induced_tree_automorphism(g, tree, w.symmetry);
    auto fs = fixed_subtree(tree, phi);
    REQUIRE(fs.vertices.size() == 1);
    CHECK(fs.edges.empty());
    CHECK_FALSE(fs.edge_flipped);
    if (q % 2 == 0) CHECK_FALSE(tree.vertices[fs.vertices[0]].is_tbd);
}

}  // namespace

TEST_CASE("projection symmetries agree with the brute-force oracle") {
    std::vector<LinkDiagram> ds;
    for (const auto& k : test_support::corpus())
        if (k.crossings <= 10) ds.push_back(parse_diagram(k.pd));
    for (int n : {2, 3, 4, 5, 6, 7}) ds.push_back(torus_2n(n));
    ds.push_back(octahedron());
    ds.push_back(test_support::eight_piece_ring());
    ds.push_back(test_support::double_octahedron());
    int symmetric = 0;
    for (const auto& d : ds) {
        auto lib = projection_symmetries(d);
        auto ora = oracle_symmetries(d);
        REQUIRE(lib.size() == ora.size());
        std::map<std::vector<int>, const OracleSymmetry*> by_map;
        for (const auto& o : ora) by_map[o.map] = &o;
        for (const auto& s : lib) {
            REQUIRE(by_map.count(s.dart_map));
            const auto& o = *by_map[s.dart_map];
            CHECK(s.order == o.order);
            CHECK(s.strict == o.strict);
            CHECK(s.fixed_faces.size() == 2);
            CHECK(o.poles.size() == 2);
        }
        symmetric += !lib.empty();
    }
    CHECK(symmetric > 10);
}

TEST_CASE("torus diagrams are visibly periodic") {
    for (int q : {3, 5, 7}) {
        auto s = is_q_periodic_projection(torus_2n(q), q);
        REQUIRE(s.has_value());
        CHECK(s->strict);
        CHECK(s->order == q);
        CHECK(s->preserves_orientation);
    }
    CHECK_FALSE(is_q_periodic_projection(torus_2n(3), 2).has_value());
    CHECK(is_q_periodic_projection(pretzel({3, 3, 3}), 3).has_value());
    auto asym = parse_diagram(test_support::corpus_knot("9_32").pd);
    CHECK(projection_symmetries(asym).empty());
}

TEST_CASE("order 8 ring is not strictly 4-periodic") {
    auto d = test_support::eight_piece_ring();
    CHECK_FALSE(is_q_periodic_projection(d, 4).has_value());
    auto s8 = is_q_periodic_projection(d, 8);
    REQUIRE(s8.has_value());
    int order4 = 0;
    for (const auto& s : projection_symmetries(d))
        if (s.order == 4) {
            ++order4;
            CHECK_FALSE(s.strict);
        }
    CHECK(order4 > 0);
}

TEST_CASE("strict symmetries are not powers") {
    for (const auto& k : test_support::corpus()) {
        auto d = parse_diagram(k.pd);
        auto all = projection_symmetries(d);
        for (const auto& s : all) {
            if (!s.strict) continue;
            for (const auto& t : all) {
                if (t.order <= s.order) continue;
                std::vector<int> pk = t.dart_map;
                for (int i = 1; i < t.order; ++i) {
                    CHECK(pk != s.dart_map);
                    for (auto& x : pk) x = t.dart_map[x];
                }
            }
        }
    }
}

TEST_CASE("seifert circles and genus") {
    auto tre = seifert_report(torus_2n(3));
    CHECK(tre.circle_count == 2);
    CHECK(tre.genus == 1);
    for (int q : {3, 5, 7, 9}) CHECK(seifert_report(torus_2n(q)).genus == (q - 1) / 2);
    for (const auto& k : test_support::corpus()) {
        CAPTURE(k.name);
        auto d = parse_diagram(k.pd);
        auto r = seifert_report(d);
        CHECK(r.circle_count == oracle_seifert_circles(d));
        CHECK(2 * r.genus == d.crossing_count() - r.circle_count + 1);
        CHECK(r.genus >= 1);
    }
    auto p = pretzel({3, 3, 3});
    auto s = is_q_periodic_projection(p, 3);
    REQUIRE(s.has_value());
    auto r = seifert_report(p, s);
    REQUIRE(r.crossing_orbits.size() == 3);
    for (const auto& o : r.crossing_orbits) CHECK(o.size() == 3);
    int covered = 0;
    for (const auto& o : r.circle_orbits) {
        CHECK((o.size() == 1 || o.size() == 3));
        covered += static_cast<int>(o.size());
    }
    CHECK(covered == r.circle_count);
}

TEST_CASE("atom lemma") {
    AtomTree one;
    one.vertices = {{"3_1", true, true, {}}};
    CHECK(atom_lemma(one, 3) == std::vector<int>{0});
    CHECK(atom_lemma(atoms_12a634(), 3) == std::vector<int>{0, 1});
    AtomTree path;
    path.vertices = {{"x", false, false, {}}, {"y", false, false, {}}, {"x", false, false, {}}};
    path.edges = {{0, 1}, {1, 2}};
    CHECK(atom_lemma(path, 3) == std::vector<int>{0, 1, 2});
    CHECK(atom_lemma(path, 2) == std::vector<int>{1});
    AtomTree cyc = path;
    cyc.edges.push_back({0, 2});
    CHECK_THROWS_AS((void)atom_lemma(cyc, 3), KnotError);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        AtomTree t;
        for (int v = 0; v < n; ++v) t.vertices.push_back({rng() % 3 ? "a" : "b", false, false, {}});
        for (int v = 1; v < n; ++v) t.edges.push_back({static_cast<int>(rng() % v), v});
        for (int q : {2, 3, 4}) CHECK(atom_lemma(t, q) == oracle_atom_lemma(t, q));
    }

    CHECK_FALSE(atom_admits_period({"m9_10", true, false, {}}, 3));
    CHECK(atom_admits_period({"3_1", true, true, {}}, 3));
    CHECK(atom_admits_period({"mystery", false, false, {}}, 5));
    CHECK_FALSE(atom_admits_period({"mystery", false, false, {2, 4}}, 3));
    CHECK_FALSE(atom_admits_period({"r", true, false, {}}, 5));
}

TEST_CASE("obstruction report") {
    auto k12 = parse_diagram(test_support::corpus_knot("12a_1166").pd);
    auto r = obstruction_report(k12, 5);
    CHECK(r.verdict == Verdict::kObstructed);
    CHECK(has_reason(r, Obstruction::kCrossingCount));

    auto k = parse_diagram(test_support::corpus_knot("12a_634").pd);
    r = obstruction_report(k, 3, atoms_12a634());
    CHECK(r.verdict == Verdict::kObstructed);
    CHECK(has_reason(r, Obstruction::kAtomLemma));
    CHECK(r.forced_atoms == std::vector<int>{0, 1});
    CHECK(find_periodic_projection(k, 3).witness == std::nullopt);

    r = obstruction_report(torus_2n(3), 3);
    CHECK(r.reasons.empty());
    CHECK(r.verdict == Verdict::kInconclusive);

    r = obstruction_report(parse_diagram(test_support::corpus_knot("6_1").pd), 3);
    CHECK(has_reason(r, Obstruction::kRationalKnot));

    r = obstruction_report(torus_2n(3), 2);
    CHECK(r.q2_not_decided);
    CHECK(r.reasons.empty());

    CHECK_THROWS_AS((void)obstruction_report(torus_2n(2), 3), KnotError);
    LinkDiagram nonalt = parse_diagram(test_support::corpus_knot("8_18").pd);
    nonalt.over02[0] ^= 1;
    CHECK_THROWS_AS((void)obstruction_report(nonalt, 4), KnotError);
}

TEST_CASE("obstructions are sound and witnesses are valid over the corpus") {
    int witnesses = 0;
    for (const auto& k : test_support::corpus()) {
        CAPTURE(k.name);
        auto d = parse_diagram(k.pd);
        for (int q : {3, 4, 5, 6, 7}) {
            CAPTURE(q);
            auto rep = obstruction_report(d, q);
            auto found = find_periodic_projection(d, q);
            if (found.witness) {
                ++witnesses;
                CHECK(rep.verdict != Verdict::kObstructed);
                check_witness(*found.witness, q);
            }
            auto full = periodicity(d, q);
            CHECK(full.witness.has_value() == found.witness.has_value());
            if (!full.witness) CHECK(full.verdict == Verdict::kObstructed);
        }
    }
    CHECK(witnesses >= 5);
}

TEST_CASE("serial and parallel searches agree") {
    for (auto d : {test_support::twisted_pretzel333(), parse_diagram(test_support::corpus_knot("9_40").pd)}) {
        auto a = find_periodic_projection_serial(d, 3);
        auto b = find_periodic_projection_parallel(d, 3);
        REQUIRE(a.witness.has_value());
        REQUIRE(b.witness.has_value());
        CHECK(flat_canonical_code(a.witness->diagram) == flat_canonical_code(b.witness->diagram));
    }
}

TEST_CASE("scrambled symmetric knots are recovered") {
    std::mt19937 rng(11);
    for (auto [d, q] : {std::pair{test_support::twisted_pretzel333(), 3}, std::pair{pretzel({3, 3, 3}), 3},
                        std::pair{torus_2n(7), 7}}) {
        for (int trial = 0; trial < 3; ++trial) {
            LinkDiagram cur = d;
            for (int step = 0; step < 15; ++step) {
                auto moves = available_flypes(cur);
                if (moves.empty()) break;
                cur = apply_flype(cur, moves[rng() % moves.size()]);
            }
            auto res = find_periodic_projection(cur, q);
            REQUIRE(res.witness.has_value());
            check_witness(*res.witness, q);
        }
    }
    auto t7 = torus_2n(7);
    auto same = find_periodic_projection(t7, 7);
    REQUIRE(same.witness.has_value());
    CHECK(canonical_code(same.witness->diagram) == canonical_code(t7));
}

TEST_CASE("no even period is witnessed at a band vertex") {
    // Rings of identical rational tangles with even copy counts: any knot
    // among them must not show an even period centred on the ring.
    std::mt19937 rng(5);
    int knots = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int copies = 2 * (1 + static_cast<int>(rng() % 3));
        ContinuedFraction cf{1 + static_cast<long long>(rng() % 2), 1 + static_cast<long long>(rng() % 2)};
        Tangle y = reciprocal(cardan_to_diagram(cf));
        int t = static_cast<int>(rng() % 3);
        LinkDiagram d = ring_diagram(std::vector<Tangle>(copies, y), std::vector<int>(copies, t));
        if (d.crossing_count() > 14 || component_count(d) != 1 || !is_reduced(d)) continue;
        ++knots;
        for (int q : {4, 6}) {
            auto res = find_periodic_projection(d, q);
            if (res.witness) check_witness(*res.witness, q);
        }
    }
    const auto& corpus = test_support::corpus();
    for (int trial = 0; trial < 100; ++trial) {
        LinkDiagram d = parse_diagram(corpus[rng() % corpus.size()].pd);
        for (int step = 0; step < 5; ++step) {
            auto moves = available_flypes(d);
            if (moves.empty()) break;
            d = apply_flype(d, moves[rng() % moves.size()]);
        }
        for (int q : {4, 6}) {
            auto res = find_periodic_projection(d, q, 2000);
            if (res.witness) check_witness(*res.witness, q);
        }
    }
    MESSAGE("ring knots tried: " << knots);
}
