#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "knotdecomp/errors.hpp"
#include "knotdecomp/flype.hpp"
#include "knotdecomp/structure_tree.hpp"
#include "test_support.hpp"

using namespace knot;

namespace {

std::vector<int> tbd_weights(const LinkDiagram& d) {
    std::vector<int> w;
    for (const auto& r : canonical_decomposition(d).regions)
        if (r.kind == RegionKind::kTBD) w.push_back(r.total_weight);
    std::sort(w.begin(), w.end());
    return w;
}

// Every flype the band structure allows: any crossing, either side, any
// contiguous run of units short of the whole band.
std::vector<LinkDiagram> all_flype_results(const LinkDiagram& d) {
    std::vector<LinkDiagram> out;
    Decomposition dec = canonical_decomposition(d);
    for (int r = 0; r < static_cast<int>(dec.regions.size()); ++r) {
        const Region& reg = dec.regions[r];
        if (reg.kind != RegionKind::kTBD || reg.boundary.size() < 2) continue;
        const int n = static_cast<int>(reg.band.size());
        for (int c = 0; c < n; ++c) {
            if (!reg.band[c].is_crossing) continue;
            for (int len = 1; len <= n - 2; ++len) {
                for (int dir : {1, -1}) {
                    FlypeMove m;
                    m.active_crossing = reg.band[c].crossing;
                    m.crossing_prev = dir > 0 ? reg.band[c].prev : reg.band[c].next;
                    int far = c;
                    for (int s = 1; s <= len; ++s) {
                        far = ((c + dir * s) % n + n) % n;
                        m.flipped |= reg.band[far].content;
                    }
                    auto exit = dir > 0 ? reg.band[far].next : reg.band[far].prev;
                    for (auto e : {exit, std::array<int, 2>{exit[1], exit[0]}}) {
                        m.tangle_exit = e;
                        try {
                            out.push_back(apply_flype(d, m));
                            break;
                        } catch (const KnotError&) {
                        }
                    }
                }
            }
        }
    }
    return out;
}

std::set<std::vector<int>> oracle_closure(const LinkDiagram& d) {
    std::set<std::vector<int>> seen{flat_canonical_code(d)};
    std::vector<LinkDiagram> todo{d};
    while (!todo.empty()) {
        LinkDiagram cur = todo.back();
        todo.pop_back();
        for (auto& nd : all_flype_results(cur))
            if (seen.insert(flat_canonical_code(nd)).second) todo.push_back(nd);
    }
    return seen;
}

std::set<std::vector<int>> codes(const FlypeClosure& cl) {
    std::set<std::vector<int>> s;
    for (const auto& m : cl.members) s.insert(flat_canonical_code(m));
    return s;
}

LinkDiagram cardan_closure(const ContinuedFraction& cf) {
    LinkDiagram d = numerator(cardan_to_diagram(cf));
    d.make_alternating(true);
    d.orient();
    return d;
}

}  // namespace

TEST_CASE("trefoil admits no efficient flype") {
    auto d = parse_diagram(test_support::corpus_knot("3_1").pd);
    CHECK(available_flypes(d).empty());
    auto orbits = flype_orbits(d);
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0].twist_regions.size() == 1);
    CHECK(orbits[0].crossings.count() == 3);
    CHECK(flype_closure(d).members.size() == 1);
}

TEST_CASE("jewel admits no flype") {
    auto d = parse_diagram(test_support::corpus_knot("8_18").pd);
    CHECK(available_flypes(d).empty());
    CHECK(flype_orbits(d).empty());
}

TEST_CASE("flypes preserve the invariants over the corpus") {
    int moves = 0;
    for (const auto& k : test_support::corpus()) {
        CAPTURE(k.name);
        auto d = parse_diagram(k.pd);
        auto ct = canonical_tree(d);
        auto et = essential_tree(d);
        auto weights = tbd_weights(d);
        auto orbits = flype_orbits(d);
        for (std::size_t i = 0; i < orbits.size(); ++i)
            for (std::size_t j = i + 1; j < orbits.size(); ++j)
                CHECK_FALSE(orbits[i].crossings.intersects(orbits[j].crossings));
        for (const auto& m : available_flypes(d)) {
            ++moves;
            CHECK(m.source_twist != m.target_twist);
            auto nd = apply_flype(d, m);
            CHECK(nd.crossing_count() == d.crossing_count());
            CHECK(nd.is_alternating());
            CHECK(nd.sphere_euler_holds());
            CHECK(tbd_weights(nd) == weights);
            CHECK(tree_isomorphic(ct, canonical_tree(nd), TreeMatch::kStrict).has_value());
            CHECK(tree_isomorphic(et, essential_tree(nd), TreeMatch::kStrict).has_value());
            bool back = false;
            for (const auto& m2 : available_flypes(nd))
                back = back || flat_canonical_code(apply_flype(nd, m2)) == flat_canonical_code(d);
            CHECK(back);
        }
    }
    CHECK(moves > 300);
}

TEST_CASE("last-crossing moves reach the full flype closure") {
    for (const auto& k : test_support::corpus()) {
        if (k.crossings > 9) continue;
        CAPTURE(k.name);
        auto d = parse_diagram(k.pd);
        auto cl = flype_closure_serial(d);
        CHECK_FALSE(cl.truncated);
        CHECK(codes(cl) == oracle_closure(d));
    }
}

TEST_CASE("closure is a class") {
    auto d = parse_diagram(test_support::corpus_knot("9_27").pd);
    auto cl = flype_closure_serial(d);
    auto par = flype_closure_parallel(d);
    REQUIRE(cl.members.size() == par.members.size());
    for (std::size_t i = 0; i < cl.members.size(); ++i)
        CHECK(flat_canonical_code(cl.members[i]) == flat_canonical_code(par.members[i]));
    for (const auto& m : cl.members) CHECK(codes(flype_closure(m)) == codes(cl));
    auto small = flype_closure(d, 3);
    CHECK(small.truncated);
    CHECK(small.members.size() == 3);
}

TEST_CASE("illegal moves are rejected") {
    auto d = parse_diagram(test_support::corpus_knot("6_2").pd);
    auto moves = available_flypes(d);
    REQUIRE_FALSE(moves.empty());
    FlypeMove m = moves.front();
    m.flipped = VertexSet{};
    CHECK_THROWS_AS((void)apply_flype(d, m), KnotError);
    m = moves.front();
    m.flipped.set(m.active_crossing);
    CHECK_THROWS_AS((void)apply_flype(d, m), KnotError);
    m = moves.front();
    std::swap(m.crossing_prev[0], m.crossing_prev[1]);
    CHECK_THROWS_AS((void)apply_flype(d, m), KnotError);
}

TEST_CASE("flype equivalence") {
    auto a = cardan_closure({2, 3});
    auto b = cardan_closure({2, 2, 1});
    CHECK(flype_equivalent(a, b) == Equivalence::kEquivalent);
    auto t = parse_diagram(test_support::corpus_knot("3_1").pd);
    auto f = parse_diagram(test_support::corpus_knot("4_1").pd);
    CHECK(flype_equivalent(t, f) == Equivalence::kNotEquivalent);
    auto d = parse_diagram(test_support::corpus_knot("8_14").pd);
    for (const auto& m : available_flypes(d)) CHECK(flype_equivalent(d, apply_flype(d, m)) == Equivalence::kEquivalent);
    auto e = parse_diagram(test_support::corpus_knot("8_13").pd);
    CHECK(flype_equivalent(d, e) == Equivalence::kNotEquivalent);
    CHECK(flype_equivalent(d, apply_flype(d, available_flypes(d).front()), 1) == Equivalence::kIndeterminate);
}

TEST_CASE("mixed bands are normalized") {
    // T[3,-1] closes to a four crossing Hopf link diagram.
    LinkDiagram d = numerator(cardan_to_diagram({3, -1}));
    d.orient();
    auto dec = canonical_decomposition(d);
    bool mixed = false;
    for (const auto& r : dec.regions) mixed = mixed || r.mixed_signs;
    REQUIRE(mixed);
    LinkDiagram n = normalize_twists(d);
    CHECK(n.crossing_count() == 2);
    auto dn = canonical_decomposition(n);
    for (const auto& r : dn.regions) CHECK_FALSE(r.mixed_signs);
    auto h = parse_diagram(test_support::corpus_knot("7_4").pd);
    CHECK(flat_canonical_code(normalize_twists(h)) == flat_canonical_code(h));
}
