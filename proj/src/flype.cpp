#include "knotdecomp/flype.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "knotdecomp/errors.hpp"

namespace knot {

std::vector<int> flat_canonical_code(const LinkDiagram& d) {
    return std::min(canonical_code(d), canonical_code(d.reflected(d.all_vertices(), true)));
}

nlohmann::json to_json(const FlypeMove& m) {
    return {{"region", m.region},
            {"active_crossing", m.active_crossing},
            {"source_twist", m.source_twist},
            {"target_twist", m.target_twist},
            {"flipped", m.flipped.members()},
            {"crossing_prev", m.crossing_prev},
            {"tangle_exit", m.tangle_exit}};
}

LinkDiagram apply_flype(const LinkDiagram& d, const FlypeMove& m) {
    auto illegal = [](const std::string& why) { return KnotError(ErrorCode::kIllegalMove, why); };
    const int c = m.active_crossing;
    if (c < 0 || c >= d.vertex_count() || !d.is_crossing(c)) throw illegal("active crossing is not a crossing");
    if (m.flipped.empty()) throw illegal("trivial flype: the flipped tangle is empty");
    if (m.flipped.test(c)) throw illegal("active crossing lies inside the flipped tangle");
    for (int v : m.flipped.members())
        if (v >= d.vertex_count() || !d.is_crossing(v)) throw illegal("flipped tangle must consist of crossings");
    const int x0 = m.crossing_prev[0], x1 = m.crossing_prev[1];
    if (dart_vertex(x0) != c || x1 != ccw_next(x0)) throw illegal("crossing darts are not adjacent at the crossing");
    const int y0 = ccw_next(x1), y1 = ccw_next(y0);
    const int a_bl = d.partner[y0], a_tl = d.partner[y1];
    const int g0 = m.tangle_exit[0], g1 = m.tangle_exit[1];
    const VertexSet& a = m.flipped;
    if (!a.test(dart_vertex(a_bl)) || !a.test(dart_vertex(a_tl)) || !a.test(dart_vertex(g0)) ||
        !a.test(dart_vertex(g1)))
        throw illegal("crossing does not sit next to the flipped tangle");
    std::vector<int> walk;
    try {
        walk = d.boundary_walk(a);
    } catch (const KnotError&) {
        throw illegal("flipped set is not a tangle");
    }
    if (walk.size() != 4) throw illegal("flipped set must meet four edges");
    std::rotate(walk.begin(), std::find(walk.begin(), walk.end(), a_tl), walk.end());
    if (walk != std::vector<int>{a_tl, a_bl, g0, g1}) throw illegal("tangle boundary is not in band order");
    const int h_bot = d.partner[g0], h_top = d.partner[g1];
    const int p_top = d.partner[x0], p_bot = d.partner[x1];
    if (dart_vertex(h_bot) == c || dart_vertex(h_top) == c || a.test(dart_vertex(p_top)) ||
        a.test(dart_vertex(p_bot)) || dart_vertex(p_top) == c || dart_vertex(p_bot) == c)
        throw illegal("flype would only rotate the whole diagram");
    auto mm = [&](int x) { return make_dart(dart_vertex(x), (4 - dart_slot(x)) & 3); };
    LinkDiagram r = d.reflected(a, true);
    r.link(p_top, mm(a_bl));
    r.link(p_bot, mm(a_tl));
    r.link(mm(g0), x0);
    r.link(mm(g1), x1);
    r.link(y1, h_top);
    r.link(y0, h_bot);
    if (!r.outgoing.empty()) {
        // The moved part may carry its strands the other way round now.
        VertexSet moved = a;
        moved.set(c);
        for (int b : {mm(a_bl), mm(a_tl), y0, y1}) {
            int cur = b;
            while (moved.test(dart_vertex(cur))) {
                r.outgoing[cur] = r.outgoing[r.partner[cur]] ? 0 : 1;
                int out = across(cur);
                r.outgoing[out] = r.outgoing[cur] ? 0 : 1;
                cur = r.partner[out];
            }
        }
    }
    r.validate();
    return r;
}

namespace {

struct Runs {
    std::vector<int> box_units;               // unit index of box k
    std::vector<std::vector<int>> crossings;  // unit indices of run k
};

Runs band_runs(const Region& reg) {
    Runs out;
    const int n = static_cast<int>(reg.band.size());
    for (int i = 0; i < n; ++i) {
        if (!reg.band[i].is_crossing) {
            out.box_units.push_back(i);
            out.crossings.emplace_back();
        } else {
            if (out.crossings.empty()) out.crossings.emplace_back();
            out.crossings.back().push_back(i);
        }
    }
    return out;
}

bool link_mode_band(const Region& reg) {
    if (reg.kind != RegionKind::kTBD) return false;
    return std::find(reg.boundary.begin(), reg.boundary.end(), kOpenEdge) == reg.boundary.end();
}

std::vector<FlypeMove> raw_moves(const Decomposition& dec) {
    std::vector<FlypeMove> out;
    for (int r = 0; r < static_cast<int>(dec.regions.size()); ++r) {
        const Region& reg = dec.regions[r];
        if (!link_mode_band(reg) || reg.boundary.size() < 2) continue;
        Runs runs = band_runs(reg);
        const int k = static_cast<int>(runs.box_units.size());
        const int n = static_cast<int>(reg.band.size());
        for (int i = 0; i < k; ++i) {
            if (runs.crossings[i].empty()) continue;
            const int cu = runs.crossings[i].back();
            for (int step = 1; step < k; ++step) {
                const int j = (i + step) % k;
                FlypeMove m;
                m.region = r;
                m.active_crossing = reg.band[cu].crossing;
                m.source_twist = i;
                m.target_twist = j;
                m.crossing_prev = reg.band[cu].prev;
                const int last = runs.box_units[j];
                for (int u = (cu + 1) % n;; u = (u + 1) % n) {
                    m.flipped |= reg.band[u].content;
                    if (u == last) break;
                }
                m.tangle_exit = reg.band[last].next;
                out.push_back(std::move(m));
            }
        }
    }
    return out;
}

struct Successor {
    std::vector<int> code;
    LinkDiagram diagram;
    FlypeMove move;
};

std::vector<Successor> successors(const LinkDiagram& d, const Decomposition& dec) {
    std::vector<Successor> out;
    std::map<std::vector<int>, int> seen;
    for (auto& m : raw_moves(dec)) {
        LinkDiagram nd = apply_flype(d, m);
        auto code = flat_canonical_code(nd);
        if (!seen.emplace(code, 0).second) continue;
        out.push_back({std::move(code), std::move(nd), std::move(m)});
    }
    return out;
}

std::vector<Successor> successors(const LinkDiagram& d) {
    Decomposition dec;
    try {
        dec = canonical_decomposition(d, 0);
    } catch (const KnotError&) {
        return {};
    }
    return successors(d, dec);
}

// Removes two crossings joined by a bigon along their strands.
LinkDiagram remove_bigon(const LinkDiagram& d, int c1, int c2) {
    std::vector<char> virt(d.vertex_count(), 0);
    virt[c1] = virt[c2] = 1;
    std::vector<int> glue(d.dart_count(), -1);
    for (int c : {c1, c2})
        for (int k = 0; k < 4; ++k) glue[make_dart(c, k)] = across(make_dart(c, k));
    return splice(d, virt, glue);
}

}  // namespace

std::vector<FlypeMove> available_flypes(const LinkDiagram& d, const Decomposition& dec) {
    std::vector<FlypeMove> out;
    for (auto& s : successors(d, dec)) out.push_back(std::move(s.move));
    return out;
}

std::vector<FlypeMove> available_flypes(const LinkDiagram& d) {
    std::vector<FlypeMove> out;
    for (auto& s : successors(d)) out.push_back(std::move(s.move));
    return out;
}

LinkDiagram normalize_twists(const LinkDiagram& d) {
    LinkDiagram cur = d;
    for (int guard = 0; guard <= 2 * d.crossing_count() + 2; ++guard) {
        Decomposition dec;
        try {
            dec = canonical_decomposition(cur, 0);
        } catch (const KnotError&) {
            return cur;
        }
        bool changed = false;
        for (int r = 0; r < static_cast<int>(dec.regions.size()) && !changed; ++r) {
            const Region& reg = dec.regions[r];
            if (!link_mode_band(reg) || !reg.mixed_signs) continue;
            const int n = static_cast<int>(reg.band.size());
            for (int i = 0; i < n && !changed; ++i) {
                const auto& u = reg.band[i];
                const auto& w = reg.band[(i + 1) % n];
                if (n < 2 || !u.is_crossing || !w.is_crossing || u.sign == w.sign || u.crossing == w.crossing)
                    continue;
                cur = remove_bigon(cur, u.crossing, w.crossing);
                changed = true;
            }
            if (changed) break;
            for (const auto& m : raw_moves(dec)) {
                if (m.region != r) continue;
                Runs runs = band_runs(reg);
                const auto& src = runs.crossings[m.source_twist];
                const auto& dst = runs.crossings[m.target_twist];
                if (dst.empty() || reg.band[src.back()].sign == reg.band[dst.front()].sign) continue;
                cur = apply_flype(cur, m);
                changed = true;
                break;
            }
        }
        if (!changed) return cur;
    }
    return cur;
}

std::vector<FlypeOrbit> flype_orbits(const LinkDiagram& d) {
    std::vector<FlypeOrbit> out;
    Decomposition dec = canonical_decomposition(d, 0);
    for (int r = 0; r < static_cast<int>(dec.regions.size()); ++r) {
        const Region& reg = dec.regions[r];
        if (reg.kind != RegionKind::kTBD) continue;
        FlypeOrbit o;
        o.region = r;
        for (const auto& run : band_runs(reg).crossings) {
            VertexSet s;
            for (int u : run) s.set(reg.band[u].crossing);
            if (!s.empty()) o.twist_regions.push_back(s);
            o.crossings |= s;
        }
        if (!o.crossings.empty()) out.push_back(std::move(o));
    }
    return out;
}

namespace {

FlypeClosure closure_impl(const LinkDiagram& d, std::size_t budget, bool parallel) {
    FlypeClosure out;
    std::map<std::vector<int>, LinkDiagram> seen;
    seen.emplace(flat_canonical_code(d), d);
    std::vector<LinkDiagram> frontier{d};
    while (!frontier.empty() && !out.truncated) {
        const int n = static_cast<int>(frontier.size());
        std::vector<std::vector<Successor>> next(frontier.size());
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
            for (int i = 0; i < n; ++i) next[i] = successors(frontier[i]);
        } else {
            for (int i = 0; i < n; ++i) next[i] = successors(frontier[i]);
        }
        std::vector<LinkDiagram> level;
        for (auto& list : next)
            for (auto& s : list) {
                if (seen.count(s.code)) continue;
                if (seen.size() >= budget) {
                    out.truncated = true;
                    break;
                }
                level.push_back(s.diagram);
                seen.emplace(std::move(s.code), std::move(s.diagram));
            }
        frontier = std::move(level);
    }
    for (auto& [code, g] : seen) out.members.push_back(std::move(g));
    return out;
}

}  // namespace

FlypeClosure flype_closure_serial(const LinkDiagram& d, std::size_t budget) { return closure_impl(d, budget, false); }

FlypeClosure flype_closure_parallel(const LinkDiagram& d, std::size_t budget) {
    return closure_impl(d, budget, true);
}

FlypeClosure flype_closure(const LinkDiagram& d, std::size_t budget) { return closure_impl(d, budget, true); }

std::string_view to_string(Equivalence e) {
    switch (e) {
        case Equivalence::kEquivalent: return "equivalent";
        case Equivalence::kNotEquivalent: return "not-equivalent";
        case Equivalence::kIndeterminate: return "indeterminate";
    }
    return "?";
}

Equivalence flype_equivalent(const LinkDiagram& a, const LinkDiagram& b, std::size_t budget) {
    if (a.crossing_count() != b.crossing_count() || component_count(a) != component_count(b))
        return Equivalence::kNotEquivalent;
    const auto target = flat_canonical_code(b);
    FlypeClosure cl = flype_closure(a, budget);
    for (const auto& m : cl.members)
        if (flat_canonical_code(m) == target) return Equivalence::kEquivalent;
    return cl.truncated ? Equivalence::kIndeterminate : Equivalence::kNotEquivalent;
}

}  // namespace knot
