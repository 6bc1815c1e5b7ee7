#include "knotdecomp/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "knotdecomp/errors.hpp"

namespace knot {

namespace {

struct UnionFind {
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
    std::vector<int> parent;
};

std::vector<int> non_loop_edges(const PlanarMap& m) {
    std::vector<int> out;
    for (int e : m.edge_darts())
        if (dart_vertex(e) != dart_vertex(m.partner[e])) out.push_back(e);
    return out;
}

// Bonds whose smallest cut edge is edges[i].
void bonds_from(const PlanarMap& m, int anchor, const std::vector<int>& edges, std::size_t i,
                std::vector<VertexSet>& out) {
    const int n = m.vertex_count();
    const std::size_t e_count = edges.size();
    for (std::size_t j = i + 1; j < e_count; ++j)
        for (std::size_t k = j + 1; k < e_count; ++k)
            for (std::size_t l = k + 1; l < e_count; ++l) {
                UnionFind uf(n);
                int comps = n;
                for (std::size_t x = 0; x < e_count; ++x) {
                    if (x == i || x == j || x == k || x == l) continue;
                    if (uf.unite(dart_vertex(edges[x]), dart_vertex(m.partner[edges[x]]))) --comps;
                }
                if (comps != 2) continue;
                bool crossing_cut = true;
                for (std::size_t x : {i, j, k, l})
                    if (uf.find(dart_vertex(edges[x])) == uf.find(dart_vertex(m.partner[edges[x]])))
                        crossing_cut = false;
                if (!crossing_cut) continue;
                const int home = uf.find(anchor);
                VertexSet inside;
                for (int v = 0; v < n; ++v)
                    if (uf.find(v) != home) inside.set(v);
                out.push_back(inside);
            }
}

bool side_is_box(const PlanarMap& m, const VertexSet& side) {
    if (side.count() != 1) return false;
    return m.is_box(side.members().front());
}

}  // namespace

bool circle_less(const HasemanCircle& a, const HasemanCircle& b) {
    int ca = a.inside.count(), cb = b.inside.count();
    if (ca != cb) return ca < cb;
    return a.inside < b.inside;
}

std::vector<VertexSet> four_edge_bonds_serial(const PlanarMap& m, int anchor) {
    std::vector<VertexSet> out;
    if (!m.connected() || m.vertex_count() < 2) return out;
    auto edges = non_loop_edges(m);
    for (std::size_t i = 0; i < edges.size(); ++i) bonds_from(m, anchor, edges, i, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexSet> four_edge_bonds_parallel(const PlanarMap& m, int anchor) {
    std::vector<VertexSet> out;
    if (!m.connected() || m.vertex_count() < 2) return out;
    auto edges = non_loop_edges(m);
    const int e_count = static_cast<int>(edges.size());
    std::vector<std::vector<VertexSet>> per_edge(edges.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < e_count; ++i) bonds_from(m, anchor, edges, static_cast<std::size_t>(i), per_edge[i]);
    for (auto& v : per_edge) out.insert(out.end(), v.begin(), v.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexSet> four_edge_bonds(const PlanarMap& m, int anchor) {
    // Small maps are cheaper without a thread team.
    if (m.vertex_count() < 12) return four_edge_bonds_serial(m, anchor);
    return four_edge_bonds_parallel(m, anchor);
}

bool is_compressible_side(const PlanarMap& m, const VertexSet& side) {
    int crossings = 0;
    for (int v : side.members()) {
        if (m.is_box(v)) return false;
        ++crossings;
    }
    return crossings <= 1;
}

bool is_compressible(const PlanarMap& m, const VertexSet& inside) {
    return is_compressible_side(m, inside) || is_compressible_side(m, m.all_vertices().minus(inside));
}

bool is_compressible_cut(const PlanarMap& m, std::array<int, 4> edges) {
    for (auto& e : edges) e = std::min(e, m.partner[e]);
    std::sort(edges.begin(), edges.end());
    if (edges[0] == edges[1] && edges[2] == edges[3]) return true;  // two crossingless arcs
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw KnotError(ErrorCode::kInvalidDiagram, "cut meets an edge twice");
    const int n = m.vertex_count();
    UnionFind uf(n);
    int comps = n;
    for (int e : m.edge_darts())
        if (!std::binary_search(edges.begin(), edges.end(), e))
            if (uf.unite(dart_vertex(e), dart_vertex(m.partner[e]))) --comps;
    if (comps != 2) throw KnotError(ErrorCode::kInvalidDiagram, "edges do not form a 4-point cut");
    VertexSet side;
    for (int v = 0; v < n; ++v)
        if (uf.find(v) == uf.find(0)) side.set(v);
    return is_compressible(m, m.all_vertices().minus(side));
}

HasemanCircle make_circle(const PlanarMap& m, const VertexSet& inside) {
    HasemanCircle c;
    c.inside = inside;
    int k = 0;
    for (int e : m.edge_darts()) {
        bool a = inside.test(dart_vertex(e)), b = inside.test(dart_vertex(m.partner[e]));
        if (a != b) {
            if (k == 4) throw KnotError(ErrorCode::kInvalidDiagram, "circle crosses more than four edges");
            c.cut_edges[k++] = e;
        }
    }
    if (k != 4) throw KnotError(ErrorCode::kInvalidDiagram, "circle must cross four edges");
    return c;
}

namespace {

std::vector<HasemanCircle> filter_circles(const PlanarMap& m, const std::vector<VertexSet>& bonds) {
    std::vector<HasemanCircle> out;
    const VertexSet all = m.all_vertices();
    for (const auto& inside : bonds) {
        VertexSet outside = all.minus(inside);
        if (is_compressible(m, inside) || side_is_box(m, inside) || side_is_box(m, outside)) continue;
        out.push_back(make_circle(m, inside));
    }
    std::sort(out.begin(), out.end(), circle_less);
    return out;
}

}  // namespace

std::vector<HasemanCircle> enumerate_haseman_serial(const PlanarMap& m, int anchor) {
    return filter_circles(m, four_edge_bonds_serial(m, anchor));
}

std::vector<HasemanCircle> enumerate_haseman_parallel(const PlanarMap& m, int anchor) {
    return filter_circles(m, four_edge_bonds_parallel(m, anchor));
}

std::vector<HasemanCircle> enumerate_haseman(const PlanarMap& m, int anchor) {
    return filter_circles(m, four_edge_bonds(m, anchor));
}

bool circles_cross(const VertexSet& a, const VertexSet& b) {
    return a.intersects(b) && !a.subset_of(b) && !b.subset_of(a);
}

bool are_parallel(const HasemanCircle& a, const HasemanCircle& b) {
    if (circles_cross(a.inside, b.inside))
        throw KnotError(ErrorCode::kNotComparable, "circles cross and admit no disjoint realization");
    return a.inside == b.inside;
}

std::string_view to_string(RegionKind k) {
    switch (k) {
        case RegionKind::kTBD: return "TBD";
        case RegionKind::kJewel: return "Jewel";
        case RegionKind::kNeither: return "Neither";
    }
    return "?";
}

namespace {

struct RawUnit {
    int vertex;
    std::array<int, 2> prev;
    std::array<int, 2> next;
};

// Orders {a, b} so that the second follows the first counterclockwise.
std::optional<std::array<int, 2>> adjacent_pair(int a, int b) {
    if (dart_vertex(a) != dart_vertex(b)) return std::nullopt;
    if (ccw_next(a) == b) return std::array<int, 2>{a, b};
    if (ccw_next(b) == a) return std::array<int, 2>{b, a};
    return std::nullopt;
}

std::array<int, 2> other_pair(const std::array<int, 2>& p) {
    return {ccw_next(p[1]), ccw_next(ccw_next(p[1]))};
}

std::optional<std::vector<RawUnit>> detect_band(const PlanarMap& r) {
    const int n = r.vertex_count();
    if (n == 0) return std::nullopt;
    if (n == 1) {
        for (int s = 0; s < 4; ++s) {
            int x0 = s, x1 = ccw_next(x0), x2 = ccw_next(x1), x3 = ccw_next(x2);
            if (r.partner[x1] == x2 && r.partner[x0] == x3)
                return std::vector<RawUnit>{{0, {x0, x1}, {x2, x3}}};
        }
        return std::nullopt;
    }
    for (int v = 0; v < n; ++v) {
        for (int k = 0; k < 4; ++k)
            if (dart_vertex(r.partner[make_dart(v, k)]) == v) return std::nullopt;
    }
    int start = 0;
    for (int v = 0; v < n; ++v)
        if (r.is_box(v)) {
            start = v;
            break;
        }
    std::array<int, 2> prev{}, next{};
    if (n == 2) {
        for (int k = 0; k < 4; ++k)
            if (dart_vertex(r.partner[make_dart(start, k)]) == start) return std::nullopt;
        prev = {make_dart(start, 0), make_dart(start, 1)};
        next = other_pair(prev);
    } else {
        // The neighbour of slot 0 decides which pair faces backwards.
        int d0 = make_dart(start, 0);
        int nb = dart_vertex(r.partner[d0]);
        std::optional<std::array<int, 2>> p;
        if (dart_vertex(r.partner[ccw_next(d0)]) == nb) p = std::array<int, 2>{d0, ccw_next(d0)};
        else if (dart_vertex(r.partner[ccw_prev(d0)]) == nb) p = std::array<int, 2>{ccw_prev(d0), d0};
        if (!p) return std::nullopt;
        prev = *p;
        next = other_pair(prev);
    }
    std::vector<RawUnit> units;
    std::vector<char> seen(n, 0);
    int cur = start;
    for (;;) {
        if (n >= 3) {
            int a = dart_vertex(r.partner[next[0]]), b = dart_vertex(r.partner[next[1]]);
            int c = dart_vertex(r.partner[prev[0]]), d = dart_vertex(r.partner[prev[1]]);
            if (a != b || c != d || a == c) return std::nullopt;
        }
        seen[cur] = 1;
        units.push_back({cur, prev, next});
        int w = dart_vertex(r.partner[next[0]]);
        auto p = adjacent_pair(r.partner[next[0]], r.partner[next[1]]);
        if (!p) return std::nullopt;
        if (w == start) {
            if (*p != units.front().prev) return std::nullopt;
            break;
        }
        if (seen[w]) return std::nullopt;
        cur = w;
        prev = *p;
        next = other_pair(prev);
    }
    if (static_cast<int>(units.size()) != n) return std::nullopt;
    return units;
}

bool is_jewel_map(const PlanarMap& r) {
    if (!r.connected()) return false;
    const int n = r.vertex_count();
    for (const auto& side : four_edge_bonds(r, 0)) {
        int c = side.count();
        if (c != 1 && n - c != 1) return false;
    }
    return true;
}

}  // namespace

RegionKind classify_region_map(const PlanarMap& r) {
    if (detect_band(r)) return RegionKind::kTBD;
    if (is_jewel_map(r)) return RegionKind::kJewel;
    return RegionKind::kNeither;
}

Decomposition decompose(const PlanarMap& m, std::vector<HasemanCircle> family, int anchor) {
    std::sort(family.begin(), family.end(), circle_less);
    const int fc = static_cast<int>(family.size());
    for (int i = 0; i < fc; ++i)
        for (int j = i + 1; j < fc; ++j) {
            if (circles_cross(family[i].inside, family[j].inside))
                throw KnotError(ErrorCode::kNotComparable, "family is not laminar");
            if (family[i].inside == family[j].inside)
                throw KnotError(ErrorCode::kInvalidDiagram, "family repeats a circle class");
        }
    Decomposition dec;
    dec.anchor = anchor;
    dec.family = family;
    std::vector<int> parent(fc, -1);
    for (int i = 0; i < fc; ++i)
        for (int j = i + 1; j < fc; ++j)
            if (family[i].inside.subset_of(family[j].inside)) {
                parent[i] = j;
                break;
            }
    const VertexSet all = m.all_vertices();
    dec.regions.resize(fc + 1);
    dec.inner_region.resize(fc);
    dec.outer_region.resize(fc);
    for (int i = 0; i < fc; ++i) {
        dec.inner_region[i] = i + 1;
        dec.outer_region[i] = parent[i] < 0 ? 0 : parent[i] + 1;
        dec.regions[dec.outer_region[i]].child_circles.push_back(i);
        dec.regions[i + 1].parent_circle = i;
    }
    dec.admissible = true;
    for (int ri = 0; ri <= fc; ++ri) {
        Region& reg = dec.regions[ri];
        VertexSet own = ri == 0 ? all : family[ri - 1].inside;
        std::vector<VertexSet> groups;
        std::vector<int> tags;
        for (int c : reg.child_circles) {
            own = own.minus(family[c].inside);
            groups.push_back(family[c].inside);
            tags.push_back(c);
        }
        if (ri > 0) {
            groups.push_back(all.minus(family[ri - 1].inside));
            tags.push_back(ri - 1);
        }
        reg.vertices = own;
        Contraction con = contract(m, groups, tags);
        reg.region_map = con.map;
        std::vector<int> original(con.map.dart_count(), -1);
        for (int d = 0; d < m.dart_count(); ++d)
            if (con.dart_image[d] >= 0) original[con.dart_image[d]] = d;
        auto circle_of_box = [&](int rv) { return con.map.tag[rv] == kPortTag ? kOpenEdge : con.map.tag[rv]; };
        auto content_of_box = [&](int rv) {
            int t = con.map.tag[rv];
            if (t == kPortTag || t < 0) {
                VertexSet s;
                for (int v : own.members())
                    if (con.vertex_image[v] == rv) s.set(v);
                return s;
            }
            if (ri > 0 && t == ri - 1) return all.minus(family[t].inside);
            return family[t].inside;
        };
        for (int v : own.members())
            if (m.is_crossing(v)) ++reg.crossing_count;

        auto band = detect_band(con.map);
        if (band) {
            reg.kind = RegionKind::kTBD;
            int pos = 0, neg = 0;
            for (const auto& u : *band) {
                BandUnit bu;
                bu.is_crossing = con.map.is_crossing(u.vertex);
                bu.prev = {original[u.prev[0]], original[u.prev[1]]};
                bu.next = {original[u.next[0]], original[u.next[1]]};
                if (bu.is_crossing) {
                    bu.crossing = dart_vertex(bu.prev[0]);
                    bu.content.set(bu.crossing);
                    bu.sign = con.map.is_over(u.prev[1]) ? 1 : -1;
                    (bu.sign > 0 ? pos : neg)++;
                    reg.total_weight += bu.sign;
                } else {
                    bu.circle = circle_of_box(u.vertex);
                    bu.content = content_of_box(u.vertex);
                }
                reg.band.push_back(bu);
            }
            reg.mixed_signs = pos > 0 && neg > 0;
            for (const auto& bu : reg.band) {
                if (!bu.is_crossing) {
                    reg.boundary.push_back(bu.circle);
                    reg.weights.push_back(0);
                } else if (!reg.weights.empty()) {
                    reg.weights.back() += bu.sign;
                }
            }
            if (reg.boundary.empty()) reg.weights = {reg.total_weight};
            const int val = static_cast<int>(reg.boundary.size());
            reg.degenerate = (val == 2 && std::abs(reg.total_weight) == 1) || (val == 3 && reg.total_weight == 0);
        } else {
            reg.kind = is_jewel_map(con.map) ? RegionKind::kJewel : RegionKind::kNeither;
            for (int rv = 0; rv < con.map.vertex_count(); ++rv)
                if (con.map.is_box(rv)) reg.boundary.push_back(circle_of_box(rv));
            std::sort(reg.boundary.begin(), reg.boundary.end());
            // Band-free regions still report their crossings as total weight 0.
        }
        if (reg.kind == RegionKind::kNeither) dec.admissible = false;
    }
    return dec;
}

Decomposition classify_regions(const PlanarMap& m, std::vector<HasemanCircle> family, int anchor) {
    Decomposition dec = decompose(m, std::move(family), anchor);
    if (!dec.admissible) throw KnotError(ErrorCode::kNotAdmissible, "a region is neither a TBD nor a jewel");
    return dec;
}

namespace {

bool admissible(const PlanarMap& m, const std::vector<HasemanCircle>& fam, int anchor) {
    return decompose(m, fam, anchor).admissible;
}

std::vector<HasemanCircle> search_minimum_family(const PlanarMap& m, const std::vector<HasemanCircle>& h,
                                                 int anchor) {
    const int n = static_cast<int>(h.size());
    std::vector<HasemanCircle> chosen;
    std::optional<std::vector<HasemanCircle>> found;
    std::function<void(int, int)> rec = [&](int from, int left) {
        if (found) return;
        if (left == 0) {
            if (admissible(m, chosen, anchor)) found = chosen;
            return;
        }
        for (int i = from; i <= n - left && !found; ++i) {
            bool ok = true;
            for (const auto& c : chosen)
                if (circles_cross(c.inside, h[i].inside)) ok = false;
            if (!ok) continue;
            chosen.push_back(h[i]);
            rec(i + 1, left - 1);
            chosen.pop_back();
        }
    };
    for (int k = 0; k <= n && !found; ++k) rec(0, k);
    if (!found) throw KnotError(ErrorCode::kNotAdmissible, "no admissible family exists");
    return *found;
}

}  // namespace

std::vector<HasemanCircle> canonical_family(const PlanarMap& m, int anchor, bool* used_search) {
    if (used_search) *used_search = false;
    auto h = enumerate_haseman(m, anchor);
    std::vector<HasemanCircle> fam;
    for (std::size_t i = 0; i < h.size(); ++i) {
        bool crossed = false;
        for (std::size_t j = 0; j < h.size() && !crossed; ++j)
            if (i != j && circles_cross(h[i].inside, h[j].inside)) crossed = true;
        if (!crossed) fam.push_back(h[i]);
    }
    if (!admissible(m, fam, anchor)) {
        if (used_search) *used_search = true;
        return search_minimum_family(m, h, anchor);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < fam.size(); ++i) {
            auto trial = fam;
            trial.erase(trial.begin() + static_cast<long>(i));
            if (admissible(m, trial, anchor)) {
                fam = std::move(trial);
                changed = true;
                break;
            }
        }
    }
    return fam;
}

Decomposition canonical_decomposition(const PlanarMap& m, int anchor) {
    return classify_regions(m, canonical_family(m, anchor), anchor);
}

namespace {

ContinuedFraction chain_cf(const std::vector<int>& w) {
    ContinuedFraction a(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) a[i] = (i % 2 == 0) ? w[i] : -w[i];
    return a;
}

bool has_open_edge(const Decomposition& dec) {
    for (const auto& r : dec.regions)
        for (int b : r.boundary)
            if (b == kOpenEdge) return true;
    return false;
}

int across_circle(const Decomposition& dec, int circle, int from) {
    return dec.inner_region[circle] == from ? dec.outer_region[circle] : dec.inner_region[circle];
}

}  // namespace

bool is_rational_link(const Decomposition& dec) {
    if (has_open_edge(dec)) return false;
    for (int r = 0; r < static_cast<int>(dec.regions.size()); ++r) {
        if (dec.regions[r].kind != RegionKind::kTBD) return false;
        if (dec.valency(r) > 2) return false;
    }
    return true;
}

Fraction rational_link_label(const Decomposition& dec) {
    if (dec.regions.size() == 1) return Fraction::of(dec.regions[0].total_weight, 1);
    std::vector<int> ends;
    for (int r = 0; r < static_cast<int>(dec.regions.size()); ++r)
        if (dec.valency(r) == 1) ends.push_back(r);
    std::optional<Fraction> best;
    for (int start : ends) {
        std::vector<int> w;
        int cur = start, via = -1;
        for (;;) {
            w.push_back(dec.regions[cur].total_weight);
            int nxt_circle = -1;
            for (int b : dec.regions[cur].boundary)
                if (b != via) nxt_circle = b;
            if (nxt_circle < 0) break;
            cur = across_circle(dec, nxt_circle, cur);
            via = nxt_circle;
        }
        Fraction f = eval_cf(chain_cf(w));
        if (!best || std::pair(f.r, f.s) < std::pair(best->r, best->s)) best = f;
    }
    return *best;
}

std::vector<RationalTangle> maximal_rational_tangles(const Decomposition& dec) {
    std::vector<RationalTangle> out;
    if (is_rational_link(dec)) return out;
    for (int r = 0; r < static_cast<int>(dec.regions.size()); ++r) {
        const Region& reg = dec.regions[r];
        if (reg.kind != RegionKind::kTBD || dec.valency(r) != 1) continue;
        RationalTangle t;
        std::vector<int> chain{r};
        int cur = r;
        int circ = reg.boundary.front();
        for (;;) {
            if (circ == kOpenEdge) break;
            int nxt = across_circle(dec, circ, cur);
            const Region& nr = dec.regions[nxt];
            if (nr.kind != RegionKind::kTBD || dec.valency(nxt) != 2) break;
            t.interior_circles.push_back(circ);
            chain.push_back(nxt);
            circ = nr.boundary[0] == circ ? nr.boundary[1] : nr.boundary[0];
            cur = nxt;
        }
        t.boundary_circle = circ;
        std::reverse(chain.begin(), chain.end());
        t.regions = chain;
        for (int x : chain) {
            t.vertices |= dec.regions[x].vertices;
            t.band_weights.push_back(dec.regions[x].total_weight);
        }
        std::sort(t.interior_circles.begin(), t.interior_circles.end());
        t.cf = chain_cf(t.band_weights);
        t.fraction = eval_cf(t.cf);
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(),
              [](const RationalTangle& a, const RationalTangle& b) { return a.boundary_circle < b.boundary_circle; });
    return out;
}

std::vector<int> essential_indices(const Decomposition& dec) {
    std::vector<int> out;
    if (is_rational_link(dec)) return out;
    std::vector<char> drop(dec.family.size(), 0);
    for (const auto& t : maximal_rational_tangles(dec))
        for (int c : t.interior_circles) drop[c] = 1;
    for (std::size_t i = 0; i < dec.family.size(); ++i)
        if (!drop[i]) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<HasemanCircle> essential_family(const PlanarMap& m, int anchor) {
    Decomposition dec = canonical_decomposition(m, anchor);
    std::vector<HasemanCircle> out;
    for (int i : essential_indices(dec)) out.push_back(dec.family[i]);
    return out;
}

Fraction tangle_fraction(const Tangle& t) {
    const PlanarMap& m = t.map;
    if (m.crossing_count() == 0) {
        if (m.partner[kNW] == kNE) return Fraction{0, 1};
        if (m.partner[kNW] == kSW) return Fraction::infinity();
        throw KnotError(ErrorCode::kNotRational, "crossingless tangle with diagonal arcs");
    }
    Decomposition dec = decompose(m, canonical_family(m, 0), 0);
    if (!dec.admissible) throw KnotError(ErrorCode::kNotRational, "tangle has no admissible decomposition");
    for (const auto& rt : maximal_rational_tangles(dec)) {
        if (rt.boundary_circle != kOpenEdge) continue;
        bool horizontal = false;
        for (const auto& u : dec.regions[0].band)
            if (!u.is_crossing && u.circle == kOpenEdge) {
                int lo = std::min(u.prev[0], u.prev[1]), hi = std::max(u.prev[0], u.prev[1]);
                horizontal = (lo == kNE && hi == kSE) || (lo == kNW && hi == kSW);
            }
        std::vector<int> b = rt.band_weights;
        if (!horizontal) b.insert(b.begin(), 0);
        return eval_cf(chain_cf(b));
    }
    throw KnotError(ErrorCode::kNotRational, "tangle is not rational");
}

}  // namespace knot
