#include "knotdecomp/planar_map.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "knotdecomp/errors.hpp"

namespace knot {

int PlanarMap::crossing_count() const {
    return static_cast<int>(std::count(kind.begin(), kind.end(), VertexKind::kCrossing));
}

int PlanarMap::add_vertex(VertexKind k, int box_tag, bool over_even) {
    const int v = vertex_count();
    if (v >= VertexSet::kCapacity)
        throw KnotError(ErrorCode::kInvalidDiagram, "diagram exceeds vertex capacity");
    kind.push_back(k);
    tag.push_back(k == VertexKind::kBox ? box_tag : -1);
    over02.push_back(over_even ? 1 : 0);
    partner.insert(partner.end(), 4, -1);
    outgoing.insert(outgoing.end(), 4, 0);
    return v;
}

VertexSet PlanarMap::crossing_set() const {
    VertexSet s;
    for (int v = 0; v < vertex_count(); ++v)
        if (is_crossing(v)) s.set(v);
    return s;
}

std::vector<int> PlanarMap::edge_darts() const {
    std::vector<int> out;
    out.reserve(edge_count());
    for (int d = 0; d < dart_count(); ++d)
        if (d < partner[d]) out.push_back(d);
    return out;
}

std::vector<int> PlanarMap::face_of_dart(int* face_count_out) const {
    std::vector<int> face(dart_count(), -1);
    int f = 0;
    for (int d = 0; d < dart_count(); ++d) {
        if (face[d] >= 0) continue;
        int e = d;
        do {
            face[e] = f;
            e = ccw_next(partner[e]);
        } while (e != d);
        ++f;
    }
    if (face_count_out) *face_count_out = f;
    return face;
}

int PlanarMap::face_count() const {
    int f = 0;
    (void)face_of_dart(&f);
    return f;
}

std::vector<int> PlanarMap::vertex_components(int* count) const {
    const int n = vertex_count();
    std::vector<int> comp(n, -1);
    int c = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int k = 0; k < 4; ++k) {
                int w = dart_vertex(partner[make_dart(v, k)]);
                if (comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
            }
        }
        ++c;
    }
    if (count) *count = c;
    return comp;
}

bool PlanarMap::connected() const {
    int c = 0;
    (void)vertex_components(&c);
    return c <= 1;
}

bool PlanarMap::sphere_euler_holds() const {
    int comps = 0;
    (void)vertex_components(&comps);
    // Per piece V - 2V + F = 2.
    return face_count() - vertex_count() == 2 * comps;
}

std::vector<int> PlanarMap::boundary_walk(const VertexSet& group) const {
    std::vector<int> cut;
    for (int v : group.members())
        for (int k = 0; k < 4; ++k) {
            int d = make_dart(v, k);
            if (!group.test(dart_vertex(partner[d]))) cut.push_back(d);
        }
    if (cut.empty()) return cut;
    std::vector<int> walk;
    const int start = cut.front();
    int d = start;
    const int limit = dart_count() + 4;
    int steps = 0;
    do {
        walk.push_back(d);
        d = ccw_next(d);
        while (group.test(dart_vertex(partner[d]))) {
            d = ccw_next(partner[d]);
            if (++steps > limit) break;
        }
        if (++steps > limit) break;
    } while (d != start);
    if (walk.size() != cut.size())
        throw KnotError(ErrorCode::kNonPlanar, "vertex group does not bound a disk");
    return walk;
}

void PlanarMap::orient() {
    outgoing.assign(dart_count(), 0);
    std::vector<std::uint8_t> seen(dart_count(), 0);
    for (int d = 0; d < dart_count(); ++d) {
        if (seen[d]) continue;
        int cur = d;
        do {
            outgoing[cur] = 1;
            seen[cur] = 1;
            int p = partner[cur];
            seen[p] = 1;
            cur = across(p);
        } while (cur != d && !seen[cur]);
    }
}

bool PlanarMap::make_alternating(bool first_over_even) {
    const int n = vertex_count();
    std::vector<int> val(n, -1);
    for (int s = 0; s < n; ++s) {
        if (!is_crossing(s) || val[s] >= 0) continue;
        val[s] = first_over_even ? 1 : 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int k = 0; k < 4; ++k) {
                int d = make_dart(u, k);
                int e = partner[d];
                int w = dart_vertex(e);
                if (!is_crossing(w)) continue;
                int want = val[u] ^ (dart_slot(d) & 1) ^ (dart_slot(e) & 1) ^ 1;
                if (w == u && want != val[u]) return false;
                if (val[w] < 0) {
                    val[w] = want;
                    queue.push_back(w);
                } else if (val[w] != want) {
                    return false;
                }
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (is_crossing(v)) over02[v] = static_cast<std::uint8_t>(val[v]);
    return true;
}

bool PlanarMap::is_alternating() const {
    for (int d = 0; d < dart_count(); ++d) {
        int e = partner[d];
        if (!is_crossing(dart_vertex(d)) || !is_crossing(dart_vertex(e))) continue;
        if (is_over(d) == is_over(e)) return false;
    }
    return true;
}

PlanarMap PlanarMap::reflected(const VertexSet& which, bool swap_over) const {
    std::vector<int> m(dart_count());
    for (int d = 0; d < dart_count(); ++d) {
        int v = dart_vertex(d);
        m[d] = which.test(v) ? make_dart(v, (4 - dart_slot(d)) & 3) : d;
    }
    PlanarMap out = *this;
    for (int d = 0; d < dart_count(); ++d) {
        out.partner[m[d]] = m[partner[d]];
        if (!outgoing.empty()) out.outgoing[m[d]] = outgoing[d];
    }
    if (swap_over)
        for (int v : which.members())
            if (is_crossing(v)) out.over02[v] ^= 1;
    return out;
}

void PlanarMap::validate() const {
    if (partner.size() != static_cast<std::size_t>(dart_count()))
        throw KnotError(ErrorCode::kInvalidDiagram, "dart table size mismatch");
    for (int d = 0; d < dart_count(); ++d) {
        int p = partner[d];
        if (p < 0 || p >= dart_count() || p == d || partner[p] != d)
            throw KnotError(ErrorCode::kInvalidDiagram, "partner is not a fixed-point-free involution");
    }
    if (outgoing.size() == static_cast<std::size_t>(dart_count())) {
        for (int d = 0; d < dart_count(); ++d) {
            if (outgoing[d] == outgoing[partner[d]])
                throw KnotError(ErrorCode::kInvalidDiagram, "edge orientation inconsistent");
            if (is_crossing(dart_vertex(d)) && outgoing[d] == outgoing[across(d)])
                throw KnotError(ErrorCode::kInvalidDiagram, "strand orientation inconsistent");
        }
    }
}

Contraction contract(const PlanarMap& map, std::span<const VertexSet> groups,
                     std::span<const int> group_tags) {
    const int n = map.vertex_count();
    std::vector<int> group_of(n, -1);
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (int v : groups[g].members()) {
            if (group_of[v] >= 0)
                throw KnotError(ErrorCode::kInvalidDiagram, "contraction groups overlap");
            group_of[v] = static_cast<int>(g);
        }

    Contraction c;
    c.vertex_image.assign(n, -1);
    c.dart_image.assign(map.dart_count(), -1);
    for (int v = 0; v < n; ++v) {
        if (group_of[v] >= 0) continue;
        int nv = c.map.add_vertex(map.kind[v], map.tag[v], map.over02[v] != 0);
        c.vertex_image[v] = nv;
        for (int k = 0; k < 4; ++k) c.dart_image[make_dart(v, k)] = make_dart(nv, k);
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto walk = map.boundary_walk(groups[g]);
        if (walk.size() != 4)
            throw KnotError(ErrorCode::kInvalidDiagram, "contracted group must have four boundary edges");
        int tag = g < group_tags.size() ? group_tags[g] : static_cast<int>(g);
        int nv = c.map.add_vertex(VertexKind::kBox, tag);
        c.group_vertex.push_back(nv);
        for (int v : groups[g].members()) c.vertex_image[v] = nv;
        for (int k = 0; k < 4; ++k) c.dart_image[walk[k]] = make_dart(nv, k);
    }
    const bool oriented = map.outgoing.size() == static_cast<std::size_t>(map.dart_count());
    for (int d = 0; d < map.dart_count(); ++d) {
        int nd = c.dart_image[d];
        if (nd < 0) continue;
        c.map.partner[nd] = c.dart_image[map.partner[d]];
        if (oriented) c.map.outgoing[nd] = map.outgoing[d];
    }
    c.map.free_loops = map.free_loops;
    return c;
}

std::vector<int> traversal_code(const PlanarMap& map, int start, bool with_orientation,
                                std::vector<int>* order) {
    const int n = map.vertex_count();
    std::vector<int> idx(n, -1);
    std::vector<int> entry;
    std::vector<int> code;
    idx[dart_vertex(start)] = 0;
    entry.push_back(start);
    for (std::size_t i = 0; i < entry.size(); ++i) {
        const int e = entry[i];
        const int v = dart_vertex(e);
        if (map.is_crossing(v)) {
            code.push_back(map.is_over(e) ? 1 : 0);
        } else {
            code.push_back(2);
            code.push_back(map.tag[v]);
        }
        for (int k = 0; k < 4; ++k) {
            int d = make_dart(v, dart_slot(e) + k);
            int p = map.partner[d];
            int w = dart_vertex(p);
            if (idx[w] < 0) {
                idx[w] = static_cast<int>(entry.size());
                entry.push_back(p);
            }
            code.push_back(idx[w] * 4 + ((dart_slot(p) - dart_slot(entry[idx[w]])) & 3));
            if (with_orientation) code.push_back(map.outgoing[d]);
        }
    }
    if (order) *order = std::move(entry);
    return code;
}

std::vector<int> canonical_code(const PlanarMap& map, bool with_orientation) {
    int comps = 0;
    auto comp = map.vertex_components(&comps);
    std::vector<std::vector<int>> blocks(comps);
    for (int d = 0; d < map.dart_count(); ++d) {
        auto code = traversal_code(map, d, with_orientation);
        auto& best = blocks[comp[dart_vertex(d)]];
        if (best.empty() || code < best) best = std::move(code);
    }
    std::sort(blocks.begin(), blocks.end());
    std::vector<int> out{comps};
    for (auto& b : blocks) {
        out.push_back(static_cast<int>(b.size()));
        out.insert(out.end(), b.begin(), b.end());
    }
    out.push_back(map.free_loops);
    return out;
}

namespace {

std::vector<int> dart_map_from_orders(const std::vector<int>& oa, const std::vector<int>& ob,
                                      int darts) {
    std::vector<int> m(darts, -1);
    for (std::size_t i = 0; i < oa.size(); ++i)
        for (int k = 0; k < 4; ++k)
            m[make_dart(dart_vertex(oa[i]), dart_slot(oa[i]) + k)] =
                make_dart(dart_vertex(ob[i]), dart_slot(ob[i]) + k);
    return m;
}

}  // namespace

std::vector<int> find_isomorphism(const PlanarMap& a, const PlanarMap& b, bool with_orientation) {
    if (a.vertex_count() != b.vertex_count() || a.vertex_count() == 0 ||
        a.free_loops != b.free_loops)
        return {};
    std::vector<int> oa;
    auto ca = traversal_code(a, 0, with_orientation, &oa);
    if (static_cast<int>(oa.size()) != a.vertex_count()) return {};
    for (int s = 0; s < b.dart_count(); ++s) {
        std::vector<int> ob;
        if (traversal_code(b, s, with_orientation, &ob) == ca)
            return dart_map_from_orders(oa, ob, a.dart_count());
    }
    return {};
}

std::vector<std::vector<int>> map_automorphisms(const PlanarMap& map, bool with_orientation) {
    std::vector<std::vector<int>> out;
    if (map.vertex_count() == 0) return out;
    std::vector<int> o0;
    auto c0 = traversal_code(map, 0, with_orientation, &o0);
    for (int s = 0; s < map.dart_count(); ++s) {
        std::vector<int> os;
        if (traversal_code(map, s, with_orientation, &os) == c0)
            out.push_back(dart_map_from_orders(o0, os, map.dart_count()));
    }
    return out;
}

std::vector<int> vertex_permutation(const std::vector<int>& dart_perm) {
    std::vector<int> out(dart_perm.size() / 4);
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = dart_vertex(dart_perm[4 * v]);
    return out;
}

}  // namespace knot
