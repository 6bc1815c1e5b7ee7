#include "knotdecomp/tangle.hpp"

#include <algorithm>

#include "knotdecomp/errors.hpp"

namespace knot {

namespace {

void glue_pair(std::vector<int>& glue, int a, int b) {
    glue[a] = b;
    glue[b] = a;
}

PlanarMap fresh_port_map() {
    PlanarMap m;
    m.add_vertex(VertexKind::kBox, kPortTag);
    return m;
}

// Port sequence counterclockwise around the tangle disk.
constexpr int kCcwPorts[4] = {kNW, kSW, kSE, kNE};

}  // namespace

int append_map(PlanarMap& dst, const PlanarMap& src) {
    const int off = dst.vertex_count();
    for (int v = 0; v < src.vertex_count(); ++v) dst.add_vertex(src.kind[v], src.tag[v], src.over02[v] != 0);
    for (int d = 0; d < src.dart_count(); ++d) {
        dst.partner[4 * off + d] = src.partner[d] < 0 ? -1 : 4 * off + src.partner[d];
        if (!src.outgoing.empty()) dst.outgoing[4 * off + d] = src.outgoing[d];
    }
    dst.free_loops += src.free_loops;
    return off;
}

PlanarMap splice(const PlanarMap& m, const std::vector<char>& is_virtual, const std::vector<int>& glue) {
    const int n = m.vertex_count();
    std::vector<int> image(n, -1);
    PlanarMap out;
    for (int v = 0; v < n; ++v) {
        if (is_virtual[v]) continue;
        image[v] = out.add_vertex(m.kind[v], m.tag[v], m.over02[v] != 0);
    }
    auto virt = [&](int d) { return is_virtual[dart_vertex(d)] != 0; };
    std::vector<char> used(m.dart_count(), 0);
    for (int d = 0; d < m.dart_count(); ++d) {
        if (virt(d)) continue;
        bool via_partner = m.partner[d] >= 0;
        int cur = via_partner ? m.partner[d] : glue[d];
        if (cur < 0) throw KnotError(ErrorCode::kInvalidDiagram, "dangling dart in splice");
        int guard = 0;
        while (virt(cur)) {
            used[cur] = 1;
            cur = via_partner ? glue[cur] : m.partner[cur];
            via_partner = !via_partner;
            if (cur < 0 || ++guard > 2 * m.dart_count())
                throw KnotError(ErrorCode::kInvalidDiagram, "broken chain in splice");
        }
        out.partner[4 * image[dart_vertex(d)] + dart_slot(d)] = 4 * image[dart_vertex(cur)] + dart_slot(cur);
        if (!m.outgoing.empty()) out.outgoing[4 * image[dart_vertex(d)] + dart_slot(d)] = m.outgoing[d];
    }
    out.free_loops = m.free_loops;
    for (int d = 0; d < m.dart_count(); ++d) {
        if (!virt(d) || used[d]) continue;
        ++out.free_loops;
        int cur = d;
        do {
            used[cur] = 1;
            int g = glue[cur];
            used[g] = 1;
            cur = m.partner[g];
        } while (cur != d && !used[cur]);
    }
    return out;
}

Tangle Tangle::zero() {
    Tangle t;
    t.map = fresh_port_map();
    t.map.link(kNW, kNE);
    t.map.link(kSW, kSE);
    return t;
}

Tangle Tangle::infinity() {
    Tangle t;
    t.map = fresh_port_map();
    t.map.link(kNW, kSW);
    t.map.link(kNE, kSE);
    return t;
}

Tangle Tangle::crossing(int type) {
    Tangle t;
    t.map = fresh_port_map();
    // Crossing slots counterclockwise: SW, SE, NE, NW.
    int c = t.map.add_vertex(VertexKind::kCrossing, -1, type > 0);
    t.map.link(kNW, make_dart(c, 3));
    t.map.link(kNE, make_dart(c, 2));
    t.map.link(kSE, make_dart(c, 1));
    t.map.link(kSW, make_dart(c, 0));
    return t;
}

Tangle Tangle::integer(int n) {
    Tangle t = zero();
    for (int i = 0; i < std::abs(n); ++i) t = tangle_sum(t, crossing(n > 0 ? 1 : -1));
    return t;
}

Tangle Tangle::vertical(int n) { return reciprocal(integer(n)); }

Tangle tangle_sum(const Tangle& a, const Tangle& b) {
    PlanarMap m = fresh_port_map();
    int oa = append_map(m, a.map);
    int ob = append_map(m, b.map);
    std::vector<char> virt(m.vertex_count(), 0);
    virt[oa] = virt[ob] = 1;
    std::vector<int> glue(m.dart_count(), -1);
    glue_pair(glue, kNW, make_dart(oa, kNW));
    glue_pair(glue, kSW, make_dart(oa, kSW));
    glue_pair(glue, kNE, make_dart(ob, kNE));
    glue_pair(glue, kSE, make_dart(ob, kSE));
    glue_pair(glue, make_dart(oa, kNE), make_dart(ob, kNW));
    glue_pair(glue, make_dart(oa, kSE), make_dart(ob, kSW));
    return Tangle{splice(m, virt, glue)};
}

Tangle tangle_product(const Tangle& a, const Tangle& b) {
    PlanarMap m = fresh_port_map();
    int oa = append_map(m, a.map);
    int ob = append_map(m, b.map);
    std::vector<char> virt(m.vertex_count(), 0);
    virt[oa] = virt[ob] = 1;
    std::vector<int> glue(m.dart_count(), -1);
    glue_pair(glue, kNW, make_dart(oa, kNW));
    glue_pair(glue, kNE, make_dart(oa, kNE));
    glue_pair(glue, kSW, make_dart(ob, kSW));
    glue_pair(glue, kSE, make_dart(ob, kSE));
    glue_pair(glue, make_dart(oa, kSW), make_dart(ob, kNW));
    glue_pair(glue, make_dart(oa, kSE), make_dart(ob, kNE));
    return Tangle{splice(m, virt, glue)};
}

Tangle rotate(const Tangle& t) {
    PlanarMap m = fresh_port_map();
    int o = append_map(m, t.map);
    std::vector<char> virt(m.vertex_count(), 0);
    virt[o] = 1;
    std::vector<int> glue(m.dart_count(), -1);
    glue_pair(glue, kNW, make_dart(o, kNE));
    glue_pair(glue, kSW, make_dart(o, kNW));
    glue_pair(glue, kSE, make_dart(o, kSW));
    glue_pair(glue, kNE, make_dart(o, kSE));
    return Tangle{splice(m, virt, glue)};
}

Tangle mirror(const Tangle& t) {
    Tangle r = t;
    for (int v = 0; v < r.map.vertex_count(); ++v)
        if (r.map.is_crossing(v)) r.map.over02[v] ^= 1;
    return r;
}

Tangle reciprocal(const Tangle& t) { return mirror(rotate(t)); }

namespace {

PlanarMap close_tangle(const Tangle& t, int a1, int b1, int a2, int b2) {
    PlanarMap m = t.map;
    std::vector<char> virt(m.vertex_count(), 0);
    virt[0] = 1;
    std::vector<int> glue(m.dart_count(), -1);
    glue_pair(glue, a1, b1);
    glue_pair(glue, a2, b2);
    PlanarMap out = splice(m, virt, glue);
    out.orient();
    return out;
}

}  // namespace

PlanarMap numerator(const Tangle& t) { return close_tangle(t, kNW, kNE, kSW, kSE); }
PlanarMap denominator(const Tangle& t) { return close_tangle(t, kNW, kSW, kNE, kSE); }

PlanarMap substitute(const PlanarMap& host, int box, const Tangle& t, int turn) {
    if (!host.is_box(box)) throw KnotError(ErrorCode::kInvalidDiagram, "substitution target is not a box");
    PlanarMap m = host;
    int o = append_map(m, t.map);
    std::vector<char> virt(m.vertex_count(), 0);
    virt[box] = virt[o] = 1;
    std::vector<int> glue(m.dart_count(), -1);
    for (int k = 0; k < 4; ++k)
        glue_pair(glue, make_dart(box, k), make_dart(o, kCcwPorts[(k + turn) & 3]));
    return splice(m, virt, glue);
}

Tangle extract_tangle(const PlanarMap& m, const VertexSet& inside, int nw) {
    auto walk = m.boundary_walk(inside);
    if (walk.size() != 4) throw KnotError(ErrorCode::kInvalidDiagram, "tangle disk must meet four edges");
    auto it = std::find(walk.begin(), walk.end(), nw);
    if (it == walk.end()) throw KnotError(ErrorCode::kInvalidDiagram, "NW dart is not on the disk boundary");
    std::rotate(walk.begin(), it, walk.end());
    // Counterclockwise around the disk: NW, SW, SE, NE.
    PlanarMap out = fresh_port_map();
    std::vector<int> image(m.vertex_count(), -1);
    for (int v : inside.members()) image[v] = out.add_vertex(m.kind[v], m.tag[v], m.over02[v] != 0);
    for (int v : inside.members())
        for (int k = 0; k < 4; ++k) {
            int d = make_dart(v, k);
            int p = m.partner[d];
            if (inside.test(dart_vertex(p))) out.partner[make_dart(image[v], k)] = make_dart(image[dart_vertex(p)], dart_slot(p));
            if (!m.outgoing.empty()) out.outgoing[make_dart(image[v], k)] = m.outgoing[d];
        }
    for (int k = 0; k < 4; ++k) {
        int inner = make_dart(image[dart_vertex(walk[k])], dart_slot(walk[k]));
        out.link(kCcwPorts[k], inner);
        if (!m.outgoing.empty()) out.outgoing[kCcwPorts[k]] = m.outgoing[walk[k]] ? 0 : 1;
    }
    return Tangle{out};
}

}  // namespace knot
