#include "knotdecomp/builders.hpp"

#include <array>
#include <charconv>
#include <string>

#include "knotdecomp/errors.hpp"

namespace knot {

LinkDiagram finish(PlanarMap m) {
    if (!m.make_alternating(true)) throw KnotError(ErrorCode::kInvalidDiagram, "no alternating assignment");
    m.orient();
    return m;
}

LinkDiagram torus_2n(int n) {
    if (n < 1) throw KnotError(ErrorCode::kInvalidDiagram, "torus diagram needs n >= 1");
    return finish(numerator(Tangle::integer(n)));
}

LinkDiagram pretzel(const std::vector<int>& p) {
    if (p.empty()) throw KnotError(ErrorCode::kInvalidDiagram, "pretzel needs a strand count");
    Tangle t = Tangle::vertical(p[0]);
    for (std::size_t i = 1; i < p.size(); ++i) t = tangle_sum(t, Tangle::vertical(p[i]));
    return finish(numerator(t));
}

LinkDiagram ring_diagram(const std::vector<Tangle>& pieces, const std::vector<int>& twists) {
    if (pieces.empty()) throw KnotError(ErrorCode::kInvalidDiagram, "ring needs a piece");
    Tangle t = pieces[0];
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i > 0) t = tangle_sum(t, pieces[i]);
        if (i < twists.size() && twists[i] != 0) t = tangle_sum(t, Tangle::integer(twists[i]));
    }
    return finish(numerator(t));
}

LinkDiagram octahedron() {
    // Vertices +x,-x,+y,-y,+z,-z; neighbours counterclockwise seen from outside.
    enum { PX, MX, PY, MY, PZ, MZ };
    const std::array<std::array<int, 4>, 6> nb = {{
        {PY, PZ, MY, MZ},
        {MZ, MY, PZ, PY},
        {PZ, PX, MZ, MX},
        {MX, MZ, PX, PZ},
        {PX, PY, MX, MY},
        {MY, MX, PY, PX},
    }};
    PlanarMap m;
    for (int v = 0; v < 6; ++v) m.add_vertex(VertexKind::kCrossing);
    for (int v = 0; v < 6; ++v)
        for (int k = 0; k < 4; ++k) {
            int w = nb[v][k];
            for (int j = 0; j < 4; ++j)
                if (nb[w][j] == v) m.partner[make_dart(v, k)] = make_dart(w, j);
        }
    LinkDiagram d = finish(m);
    d.validate();
    return d;
}

Tangle octahedral_tangle() {
    LinkDiagram o = octahedron();
    VertexSet inside = o.all_vertices();
    inside.reset(5);
    return extract_tangle(o, inside, o.partner[make_dart(5, 0)]);
}

namespace {

std::vector<int> parse_ints(std::string_view s) {
    std::vector<int> out;
    while (!s.empty()) {
        auto comma = s.find(',');
        auto tok = s.substr(0, comma);
        int v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || p != tok.data() + tok.size())
            throw KnotError(ErrorCode::kMalformedCode, "bad integer in '" + std::string(tok) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

LinkDiagram build_named(std::string_view spec) {
    auto colon = spec.find(':');
    auto name = spec.substr(0, colon);
    auto args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    if (name == "torus") {
        auto v = parse_ints(args);
        if (v.size() != 1) throw KnotError(ErrorCode::kMalformedCode, "torus:N expects one integer");
        return torus_2n(v[0]);
    }
    if (name == "pretzel") return pretzel(parse_ints(args));
    if (name == "octahedron") return octahedron();
    throw KnotError(ErrorCode::kMalformedCode, "unknown construction '" + std::string(spec) + "'");
}

}  // namespace knot
