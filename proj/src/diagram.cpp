#include "knotdecomp/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "knotdecomp/errors.hpp"

namespace knot {

namespace {

[[noreturn]] void malformed(const std::string& why) {
    throw KnotError(ErrorCode::kMalformedCode, why);
}

class Scanner {
public:
    explicit Scanner(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    void skip_separators() {
        while (i_ < s_.size() &&
               (std::isspace(static_cast<unsigned char>(s_[i_])) || s_[i_] == ';' || s_[i_] == ','))
            ++i_;
    }
    [[nodiscard]] bool at_end() const { return i_ >= s_.size(); }
    [[nodiscard]] char peek() const { return at_end() ? '\0' : s_[i_]; }
    bool accept(char c) {
        skip_ws();
        if (peek() == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) malformed(std::string("expected '") + c + "' at offset " + std::to_string(i_));
    }
    bool accept_word(std::string_view w) {
        skip_ws();
        if (s_.substr(i_, w.size()) == w) {
            i_ += w.size();
            return true;
        }
        return false;
    }
    int integer() {
        skip_ws();
        std::size_t start = i_;
        bool neg = false;
        if (peek() == '-' || peek() == '+') {
            neg = peek() == '-';
            ++i_;
        }
        long long v = 0;
        std::size_t digits = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 1'000'000'000) malformed("integer too large");
            ++i_;
            ++digits;
        }
        if (digits == 0) malformed("expected integer at offset " + std::to_string(start));
        return static_cast<int>(neg ? -v : v);
    }
    [[nodiscard]] std::size_t pos() const { return i_; }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

std::vector<std::array<int, 4>> scan_pd_records(std::string_view text) {
    Scanner sc(text);
    sc.skip_ws();
    if (sc.at_end()) malformed("empty PD code");
    bool wrapped = false;
    if (sc.accept_word("PD")) {
        sc.expect('[');
        wrapped = true;
    } else {
        // `[[a,b,c,d],...]` has an outer bracket; `[a,b,c,d] [..]` does not.
        Scanner probe = sc;
        if (probe.accept('[') && probe.accept('[')) {
            sc.expect('[');
            wrapped = true;
        }
    }
    std::vector<std::array<int, 4>> out;
    for (;;) {
        sc.skip_separators();
        if (sc.at_end()) {
            if (wrapped) malformed("unterminated PD list");
            break;
        }
        if (wrapped && sc.accept(']')) {
            sc.skip_separators();
            if (!sc.at_end()) malformed("trailing text after PD list");
            break;
        }
        sc.accept('X');
        sc.expect('[');
        std::array<int, 4> rec{};
        for (int k = 0; k < 4; ++k) {
            if (k) sc.expect(',');
            rec[k] = sc.integer();
            if (rec[k] <= 0) malformed("PD labels must be positive");
        }
        sc.expect(']');
        out.push_back(rec);
    }
    if (out.empty()) malformed("empty PD code");
    return out;
}

// Sets outgoing on `start`'s cycle and incoming on the partners. Returns false on conflict.
bool assign_direction(const PlanarMap& m, std::vector<int>& dir, int start) {
    int cur = start;
    do {
        int p = m.partner[cur];
        if (dir[cur] == 0 || dir[p] == 1) return false;
        dir[cur] = 1;
        dir[p] = 0;
        cur = across(p);
    } while (cur != start);
    return true;
}

}  // namespace

std::string_view position_name(int slot) {
    static constexpr std::string_view kNames[4] = {"SW", "SE", "NE", "NW"};
    return kNames[slot & 3];
}

std::string_view to_string(ConnectionKind k) {
    switch (k) {
        case ConnectionKind::H: return "H";
        case ConnectionKind::V: return "V";
        case ConnectionKind::X: return "X";
    }
    return "?";
}

LinkDiagram parse_pd(std::string_view text) {
    auto records = scan_pd_records(text);
    const int n = static_cast<int>(records.size());
    std::map<int, std::vector<int>> where;
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < 4; ++k) where[records[v][k]].push_back(make_dart(v, k));
    for (auto& [label, darts] : where)
        if (darts.size() != 2)
            throw KnotError(ErrorCode::kNonQuadrivalent,
                            "label " + std::to_string(label) + " appears " +
                                std::to_string(darts.size()) + " times");

    LinkDiagram m;
    for (int v = 0; v < n; ++v) m.add_vertex(VertexKind::kCrossing, -1, false);
    for (auto& [label, darts] : where) m.link(darts[0], darts[1]);

    std::vector<int> dir(m.dart_count(), -1);
    for (int v = 0; v < n; ++v) {
        int out = make_dart(v, 2);
        if (dir[out] == 1) continue;
        if (!assign_direction(m, dir, out)) malformed("inconsistent strand orientation");
    }
    // Components that never pass under: follow increasing labels.
    for (int d = 0; d < m.dart_count(); ++d) {
        if (dir[d] >= 0) continue;
        int v = dart_vertex(d);
        int a = make_dart(v, 1), b = make_dart(v, 3);
        int la = records[v][1], lb = records[v][3];
        int out;
        if (la == lb + 1) out = a;
        else if (lb == la + 1) out = b;
        else out = la < lb ? a : b;
        if (!assign_direction(m, dir, out)) malformed("inconsistent strand orientation");
    }
    for (int d = 0; d < m.dart_count(); ++d) m.outgoing[d] = static_cast<std::uint8_t>(dir[d]);
    m.validate();
    if (!m.sphere_euler_holds())
        throw KnotError(ErrorCode::kNonPlanar, "rotation system is not planar (Euler check failed)");
    return m;
}

LinkDiagram parse_gauss(std::string_view text) {
    struct Pass {
        int id;
        bool over;
        int sign;
    };
    std::vector<Pass> seq;
    Scanner sc(text);
    for (;;) {
        sc.skip_separators();
        if (sc.at_end()) break;
        char c = sc.peek();
        bool over;
        if (c == 'O' || c == 'o') over = true;
        else if (c == 'U' || c == 'u') over = false;
        else malformed("expected O or U at offset " + std::to_string(sc.pos()));
        sc.accept(c);
        int id = sc.integer();
        if (id <= 0) malformed("crossing ids must be positive");
        int sign;
        if (sc.accept('+')) sign = 1;
        else if (sc.accept('-')) sign = -1;
        else malformed("missing crossing sign");
        seq.push_back({id, over, sign});
    }
    if (seq.empty()) malformed("empty Gauss code");

    std::map<int, int> vertex_of;
    std::map<int, std::array<int, 2>> seen;  // id -> {over count, under count}
    std::map<int, int> sign_of;
    for (auto& p : seq) {
        if (!vertex_of.count(p.id)) {
            int v = static_cast<int>(vertex_of.size());
            vertex_of[p.id] = v;
            sign_of[p.id] = p.sign;
        } else if (sign_of[p.id] != p.sign) {
            malformed("crossing " + std::to_string(p.id) + " has two signs");
        }
        seen[p.id][p.over ? 0 : 1]++;
    }
    for (auto& [id, cnt] : seen)
        if (cnt[0] != 1 || cnt[1] != 1)
            malformed("crossing " + std::to_string(id) + " must occur once over and once under");

    LinkDiagram m;
    for (std::size_t i = 0; i < vertex_of.size(); ++i) m.add_vertex(VertexKind::kCrossing, -1, false);
    const int len = static_cast<int>(seq.size());
    auto in_dart = [&](const Pass& p) {
        int v = vertex_of[p.id];
        if (!p.over) return make_dart(v, 0);
        return make_dart(v, p.sign > 0 ? 3 : 1);
    };
    auto out_dart = [&](const Pass& p) {
        int v = vertex_of[p.id];
        if (!p.over) return make_dart(v, 2);
        return make_dart(v, p.sign > 0 ? 1 : 3);
    };
    for (int j = 0; j < len; ++j) {
        int a = out_dart(seq[j]);
        int b = in_dart(seq[(j + 1) % len]);
        m.link(a, b);
        m.outgoing[a] = 1;
        m.outgoing[b] = 0;
    }
    m.validate();
    if (!m.sphere_euler_holds())
        throw KnotError(ErrorCode::kNonRealizable, "Gauss code has no planar realization");
    return m;
}

LinkDiagram parse_diagram(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && (text[i] == 'O' || text[i] == 'U' || text[i] == 'o' || text[i] == 'u'))
        return parse_gauss(text);
    return parse_pd(text);
}

std::vector<std::array<int, 4>> to_pd(const LinkDiagram& d) {
    if (d.box_count() != 0) throw KnotError(ErrorCode::kInvalidDiagram, "PD export needs a box-free map");
    std::vector<int> label(d.dart_count(), 0);
    int next = 1;
    for (int s = 0; s < d.dart_count(); ++s) {
        if (label[s] || !d.outgoing[s]) continue;
        int cur = s;
        do {
            label[cur] = label[d.partner[cur]] = next++;
            cur = across(d.partner[cur]);
        } while (cur != s && !label[cur]);
    }
    std::vector<std::array<int, 4>> out;
    for (int v = 0; v < d.vertex_count(); ++v) {
        int u = d.over02[v] ? make_dart(v, 1) : make_dart(v, 0);
        if (d.outgoing[u]) u = across(u);
        std::array<int, 4> rec{};
        for (int k = 0; k < 4; ++k) rec[k] = label[make_dart(v, dart_slot(u) + k)];
        out.push_back(rec);
    }
    return out;
}

std::string to_pd_text(const LinkDiagram& d) {
    std::ostringstream os;
    bool first = true;
    for (auto& r : to_pd(d)) {
        if (!first) os << ';';
        first = false;
        os << "X[" << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << ']';
    }
    return os.str();
}

std::vector<int> strand_component_of_dart(const PlanarMap& d, int* count) {
    std::vector<int> comp(d.dart_count(), -1);
    int c = 0;
    for (int s = 0; s < d.dart_count(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : {d.partner[x], across(x)})
                if (comp[y] < 0) {
                    comp[y] = c;
                    stack.push_back(y);
                }
        }
        ++c;
    }
    if (count) *count = c;
    return comp;
}

int component_count(const LinkDiagram& d) {
    int c = 0;
    (void)strand_component_of_dart(d, &c);
    return c + d.free_loops;
}

int crossing_sign(const LinkDiagram& d, int v) {
    int u = d.over02[v] ? make_dart(v, 1) : make_dart(v, 0);
    if (d.outgoing[u]) u = across(u);
    return d.outgoing[ccw_next(u)] ? 1 : -1;
}

int writhe(const LinkDiagram& d) {
    int w = 0;
    for (int v = 0; v < d.vertex_count(); ++v)
        if (d.is_crossing(v)) w += crossing_sign(d, v);
    return w;
}

bool is_alternating(const LinkDiagram& d) { return d.is_alternating(); }

bool is_reduced(const LinkDiagram& d) {
    auto face = d.face_of_dart();
    for (int v = 0; v < d.vertex_count(); ++v) {
        if (!d.is_crossing(v)) continue;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                if (face[make_dart(v, a)] == face[make_dart(v, b)]) return false;
    }
    return true;
}

bool is_connected(const LinkDiagram& d) {
    if (d.vertex_count() == 0) return d.free_loops <= 1;
    return d.connected() && d.free_loops == 0;
}

bool is_prime(const LinkDiagram& d) {
    if (!is_connected(d)) return false;
    const int n = d.vertex_count();
    auto edges = d.edge_darts();
    std::vector<int> comp(n);
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            auto cut = [&](int x) {
                int e = std::min(x, d.partner[x]);
                return e == edges[i] || e == edges[j];
            };
            std::fill(comp.begin(), comp.end(), -1);
            std::vector<int> stack{0};
            comp[0] = 0;
            int reached = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int k = 0; k < 4; ++k) {
                    int x = make_dart(v, k);
                    if (cut(x)) continue;
                    int w = dart_vertex(d.partner[x]);
                    if (comp[w] < 0) {
                        comp[w] = 0;
                        ++reached;
                        stack.push_back(w);
                    }
                }
            }
            if (reached < n) return false;
        }
    return true;
}

LinkDiagram unknot_diagram() {
    LinkDiagram m;
    m.free_loops = 1;
    return m;
}

LinkDiagram mirror(const LinkDiagram& d) {
    LinkDiagram m = d;
    for (int v = 0; v < m.vertex_count(); ++v)
        if (m.is_crossing(v)) m.over02[v] ^= 1;
    return m;
}

ConnectionPath connection_path(const LinkDiagram& d, const VertexSet& side, int nw) {
    auto walk = d.boundary_walk(side);
    if (walk.size() != 4)
        throw KnotError(ErrorCode::kInvalidDiagram, "connection path needs a 4-point cut");
    if (nw < 0) nw = *std::min_element(walk.begin(), walk.end());
    auto it = std::find(walk.begin(), walk.end(), nw);
    if (it == walk.end()) throw KnotError(ErrorCode::kInvalidDiagram, "frame dart is not on the cut");
    std::rotate(walk.begin(), it, walk.end());
    // Counterclockwise around the disk the ports read NW, SW, SE, NE.
    ConnectionPath cp;
    cp.ports = {walk[0], walk[3], walk[2], walk[1]};
    auto exit_of = [&](int p) {
        int cur = p;
        for (int guard = 0; guard <= d.dart_count(); ++guard) {
            cur = across(cur);
            int q = d.partner[cur];
            if (!side.test(dart_vertex(q))) return cur;
            cur = q;
        }
        throw KnotError(ErrorCode::kInvalidDiagram, "strand does not leave the disk");
    };
    int mate = exit_of(cp.ports[0]);
    if (mate == cp.ports[1]) cp.kind = ConnectionKind::H;
    else if (mate == cp.ports[3]) cp.kind = ConnectionKind::V;
    else cp.kind = ConnectionKind::X;
    if (d.outgoing.size() == static_cast<std::size_t>(d.dart_count()))
        for (int k = 0; k < 4; ++k) cp.entry[k] = d.outgoing[cp.ports[k]] == 0;
    return cp;
}

nlohmann::json to_json(const LinkDiagram& d) {
    using nlohmann::json;
    json crossings = json::array();
    for (int v = 0; v < d.vertex_count(); ++v) {
        json c{{"id", v}};
        c["over"] = d.over02[v] ? "SW-NE" : "SE-NW";
        if (!d.outgoing.empty()) c["sign"] = crossing_sign(d, v);
        crossings.push_back(c);
    }
    json darts = json::array();
    for (int x = 0; x < d.dart_count(); ++x)
        darts.push_back({{"id", x}, {"crossing", dart_vertex(x)}, {"position", position_name(dart_slot(x))}});
    json edges = json::array();
    for (int e : d.edge_darts()) {
        int a = e, b = d.partner[e];
        if (!d.outgoing[a]) std::swap(a, b);
        edges.push_back({a, b});
    }
    json rotation = json::array();
    for (int v = 0; v < d.vertex_count(); ++v)
        rotation.push_back({make_dart(v, 0), make_dart(v, 1), make_dart(v, 2), make_dart(v, 3)});
    json orientation = json::array();
    for (int x = 0; x < d.dart_count(); ++x) orientation.push_back(d.outgoing[x] ? "out" : "in");
    return json{{"crossings", crossings},
                {"darts", darts},
                {"edges", edges},
                {"rotation", rotation},
                {"orientation", orientation},
                {"component_count", component_count(d)},
                {"free_loops", d.free_loops}};
}

LinkDiagram diagram_from_json(const nlohmann::json& j) {
    try {
        LinkDiagram m;
        for (auto& c : j.at("crossings"))
            m.add_vertex(VertexKind::kCrossing, -1, c.at("over").get<std::string>() == "SW-NE");
        for (auto& e : j.at("edges")) {
            int a = e.at(0).get<int>(), b = e.at(1).get<int>();
            if (a < 0 || b < 0 || a >= m.dart_count() || b >= m.dart_count()) malformed("dart out of range");
            m.link(a, b);
            m.outgoing[a] = 1;
            m.outgoing[b] = 0;
        }
        m.free_loops = j.value("free_loops", 0);
        m.validate();
        if (!m.sphere_euler_holds()) throw KnotError(ErrorCode::kNonPlanar, "Euler check failed");
        return m;
    } catch (const nlohmann::json::exception& e) {
        malformed(std::string("bad diagram JSON: ") + e.what());
    }
}

}  // namespace knot
