#include "knotdecomp/structure_tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "knotdecomp/errors.hpp"

namespace knot {

TreeLabel TreeLabel::rational(const Fraction& f) {
    Fraction n = f.is_infinite() ? f : Fraction::of(f.r, f.s);
    if (!n.is_infinite() && (n.s == 1 || n.s == -1)) return weight(n.r * n.s);
    return {Kind::kRational, n};
}

std::string to_string(const TreeLabel& l) {
    switch (l.kind) {
        case TreeLabel::Kind::kJewel: return "J";
        case TreeLabel::Kind::kWeight: return "a=" + std::to_string(l.value.r * l.value.s);
        case TreeLabel::Kind::kRational: return to_string(l.value);
    }
    return "?";
}

std::vector<std::vector<int>> StructureTree::adjacency() const {
    std::vector<std::vector<int>> adj(vertices.size());
    for (const auto& e : edges) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    return adj;
}

namespace {

int region_of_open_edge(const Decomposition& dec) {
    for (int r = 0; r < static_cast<int>(dec.regions.size()); ++r)
        for (int b : dec.regions[r].boundary)
            if (b == kOpenEdge) return r;
    return -1;
}

int across(const Decomposition& dec, int circle, int from) {
    return dec.inner_region[circle] == from ? dec.outer_region[circle] : dec.inner_region[circle];
}

TreeVertex region_vertex(const Region& reg, int r) {
    TreeVertex v;
    v.label = reg.kind == RegionKind::kTBD ? TreeLabel::weight(reg.total_weight) : TreeLabel::jewel();
    v.regions = {r};
    v.crossing_count = reg.crossing_count;
    v.is_tbd = reg.kind == RegionKind::kTBD;
    return v;
}

// Builds a tree whose vertices are the classes of `vertex_of` (region -> vertex)
// and whose edges are the listed circles.
StructureTree assemble(const Decomposition& dec, TreeKind kind, std::vector<TreeVertex> vertices,
                       const std::vector<int>& vertex_of, const std::vector<int>& circles) {
    StructureTree t;
    t.kind = kind;
    t.vertices = std::move(vertices);
    for (int c : circles) {
        t.edges.push_back({vertex_of[dec.inner_region[c]], vertex_of[dec.outer_region[c]]});
        t.edge_circle.push_back(c);
    }
    int open_region = region_of_open_edge(dec);
    t.open_vertex = open_region < 0 ? -1 : vertex_of[open_region];
    for (auto& v : t.vertices) {
        if (!v.is_tbd || v.regions.size() != 1) continue;
        int r = v.regions.front();
        for (int b : dec.regions[r].boundary)
            v.cyclic.push_back(b == kOpenEdge ? kOpenNeighbour : vertex_of[across(dec, b, r)]);
    }
    return t;
}

}  // namespace

StructureTree canonical_tree(const Decomposition& dec) {
    std::vector<TreeVertex> vs;
    std::vector<int> vertex_of(dec.regions.size());
    for (int r = 0; r < static_cast<int>(dec.regions.size()); ++r) {
        vertex_of[r] = r;
        vs.push_back(region_vertex(dec.regions[r], r));
    }
    std::vector<int> circles(dec.family.size());
    std::iota(circles.begin(), circles.end(), 0);
    return assemble(dec, TreeKind::kCanonical, std::move(vs), vertex_of, circles);
}

StructureTree canonical_tree(const PlanarMap& d) { return canonical_tree(canonical_decomposition(d, 0)); }

StructureTree canonical_tree(const Tangle& t) { return canonical_tree(canonical_decomposition(t.map, 0)); }

StructureTree essential_tree(const Decomposition& dec) {
    const int nr = static_cast<int>(dec.regions.size());
    if (is_rational_link(dec)) {
        StructureTree t;
        t.kind = TreeKind::kEssential;
        TreeVertex v;
        v.label = TreeLabel::rational(rational_link_label(dec));
        for (int r = 0; r < nr; ++r) {
            v.regions.push_back(r);
            v.crossing_count += dec.regions[r].crossing_count;
        }
        t.vertices.push_back(v);
        return t;
    }
    std::vector<int> owner(nr, -1);  // region -> rational tangle index
    auto mrts = maximal_rational_tangles(dec);
    for (int i = 0; i < static_cast<int>(mrts.size()); ++i)
        for (int r : mrts[i].regions) owner[r] = i;
    std::vector<int> vertex_of(nr, -1);
    std::vector<int> mrt_vertex(mrts.size(), -1);
    std::vector<TreeVertex> vs;
    for (int r = 0; r < nr; ++r) {
        if (owner[r] < 0) {
            vertex_of[r] = static_cast<int>(vs.size());
            vs.push_back(region_vertex(dec.regions[r], r));
            continue;
        }
        int i = owner[r];
        if (mrt_vertex[i] < 0) {
            mrt_vertex[i] = static_cast<int>(vs.size());
            TreeVertex v;
            v.label = TreeLabel::rational(mrts[i].fraction);
            vs.push_back(v);
        }
        vertex_of[r] = mrt_vertex[i];
        vs[mrt_vertex[i]].regions.push_back(r);
        vs[mrt_vertex[i]].crossing_count += dec.regions[r].crossing_count;
    }
    return assemble(dec, TreeKind::kEssential, std::move(vs), vertex_of, essential_indices(dec));
}

StructureTree essential_tree(const PlanarMap& d) { return essential_tree(canonical_decomposition(d, 0)); }

StructureTree essential_tree(const Tangle& t) {
    Decomposition dec = canonical_decomposition(t.map, 0);
    StructureTree tree = essential_tree(dec);
    // A rational tangle reads its label in the port frame.
    if (tree.size() == 1) {
        try {
            tree.vertices[0].label = TreeLabel::rational(tangle_fraction(t));
            tree.vertices[0].is_tbd = false;
            tree.vertices[0].cyclic.clear();
        } catch (const KnotError&) {
        }
    }
    return tree;
}

namespace {

std::string label_code(const StructureTree& t, int v) {
    return to_string(t.vertices[v].label) + (v == t.open_vertex ? "!" : "");
}

std::string rooted_code(const StructureTree& t, const std::vector<std::vector<int>>& adj, int v, int parent) {
    std::vector<std::string> kids;
    for (int w : adj[v])
        if (w != parent) kids.push_back(rooted_code(t, adj, w, v));
    std::sort(kids.begin(), kids.end());
    std::string out = "(" + label_code(t, v);
    for (const auto& k : kids) out += k;
    return out + ")";
}

std::vector<std::string> all_rooted_codes(const StructureTree& t) {
    auto adj = t.adjacency();
    std::vector<std::string> out(t.vertices.size());
    for (int v = 0; v < t.size(); ++v) out[v] = rooted_code(t, adj, v, -1);
    return out;
}

bool is_rotation(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (std::size_t s = 0; s < b.size(); ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[i] == b[(i + s) % b.size()];
        if (ok) return true;
    }
    return false;
}

// Each band may be read in either direction: a flype mirrors the flipped
// tangle and reverses the orders inside it only.
bool respects_cyclic_order(const StructureTree& a, const StructureTree& b, const std::vector<int>& map) {
    for (int v = 0; v < a.size(); ++v) {
        const auto& c = a.vertices[v].cyclic;
        if (c.empty()) continue;
        std::vector<int> image;
        for (int x : c) image.push_back(x == kOpenNeighbour ? kOpenNeighbour : map[x]);
        auto target = b.vertices[map[v]].cyclic;
        if (is_rotation(image, target)) continue;
        std::reverse(target.begin(), target.end());
        if (!is_rotation(image, target)) return false;
    }
    return true;
}

// Backtracking over label- and adjacency-preserving maps from a to b.
class MapSearch {
public:
    MapSearch(const StructureTree& a, const StructureTree& b, TreeMatch match, int q,
              std::function<bool(const std::vector<int>&)> visit)
        : a_(a), b_(b), match_(match), q_(q), visit_(std::move(visit)) {
        ca_ = all_rooted_codes(a);
        cb_ = &a == &b ? ca_ : all_rooted_codes(b);
        adj_b_ = b.adjacency();
        auto adj_a = a.adjacency();
        std::vector<char> seen(a.size(), 0);
        if (a.size() > 0) {
            std::queue<int> qu;
            qu.push(0);
            seen[0] = 1;
            parent_.assign(a.size(), -1);
            while (!qu.empty()) {
                int v = qu.front();
                qu.pop();
                order_.push_back(v);
                for (int w : adj_a[v])
                    if (!seen[w]) {
                        seen[w] = 1;
                        parent_[w] = v;
                        qu.push(w);
                    }
            }
        }
        map_.assign(a.size(), -1);
        inverse_.assign(b.size(), -1);
    }

    void run() {
        if (a_.size() != b_.size() || order_.size() != static_cast<std::size_t>(a_.size())) return;
        if ((a_.open_vertex < 0) != (b_.open_vertex < 0)) return;
        auto sa = ca_, sb = cb_;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return;
        extend(0);
    }

private:
    bool cycle_ok(int v, int w) const {
        if (q_ <= 0) return true;
        int x = w, steps = 1;
        while (x != v) {
            if (map_[x] < 0) return steps < q_;
            x = map_[x];
            ++steps;
            if (steps > q_) return false;
        }
        return q_ % steps == 0;
    }

    bool extend(std::size_t i) {
        if (i == order_.size()) {
            if (match_ == TreeMatch::kStrict && !respects_cyclic_order(a_, b_, map_)) return false;
            return visit_(map_);
        }
        int v = order_[i];
        std::vector<int> cands;
        if (parent_[v] < 0) {
            for (int w = 0; w < b_.size(); ++w) cands.push_back(w);
        } else {
            cands = adj_b_[map_[parent_[v]]];
        }
        for (int w : cands) {
            if (inverse_[w] >= 0 || cb_[w] != ca_[v]) continue;
            map_[v] = w;
            inverse_[w] = v;
            bool stop = cycle_ok(v, w) && extend(i + 1);
            map_[v] = -1;
            inverse_[w] = -1;
            if (stop) return true;
        }
        return false;
    }

    const StructureTree& a_;
    const StructureTree& b_;
    TreeMatch match_;
    int q_;
    std::function<bool(const std::vector<int>&)> visit_;
    std::vector<std::string> ca_, cb_;
    std::vector<std::vector<int>> adj_b_;
    std::vector<int> order_, parent_, map_, inverse_;
};

int permutation_order(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    long long order = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t x = i; !seen[x]; x = static_cast<std::size_t>(p[x])) {
            seen[x] = 1;
            ++len;
        }
        order = std::lcm(order, static_cast<long long>(len));
    }
    return static_cast<int>(order);
}

}  // namespace

std::optional<std::vector<int>> tree_isomorphic(const StructureTree& a, const StructureTree& b, TreeMatch match) {
    std::optional<std::vector<int>> found;
    MapSearch s(a, b, match, 0, [&](const std::vector<int>& m) {
        found = m;
        return true;
    });
    s.run();
    return found;
}

TreeAutomorphism identity_automorphism(const StructureTree& t) {
    TreeAutomorphism id;
    id.vertex_map.resize(t.vertices.size());
    std::iota(id.vertex_map.begin(), id.vertex_map.end(), 0);
    return id;
}

std::vector<TreeAutomorphism> automorphisms_of_order(const StructureTree& t, int q, TreeMatch match,
                                                     std::size_t limit) {
    if (q < 2) throw KnotError(ErrorCode::kInvalidDiagram, "automorphism order must be at least 2");
    std::vector<TreeAutomorphism> out;
    MapSearch s(t, t, match, q, [&](const std::vector<int>& m) {
        int ord = permutation_order(m);
        if (ord > 1) out.push_back({m, ord});
        return out.size() >= limit;
    });
    s.run();
    return out;
}

FixedSubtree fixed_subtree(const StructureTree& t, const TreeAutomorphism& phi) {
    FixedSubtree f;
    for (int v = 0; v < t.size(); ++v)
        if (phi.vertex_map[v] == v) f.vertices.push_back(v);
    for (int e = 0; e < static_cast<int>(t.edges.size()); ++e) {
        int u = t.edges[e][0], w = t.edges[e][1];
        if (phi.vertex_map[u] == u && phi.vertex_map[w] == w) f.edges.push_back(e);
        if (phi.vertex_map[u] == w && phi.vertex_map[w] == u) {
            f.edge_flipped = true;
            f.flipped_edge = e;
        }
    }
    return f;
}

std::string to_dot(const StructureTree& t, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (int v = 0; v < t.size(); ++v) {
        os << "  v" << v << " [label=\"" << to_string(t.vertices[v].label) << "\"";
        if (t.vertices[v].label.kind == TreeLabel::Kind::kJewel) os << ", shape=box";
        os << "];\n";
    }
    for (const auto& e : t.edges) os << "  v" << e[0] << " -- v" << e[1] << ";\n";
    if (t.open_vertex >= 0) os << "  open [shape=point];\n  v" << t.open_vertex << " -- open;\n";
    os << "}\n";
    return os.str();
}

nlohmann::json to_json(const StructureTree& t) {
    nlohmann::json j;
    j["kind"] = t.kind == TreeKind::kCanonical ? "canonical" : "essential";
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : t.vertices) {
        nlohmann::json jv;
        jv["label"] = to_string(v.label);
        switch (v.label.kind) {
            case TreeLabel::Kind::kWeight:
                jv["type"] = "weight";
                jv["weight"] = v.label.value.r * v.label.value.s;
                break;
            case TreeLabel::Kind::kRational:
                jv["type"] = "rational";
                jv["fraction"] = to_string(v.label.value);
                break;
            case TreeLabel::Kind::kJewel: jv["type"] = "jewel"; break;
        }
        jv["regions"] = v.regions;
        jv["crossing_count"] = v.crossing_count;
        if (!v.cyclic.empty()) jv["cyclic_order"] = v.cyclic;
        j["vertices"].push_back(jv);
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : t.edges) j["edges"].push_back({e[0], e[1]});
    j["edge_circles"] = t.edge_circle;
    if (t.open_vertex >= 0) j["open_vertex"] = t.open_vertex;
    else j["open_vertex"] = nullptr;
    return j;
}

}  // namespace knot
