#pragma once

// 4-valent planar combinatorial maps.
//
// Every vertex owns four darts numbered 4*v + slot, slot 0..3 in
// counterclockwise order. `partner` is the edge involution. A vertex is
// either a crossing (the strands run slot 0-2 and slot 1-3) or a box: an
// opaque disk meeting the rest of the map in four points, used for tangle
// boundaries and for collapsed sub-diagrams.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "knotdecomp/bits.hpp"

namespace knot {

enum class VertexKind : std::uint8_t { kCrossing, kBox };

constexpr int dart_vertex(int d) { return d >> 2; }
constexpr int dart_slot(int d) { return d & 3; }
constexpr int make_dart(int v, int slot) { return 4 * v + (slot & 3); }
constexpr int ccw_next(int d) { return (d & ~3) | ((d + 1) & 3); }
constexpr int ccw_prev(int d) { return (d & ~3) | ((d + 3) & 3); }
/// The dart on the other end of the strand passing through a crossing.
constexpr int across(int d) { return d ^ 2; }

struct PlanarMap {
    std::vector<VertexKind> kind;
    std::vector<int> tag;                 // box payload id, -1 for crossings
    std::vector<std::uint8_t> over02;     // crossing: strand through slots 0,2 is over
    std::vector<int> partner;             // dart -> dart, -1 while unlinked
    std::vector<std::uint8_t> outgoing;   // dart -> strand leaves the vertex here
    int free_loops = 0;                   // crossingless closed components

    [[nodiscard]] int vertex_count() const { return static_cast<int>(kind.size()); }
    [[nodiscard]] int dart_count() const { return 4 * vertex_count(); }
    [[nodiscard]] int edge_count() const { return 2 * vertex_count(); }
    [[nodiscard]] int crossing_count() const;
    [[nodiscard]] int box_count() const { return vertex_count() - crossing_count(); }
    [[nodiscard]] bool is_crossing(int v) const { return kind[v] == VertexKind::kCrossing; }
    [[nodiscard]] bool is_box(int v) const { return kind[v] == VertexKind::kBox; }

    int add_vertex(VertexKind k, int box_tag = -1, bool over_even = false);
    void link(int a, int b) {
        partner[a] = b;
        partner[b] = a;
    }

    /// True when the strand through dart `d` of a crossing is the over strand.
    [[nodiscard]] bool is_over(int d) const {
        return (over02[dart_vertex(d)] != 0) == (dart_slot(d) % 2 == 0);
    }

    [[nodiscard]] VertexSet all_vertices() const { return VertexSet::range(vertex_count()); }
    [[nodiscard]] VertexSet crossing_set() const;

    /// One representative dart per edge (the smaller dart id), in increasing order.
    [[nodiscard]] std::vector<int> edge_darts() const;

    /// Face id for every dart. Dart e labels the corner between ccw_prev(e) and e;
    /// faces are the orbits of d -> ccw_next(partner[d]).
    [[nodiscard]] std::vector<int> face_of_dart(int* face_count = nullptr) const;
    [[nodiscard]] int face_count() const;

    /// Connected component id per vertex (free loops are not represented).
    [[nodiscard]] std::vector<int> vertex_components(int* count = nullptr) const;
    [[nodiscard]] bool connected() const;

    /// V - E + F summed over connected pieces must be 2 per piece on the sphere.
    [[nodiscard]] bool sphere_euler_holds() const;

    /// Counterclockwise sequence of the darts of `group` whose edges leave the
    /// group. Throws if the cut darts do not lie on a single boundary walk.
    [[nodiscard]] std::vector<int> boundary_walk(const VertexSet& group) const;

    /// Consistent strand orientation: each crossing strand and each edge gets
    /// one outgoing and one incoming end. Strands through boxes are opaque, so
    /// orientation is only meaningful for box-free maps or maps whose boxes
    /// carry oriented darts already.
    void orient();

    /// Assign over/under so that every edge between crossings alternates.
    /// Returns false when no alternating assignment exists.
    bool make_alternating(bool first_over_even = true);

    [[nodiscard]] bool is_alternating() const;

    /// Reverse the rotation of the given crossings (a mirror reflection of the
    /// plane restricted to them) and optionally swap over/under there.
    [[nodiscard]] PlanarMap reflected(const VertexSet& which, bool swap_over) const;

    /// Consistency checks: involution, orientation sanity. Throws KnotError.
    void validate() const;
};

/// Result of collapsing vertex groups into boxes.
struct Contraction {
    PlanarMap map;
    std::vector<int> vertex_image;   // old vertex -> new vertex
    std::vector<int> dart_image;     // old dart -> new dart (-1 for internal darts)
    std::vector<int> group_vertex;   // group index -> new box vertex
};

/// Collapse each group (a connected vertex set with exactly four leaving
/// edges) into a single box; the box darts follow the boundary walk.
/// Vertices outside every group are copied unchanged.
[[nodiscard]] Contraction contract(const PlanarMap& map, std::span<const VertexSet> groups,
                                   std::span<const int> group_tags);

/// Deterministic traversal code starting at `start`; two maps are isomorphic
/// (rotation, pairing and over/under preserving) iff some pair of start darts
/// gives equal codes. `order` receives the entry dart of each visited vertex.
[[nodiscard]] std::vector<int> traversal_code(const PlanarMap& map, int start,
                                              bool with_orientation,
                                              std::vector<int>* order = nullptr);

/// Lexicographically least traversal code over all start darts, one block
/// per connected component (sorted), plus the free-loop count.
[[nodiscard]] std::vector<int> canonical_code(const PlanarMap& map, bool with_orientation = false);

/// Dart bijection a -> b preserving pairing, rotation and over/under, if one exists.
/// Both maps must be connected.
[[nodiscard]] std::vector<int> find_isomorphism(const PlanarMap& a, const PlanarMap& b,
                                                bool with_orientation = false);

/// All rotation-preserving automorphisms of a connected map, as dart permutations.
/// The identity comes first.
[[nodiscard]] std::vector<std::vector<int>> map_automorphisms(const PlanarMap& map,
                                                              bool with_orientation = false);

/// Serialize a dart permutation on vertices (crossing permutation).
[[nodiscard]] std::vector<int> vertex_permutation(const std::vector<int>& dart_perm);

}  // namespace knot
