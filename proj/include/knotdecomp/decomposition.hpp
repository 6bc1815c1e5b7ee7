#pragma once

// Haseman circles, admissible families and the regions they cut out.
//
// A circle class is stored as its inside: the side of the 4-edge bond that
// does not contain the anchor vertex (vertex 0 of a diagram, the port box of
// a tangle). Parallel circles induce the same bipartition, so a bipartition
// is exactly one parallel class.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "knotdecomp/planar_map.hpp"
#include "knotdecomp/tangle_calculus.hpp"

namespace knot {

struct HasemanCircle {
    VertexSet inside;
    std::array<int, 4> cut_edges{};  // smaller dart of each crossed edge, sorted

    friend bool operator==(const HasemanCircle& a, const HasemanCircle& b) { return a.inside == b.inside; }
};

/// Deterministic circle order: by inside size, then by bits.
bool circle_less(const HasemanCircle& a, const HasemanCircle& b);

/// All bipartitions with exactly four cut edges and both sides connected.
[[nodiscard]] std::vector<VertexSet> four_edge_bonds_serial(const PlanarMap& m, int anchor);
[[nodiscard]] std::vector<VertexSet> four_edge_bonds_parallel(const PlanarMap& m, int anchor);
[[nodiscard]] std::vector<VertexSet> four_edge_bonds(const PlanarMap& m, int anchor);

/// Side with no boxes and at most one crossing (trivial arcs or a singleton).
[[nodiscard]] bool is_compressible_side(const PlanarMap& m, const VertexSet& side);
/// Either side of the bipartition is compressible.
[[nodiscard]] bool is_compressible(const PlanarMap& m, const VertexSet& inside);
/// Same test for a cut given by four crossed edges (an edge may repeat when
/// the curve crosses it twice, which leaves a crossingless side).
[[nodiscard]] bool is_compressible_cut(const PlanarMap& m, std::array<int, 4> edges);

[[nodiscard]] std::vector<HasemanCircle> enumerate_haseman_serial(const PlanarMap& m, int anchor = 0);
[[nodiscard]] std::vector<HasemanCircle> enumerate_haseman_parallel(const PlanarMap& m, int anchor = 0);
[[nodiscard]] std::vector<HasemanCircle> enumerate_haseman(const PlanarMap& m, int anchor = 0);

[[nodiscard]] HasemanCircle make_circle(const PlanarMap& m, const VertexSet& inside);

/// Insides of two circles sharing an anchor overlap without nesting.
[[nodiscard]] bool circles_cross(const VertexSet& a, const VertexSet& b);
/// Parallel means same class. Throws NotComparable when the circles cross.
[[nodiscard]] bool are_parallel(const HasemanCircle& a, const HasemanCircle& b);

enum class RegionKind : std::uint8_t { kTBD, kJewel, kNeither };
[[nodiscard]] std::string_view to_string(RegionKind k);

/// Stand-in circle id for the port box of a tangle (the open edge).
inline constexpr int kOpenEdge = -1;

/// One piece of a twisted band: a crossing or a boundary box.
struct BandUnit {
    bool is_crossing = false;
    int crossing = -1;               // diagram vertex for crossings
    int circle = kOpenEdge;          // family index for boxes
    VertexSet content;               // diagram vertices making up the unit
    std::array<int, 2> prev{};       // diagram darts toward the previous unit; prev[1] follows prev[0] ccw
    std::array<int, 2> next{};       // diagram darts toward the next unit
    int sign = 0;                    // band weight of a crossing
};

struct Region {
    RegionKind kind = RegionKind::kNeither;
    VertexSet vertices;              // diagram vertices owned by the region
    int parent_circle = -1;          // circle bounding the region from outside, -1 at the root
    std::vector<int> child_circles;
    /// Boundary circles; band order for a TBD, sorted otherwise. kOpenEdge
    /// stands for the port box of a tangle.
    std::vector<int> boundary;
    /// weights[i] is the twist region that follows boundary[i] in band order;
    /// a valency-0 band has a single weight.
    std::vector<int> weights;
    int total_weight = 0;
    int crossing_count = 0;
    bool mixed_signs = false;
    /// Matches one of the shapes excluded from jewels: valency 2 with |a| = 1
    /// or valency 3 with a = 0. Reported as a TBD.
    bool degenerate = false;
    std::vector<BandUnit> band;      // TBD only, cyclic
    PlanarMap region_map;            // crossings plus one box per boundary circle
};

struct Decomposition {
    int anchor = 0;
    std::vector<HasemanCircle> family;
    std::vector<Region> regions;     // region 0 contains the anchor
    std::vector<int> inner_region;   // per circle
    std::vector<int> outer_region;   // per circle
    bool admissible = false;

    [[nodiscard]] int valency(int region) const { return static_cast<int>(regions[region].boundary.size()); }
};

/// Cut the diagram along a laminar family and classify every region.
/// Throws NotComparable when two family members cross.
[[nodiscard]] Decomposition decompose(const PlanarMap& m, std::vector<HasemanCircle> family, int anchor = 0);

/// As `decompose`, but throws NotAdmissible when a region is neither a TBD nor a jewel.
[[nodiscard]] Decomposition classify_regions(const PlanarMap& m, std::vector<HasemanCircle> family,
                                             int anchor = 0);

/// Classify a single region map (crossings plus boundary boxes).
[[nodiscard]] RegionKind classify_region_map(const PlanarMap& r);

/// The minimal admissible family. `used_search` is set when the constructive
/// pass had to fall back to exhaustive search.
[[nodiscard]] std::vector<HasemanCircle> canonical_family(const PlanarMap& m, int anchor = 0,
                                                          bool* used_search = nullptr);
[[nodiscard]] Decomposition canonical_decomposition(const PlanarMap& m, int anchor = 0);

struct RationalTangle {
    int boundary_circle = kOpenEdge;        // family index, kOpenEdge for a whole tangle
    std::vector<int> regions;               // outermost first, spire last
    std::vector<int> interior_circles;
    VertexSet vertices;                     // diagram vertices inside the boundary
    std::vector<int> band_weights;          // total weight of each region, outermost first
    ContinuedFraction cf;
    Fraction fraction;
};

/// Maximal rational tangles of a canonical decomposition. Empty when the
/// whole link is rational (see `is_rational_link`).
[[nodiscard]] std::vector<RationalTangle> maximal_rational_tangles(const Decomposition& dec);

/// Whole link is rational: a single TBD or a path of TBDs ending in spires.
[[nodiscard]] bool is_rational_link(const Decomposition& dec);

/// Label of a rational link: the lexicographically least fraction read from
/// either end of the chain.
[[nodiscard]] Fraction rational_link_label(const Decomposition& dec);

/// Indices (into dec.family) of the essential circles.
[[nodiscard]] std::vector<int> essential_indices(const Decomposition& dec);
[[nodiscard]] std::vector<HasemanCircle> essential_family(const PlanarMap& m, int anchor = 0);

/// Fraction of a rational tangle in its port frame. Throws NotRational.
[[nodiscard]] Fraction tangle_fraction(const Tangle& t);

}  // namespace knot
