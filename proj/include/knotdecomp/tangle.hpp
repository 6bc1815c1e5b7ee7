#pragma once

// Four-ended tangles as planar maps. Vertex 0 is the port box; its slots
// are NW, NE, SE, SW in counterclockwise order around the box, which is the
// clockwise order around the tangle disk.

#include <vector>

#include "knotdecomp/planar_map.hpp"

namespace knot {

inline constexpr int kPortTag = -2;

enum Port : int { kNW = 0, kNE = 1, kSE = 2, kSW = 3 };

struct Tangle {
    PlanarMap map;

    [[nodiscard]] static Tangle zero();      // NW-NE and SW-SE arcs
    [[nodiscard]] static Tangle infinity();  // NW-SW and NE-SE arcs
    /// One crossing; type +1 puts the strand of positive slope over.
    [[nodiscard]] static Tangle crossing(int type);
    /// Horizontal twist of |n| crossings of type sign(n); [0] for n = 0.
    [[nodiscard]] static Tangle integer(int n);
    /// Vertical twist 1/[n].
    [[nodiscard]] static Tangle vertical(int n);

    /// Dart inside the tangle attached to the port (may be another port dart).
    [[nodiscard]] int port_partner(Port p) const { return map.partner[p]; }
    [[nodiscard]] int crossing_count() const { return map.crossing_count(); }
};

/// Removes the virtual vertices of `m`. Every dart of a virtual vertex is
/// glued to one other dart (`glue`, symmetric); real darts without a partner
/// must be glued as well. Chains through virtual darts are collapsed into
/// edges, and closed chains become free loops.
[[nodiscard]] PlanarMap splice(const PlanarMap& m, const std::vector<char>& is_virtual,
                               const std::vector<int>& glue);

/// Copies `src` into `dst`, returning the vertex offset.
int append_map(PlanarMap& dst, const PlanarMap& src);

[[nodiscard]] Tangle tangle_sum(const Tangle& a, const Tangle& b);
/// `a` stacked above `b`.
[[nodiscard]] Tangle tangle_product(const Tangle& a, const Tangle& b);
/// Quarter turn counterclockwise.
[[nodiscard]] Tangle rotate(const Tangle& t);
[[nodiscard]] Tangle mirror(const Tangle& t);
/// Mirror of the rotation; fraction becomes its reciprocal.
[[nodiscard]] Tangle reciprocal(const Tangle& t);

/// Numerator closure (NW-NE, SW-SE) and denominator closure (NW-SW, NE-SE),
/// oriented.
[[nodiscard]] PlanarMap numerator(const Tangle& t);
[[nodiscard]] PlanarMap denominator(const Tangle& t);

/// Replace box `box` of `host` by `t`. Box dart k (counterclockwise) meets
/// the tangle port at position k + turn of the sequence NW, SW, SE, NE.
[[nodiscard]] PlanarMap substitute(const PlanarMap& host, int box, const Tangle& t, int turn = 0);

/// Cut the disk `inside` out of `m` as a tangle. `nw` is the dart inside the
/// disk that becomes the NW port; the others follow clockwise.
[[nodiscard]] Tangle extract_tangle(const PlanarMap& m, const VertexSet& inside, int nw);

}  // namespace knot
