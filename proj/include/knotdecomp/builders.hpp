#pragma once

// Standard diagrams used by tests, benchmarks and the CLI. Every result is
// alternating and oriented.

#include <string_view>
#include <vector>

#include "knotdecomp/diagram.hpp"
#include "knotdecomp/tangle.hpp"

namespace knot {

/// Closure of a horizontal twist of n crossings: the (2,n) torus link.
[[nodiscard]] LinkDiagram torus_2n(int n);

/// Numerator closure of the sum of vertical twists 1/p_i.
[[nodiscard]] LinkDiagram pretzel(const std::vector<int>& p);

/// Numerator closure of t_0 + [w_0] + t_1 + [w_1] + ..., zero twists skipped.
[[nodiscard]] LinkDiagram ring_diagram(const std::vector<Tangle>& pieces, const std::vector<int>& twists);

/// The octahedral basic polyhedron 6* (the Borromean rings projection).
[[nodiscard]] LinkDiagram octahedron();

/// 6* with one crossing replaced by the port box.
[[nodiscard]] Tangle octahedral_tangle();

/// Make alternating and orient.
[[nodiscard]] LinkDiagram finish(PlanarMap m);

/// Named constructions: "torus:N", "pretzel:a,b,c", "octahedron".
/// Throws MalformedCode on an unknown name.
[[nodiscard]] LinkDiagram build_named(std::string_view spec);

}  // namespace knot
