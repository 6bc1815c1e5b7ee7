#pragma once

// Flypes as combinatorial rewrites inside twisted band diagrams.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "knotdecomp/decomposition.hpp"
#include "knotdecomp/diagram.hpp"

namespace knot {

/// Canonical code up to flat homeomorphism: map isomorphism, or the diagram
/// turned over (plane reflected, crossings switched).
[[nodiscard]] std::vector<int> flat_canonical_code(const LinkDiagram& d);

/// Moves `active_crossing` from the end of twist region `source_twist` across
/// the tangle `flipped` to the start of twist region `target_twist`. Twist
/// region k is the run of crossings following boundary circle k of the band.
struct FlypeMove {
    int region = -1;
    int active_crossing = -1;
    int source_twist = -1;
    int target_twist = -1;
    VertexSet flipped;
    std::array<int, 2> crossing_prev{};  // darts of the crossing facing away from the tangle
    std::array<int, 2> tangle_exit{};    // darts where the tangle meets the rest of the band
};

[[nodiscard]] nlohmann::json to_json(const FlypeMove& m);

/// Efficient flypes, one per (source, target) pair of twist regions in every
/// band of valency at least two, deduplicated by the resulting diagram.
[[nodiscard]] std::vector<FlypeMove> available_flypes(const LinkDiagram& d);
[[nodiscard]] std::vector<FlypeMove> available_flypes(const LinkDiagram& d, const Decomposition& dec);

/// Throws IllegalMove when the move does not describe a flype of `d`.
[[nodiscard]] LinkDiagram apply_flype(const LinkDiagram& d, const FlypeMove& m);

/// Cancel opposite crossings inside each band (flype next to each other, then
/// a Reidemeister II move) until every band is homogeneous.
[[nodiscard]] LinkDiagram normalize_twists(const LinkDiagram& d);

struct FlypeOrbit {
    int region = -1;
    std::vector<VertexSet> twist_regions;  // non-empty runs in band order
    VertexSet crossings;
};

[[nodiscard]] std::vector<FlypeOrbit> flype_orbits(const LinkDiagram& d);

struct FlypeClosure {
    std::vector<LinkDiagram> members;  // ordered by canonical code
    bool truncated = false;
};

inline constexpr std::size_t kDefaultFlypeBudget = 10000;

[[nodiscard]] FlypeClosure flype_closure_serial(const LinkDiagram& d, std::size_t budget = kDefaultFlypeBudget);
[[nodiscard]] FlypeClosure flype_closure_parallel(const LinkDiagram& d, std::size_t budget = kDefaultFlypeBudget);
[[nodiscard]] FlypeClosure flype_closure(const LinkDiagram& d, std::size_t budget = kDefaultFlypeBudget);

enum class Equivalence : std::uint8_t { kEquivalent, kNotEquivalent, kIndeterminate };
[[nodiscard]] std::string_view to_string(Equivalence e);

[[nodiscard]] Equivalence flype_equivalent(const LinkDiagram& a, const LinkDiagram& b,
                                           std::size_t budget = kDefaultFlypeBudget);

}  // namespace knot
