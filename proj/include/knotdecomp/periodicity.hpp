#pragma once

// Rotational symmetries of projections and q-periodicity of alternating knots.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "knotdecomp/diagram.hpp"
#include "knotdecomp/flype.hpp"
#include "knotdecomp/structure_tree.hpp"

namespace knot {

/// A rotation of the projection sphere realized as a map automorphism that
/// moves every crossing and every edge.
struct ProjectionSymmetry {
    std::vector<int> dart_map;
    int order = 1;
    std::vector<int> fixed_faces;     // face ids (see PlanarMap::face_of_dart), two for a free rotation
    bool strict = true;               // not a proper power of another symmetry
    bool preserves_orientation = true;
    [[nodiscard]] std::vector<int> crossing_map() const { return vertex_permutation(dart_map); }
};

[[nodiscard]] nlohmann::json to_json(const ProjectionSymmetry& s);

/// Every non-identity free symmetry, ordered by order then dart map.
[[nodiscard]] std::vector<ProjectionSymmetry> projection_symmetries(const LinkDiagram& d);

/// A strict free symmetry of order exactly q.
[[nodiscard]] std::optional<ProjectionSymmetry> is_q_periodic_projection(const LinkDiagram& d, int q);

/// Tree automorphism induced by a symmetry on the essential structure tree
/// of `d` (the tree must come from `essential_tree(d)`).
[[nodiscard]] TreeAutomorphism induced_tree_automorphism(const LinkDiagram& d, const StructureTree& tree,
                                                         const ProjectionSymmetry& s);

// Murasugi atoms ---------------------------------------------------------

struct AtomInfo {
    std::string name;
    bool is_rational = false;
    bool is_torus2q = false;
    std::vector<int> periods;  // known periods; empty when unknown
};

struct AtomTree {
    std::vector<AtomInfo> vertices;
    std::vector<std::array<int, 2>> edges;
};

[[nodiscard]] AtomTree atom_tree_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json to_json(const AtomTree& t);

/// Period facts for a few named atoms; "m" or "mirror " prefixes are ignored.
[[nodiscard]] std::optional<std::vector<int>> known_atom_periods(std::string_view name);

/// False only when the facts rule out period q.
[[nodiscard]] bool atom_admits_period(const AtomInfo& a, int q);

/// Vertices fixed by every label-preserving automorphism psi with psi^q = id.
/// Throws NotATree.
[[nodiscard]] std::vector<int> atom_lemma(const AtomTree& t, int q);

// Reports ----------------------------------------------------------------

enum class Obstruction : std::uint8_t {
    kCrossingCount,
    kRationalKnot,
    kNoTreeAutomorphism,
    kEdgeFixed,
    kParityTBD,
    kAtomLemma,
    kClosureExhausted,
};
[[nodiscard]] std::string_view to_string(Obstruction o);

enum class Verdict : std::uint8_t { kVisible, kObstructed, kInconclusive };
[[nodiscard]] std::string_view to_string(Verdict v);

struct PeriodicWitness {
    LinkDiagram diagram;
    ProjectionSymmetry symmetry;
};

struct PeriodicityReport {
    int q = 0;
    Verdict verdict = Verdict::kInconclusive;
    std::vector<Obstruction> reasons;
    std::vector<int> forced_atoms;          // when an atom tree was supplied
    std::optional<PeriodicWitness> witness;
    bool budget_exceeded = false;
    bool q2_not_decided = false;
    std::size_t searched = 0;               // closure members examined
};

[[nodiscard]] nlohmann::json to_json(const PeriodicityReport& r);

/// Checks that need no search. Throws NotAKnot / NotAlternating.
[[nodiscard]] PeriodicityReport obstruction_report(const LinkDiagram& d, int q,
                                                   const std::optional<AtomTree>& atoms = std::nullopt);

struct PeriodicSearch {
    std::optional<PeriodicWitness> witness;
    bool truncated = false;
    std::size_t searched = 0;
};

/// First strictly q-symmetric member of the flype closure in canonical order.
[[nodiscard]] PeriodicSearch find_periodic_projection_serial(const LinkDiagram& d, int q,
                                                             std::size_t budget = kDefaultFlypeBudget);
[[nodiscard]] PeriodicSearch find_periodic_projection_parallel(const LinkDiagram& d, int q,
                                                               std::size_t budget = kDefaultFlypeBudget);
[[nodiscard]] PeriodicSearch find_periodic_projection(const LinkDiagram& d, int q,
                                                      std::size_t budget = kDefaultFlypeBudget);

/// Obstructions first, then the closure search.
[[nodiscard]] PeriodicityReport periodicity(const LinkDiagram& d, int q,
                                            const std::optional<AtomTree>& atoms = std::nullopt,
                                            std::size_t budget = kDefaultFlypeBudget);

// Seifert circles --------------------------------------------------------

struct SeifertReport {
    int circle_count = 0;
    int genus = 0;
    std::vector<int> circle_of_dart;               // in-darts only, -1 elsewhere
    std::vector<std::vector<int>> circle_orbits;   // under the symmetry, when given
    std::vector<std::vector<int>> crossing_orbits;
};

[[nodiscard]] SeifertReport seifert_report(const LinkDiagram& d,
                                           const std::optional<ProjectionSymmetry>& s = std::nullopt);
[[nodiscard]] nlohmann::json to_json(const SeifertReport& r);

}  // namespace knot
