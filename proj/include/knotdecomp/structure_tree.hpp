#pragma once

// Canonical and essential structure trees: one vertex per region, one edge
// per circle. Tangle trees carry an open edge at the vertex meeting the ports.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "knotdecomp/decomposition.hpp"

namespace knot {

enum class TreeKind : std::uint8_t { kCanonical, kEssential };

struct TreeLabel {
    enum class Kind : std::uint8_t { kWeight, kRational, kJewel };
    Kind kind = Kind::kWeight;
    Fraction value;  // integer weights are n/1

    [[nodiscard]] static TreeLabel weight(long long a) { return {Kind::kWeight, Fraction::of(a, 1)}; }
    [[nodiscard]] static TreeLabel jewel() { return {Kind::kJewel, Fraction{0, 1}}; }
    /// Integer values fall back to a weight label.
    [[nodiscard]] static TreeLabel rational(const Fraction& f);

    friend bool operator==(const TreeLabel&, const TreeLabel&) = default;
};

/// "a=3", "J" or "7/3".
[[nodiscard]] std::string to_string(const TreeLabel& l);

/// Neighbour id used for the open edge in cyclic orders.
inline constexpr int kOpenNeighbour = -1;

struct TreeVertex {
    TreeLabel label;
    std::vector<int> regions;     // decomposition regions merged into this vertex
    int crossing_count = 0;       // auxiliary, not part of the label
    bool is_tbd = false;
    /// Neighbours in band order for TBD vertices (kOpenNeighbour for the open
    /// edge); empty otherwise.
    std::vector<int> cyclic;
};

struct StructureTree {
    TreeKind kind = TreeKind::kCanonical;
    std::vector<TreeVertex> vertices;
    std::vector<std::array<int, 2>> edges;
    std::vector<int> edge_circle;  // family index of each edge
    int open_vertex = -1;          // vertex carrying the open edge, -1 for links

    [[nodiscard]] int size() const { return static_cast<int>(vertices.size()); }
    [[nodiscard]] std::vector<std::vector<int>> adjacency() const;
};

[[nodiscard]] StructureTree canonical_tree(const Decomposition& dec);
[[nodiscard]] StructureTree canonical_tree(const PlanarMap& d);
[[nodiscard]] StructureTree canonical_tree(const Tangle& t);

[[nodiscard]] StructureTree essential_tree(const Decomposition& dec);
[[nodiscard]] StructureTree essential_tree(const PlanarMap& d);
[[nodiscard]] StructureTree essential_tree(const Tangle& t);

/// Strict comparison also matches the cyclic order at TBD vertices, each up
/// to rotation and reflection.
enum class TreeMatch : std::uint8_t { kLoose, kStrict };

/// Label- and adjacency-preserving bijection (vertex i of a to result[i] of b).
[[nodiscard]] std::optional<std::vector<int>> tree_isomorphic(const StructureTree& a, const StructureTree& b,
                                                              TreeMatch match = TreeMatch::kLoose);

struct TreeAutomorphism {
    std::vector<int> vertex_map;
    int order = 1;
};

/// Non-identity automorphisms with phi^q = id, identity excluded. Stops after
/// `limit` results.
[[nodiscard]] std::vector<TreeAutomorphism> automorphisms_of_order(const StructureTree& t, int q,
                                                                   TreeMatch match = TreeMatch::kLoose,
                                                                   std::size_t limit = 100000);

[[nodiscard]] TreeAutomorphism identity_automorphism(const StructureTree& t);

struct FixedSubtree {
    std::vector<int> vertices;
    std::vector<int> edges;     // edges with both ends fixed
    bool edge_flipped = false;  // some edge has its ends swapped
    int flipped_edge = -1;
};

[[nodiscard]] FixedSubtree fixed_subtree(const StructureTree& t, const TreeAutomorphism& phi);

[[nodiscard]] std::string to_dot(const StructureTree& t, const std::string& name = "tree");
[[nodiscard]] nlohmann::json to_json(const StructureTree& t);

}  // namespace knot
