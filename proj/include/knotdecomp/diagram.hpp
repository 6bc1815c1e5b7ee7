#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "knotdecomp/planar_map.hpp"

namespace knot {

/// A link projection: a box-free planar map with crossing labels and an
/// orientation on every strand.
using LinkDiagram = PlanarMap;

/// Dart positions in the local crossing frame, matching slots 0..3.
enum class Position : std::uint8_t { SW = 0, SE = 1, NE = 2, NW = 3 };
[[nodiscard]] std::string_view position_name(int slot);

/// Reads `X[a,b,c,d]` records separated by `;`, `,` or whitespace. An outer
/// `PD[...]` and the bracket-only form `[[a,b,c,d],...]` are accepted as well.
/// The first entry of each record is the incoming under-strand; entries are
/// listed counterclockwise.
[[nodiscard]] LinkDiagram parse_pd(std::string_view text);

/// Reads a signed Gauss code of a knot, tokens `O<i><sign>` / `U<i><sign>`.
[[nodiscard]] LinkDiagram parse_gauss(std::string_view text);

/// Either format, chosen by the leading token.
[[nodiscard]] LinkDiagram parse_diagram(std::string_view text);

/// PD records with edges numbered consecutively along each component.
[[nodiscard]] std::vector<std::array<int, 4>> to_pd(const LinkDiagram& d);
[[nodiscard]] std::string to_pd_text(const LinkDiagram& d);

/// Link components traced along strands (free loops count as components).
[[nodiscard]] int component_count(const LinkDiagram& d);
/// Component id for every dart of a box-free map.
[[nodiscard]] std::vector<int> strand_component_of_dart(const PlanarMap& d, int* count = nullptr);

/// +1 for a right-handed crossing, -1 otherwise. Requires orientation.
[[nodiscard]] int crossing_sign(const LinkDiagram& d, int v);
[[nodiscard]] int writhe(const LinkDiagram& d);

[[nodiscard]] bool is_alternating(const LinkDiagram& d);
[[nodiscard]] bool is_reduced(const LinkDiagram& d);
[[nodiscard]] bool is_prime(const LinkDiagram& d);
[[nodiscard]] bool is_connected(const LinkDiagram& d);

/// The 0-crossing unknot projection.
[[nodiscard]] LinkDiagram unknot_diagram();

/// Mirror image: every crossing changes over/under.
[[nodiscard]] LinkDiagram mirror(const LinkDiagram& d);

enum class ConnectionKind : std::uint8_t { H, V, X };
[[nodiscard]] std::string_view to_string(ConnectionKind k);

struct ConnectionPath {
    ConnectionKind kind = ConnectionKind::H;
    /// Boundary darts in frame order NW, NE, SE, SW (inside darts).
    std::array<int, 4> ports{};
    /// True where the strand enters the disk at that port.
    std::array<bool, 4> entry{};
};

/// Connection path of the disk `side` of a 4-point cut. The frame puts NW at
/// the boundary dart `nw` (or the smallest boundary dart when -1); the other
/// ports follow clockwise around the disk.
[[nodiscard]] ConnectionPath connection_path(const LinkDiagram& d, const VertexSet& side,
                                             int nw = -1);

/// JSON export: crossings, edges, rotation, orientation.
[[nodiscard]] nlohmann::json to_json(const LinkDiagram& d);
[[nodiscard]] LinkDiagram diagram_from_json(const nlohmann::json& j);

}  // namespace knot
