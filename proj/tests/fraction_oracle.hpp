#pragma once

#include <optional>
#include <utility>

#include "knotdecomp/tangle.hpp"

namespace test_support {

/// Fraction of a tangle by repeatedly peeling a crossing that touches two
/// adjacent ports. Returns a projective pair (p, q) for p/q, or nothing when
/// no sequence of peels empties the tangle.
std::optional<std::pair<long long, long long>> peel_fraction(const knot::Tangle& t);

}  // namespace test_support
