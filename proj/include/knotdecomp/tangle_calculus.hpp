#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "knotdecomp/tangle.hpp"

namespace knot {

/// Value r/s in lowest terms with the sign carried by s. Zero is 0/1 and
/// infinity is 1/0.
struct Fraction {
    long long r = 0;
    long long s = 1;

    [[nodiscard]] static Fraction infinity() { return {1, 0}; }
    /// Normalizes any projective pair (p, q) != (0, 0) to the value p/q.
    [[nodiscard]] static Fraction of(long long p, long long q);
    [[nodiscard]] bool is_infinite() const { return s == 0; }

    friend bool operator==(const Fraction&, const Fraction&) = default;
};

[[nodiscard]] bool fractions_equal(const Fraction& a, const Fraction& b);

/// Terms [a0, ..., am]; an empty list stands for the value infinity.
using ContinuedFraction = std::vector<long long>;

/// a0 + 1/(a1 + 1/(... + 1/am)). Throws DivisionCollapse when a partial
/// denominator vanishes.
[[nodiscard]] Fraction eval_cf(const ContinuedFraction& cf);

/// Expansion with all nonzero terms of the sign of f (0 gives [0]).
[[nodiscard]] ContinuedFraction expand_homogeneous(const Fraction& f);

[[nodiscard]] bool is_homogeneous(const ContinuedFraction& cf);
[[nodiscard]] bool is_strictly_homogeneous(const ContinuedFraction& cf);

/// Band weights b_i = (-1)^i a_i.
[[nodiscard]] std::vector<long long> band_weights(const ContinuedFraction& cf);

/// Text forms: `inf`, `r/s`, an integer, or `[a0,a1,...]`.
[[nodiscard]] std::string to_string(const Fraction& f);
[[nodiscard]] std::string cf_to_string(const ContinuedFraction& cf);
[[nodiscard]] Fraction parse_fraction(std::string_view text);
[[nodiscard]] ContinuedFraction parse_cf(std::string_view text);

/// Cardan tangle T[a0, ..., am] = [a0] + 1/T[a1, ..., am], with the first
/// band horizontal. The empty list gives [inf].
[[nodiscard]] Tangle cardan_to_diagram(const ContinuedFraction& cf);

}  // namespace knot
