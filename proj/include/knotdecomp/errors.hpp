#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace knot {

enum class ErrorCode {
    kMalformedCode,
    kNonQuadrivalent,
    kNonPlanar,
    kNonRealizable,
    kNotComparable,
    kNotAdmissible,
    kDivisionCollapse,
    kNotRational,
    kIllegalMove,
    kBudgetExceeded,
    kNotAKnot,
    kNotAlternating,
    kNotATree,
    kInvalidDiagram,
};

[[nodiscard]] std::string_view to_string(ErrorCode code);

/// Domain error raised by every module; the CLI maps it to exit status 1.
class KnotError : public std::runtime_error {
public:
    KnotError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace knot
