#include "knotdecomp/errors.hpp"

namespace knot {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kMalformedCode: return "MalformedCode";
        case ErrorCode::kNonQuadrivalent: return "NonQuadrivalent";
        case ErrorCode::kNonPlanar: return "NonPlanar";
        case ErrorCode::kNonRealizable: return "NonRealizable";
        case ErrorCode::kNotComparable: return "NotComparable";
        case ErrorCode::kNotAdmissible: return "NotAdmissible";
        case ErrorCode::kDivisionCollapse: return "DivisionCollapse";
        case ErrorCode::kNotRational: return "NotRational";
        case ErrorCode::kIllegalMove: return "IllegalMove";
        case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
        case ErrorCode::kNotAKnot: return "NotAKnot";
        case ErrorCode::kNotAlternating: return "NotAlternating";
        case ErrorCode::kNotATree: return "NotATree";
        case ErrorCode::kInvalidDiagram: return "InvalidDiagram";
    }
    return "Unknown";
}

}  // namespace knot
