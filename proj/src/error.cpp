#include "isoconic/error.hpp"

namespace isoconic {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid-argument";
        case ErrorKind::degenerate_direction: return "degenerate-direction";
        case ErrorKind::off_curve: return "off-curve";
        case ErrorKind::no_branch: return "no-branch";
        case ErrorKind::non_convergence: return "non-convergence";
        case ErrorKind::bracketing_failure: return "bracketing-failure";
        case ErrorKind::degenerate_triangle: return "degenerate-triangle";
        case ErrorKind::unsupported_variant: return "unsupported-variant";
        case ErrorKind::parse: return "parse";
        case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

}  // namespace isoconic
