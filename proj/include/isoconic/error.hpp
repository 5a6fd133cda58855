#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isoconic {

enum class ErrorKind {
    invalid_argument,
    degenerate_direction,
    off_curve,
    no_branch,
    non_convergence,
    bracketing_failure,
    degenerate_triangle,
    unsupported_variant,
    parse,
    internal,
};

/// Stable lowercase tag for an error kind; used as the CLI error prefix.
std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. Every failure the library reports carries a kind
/// so callers (and the CLI) can branch on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace isoconic
