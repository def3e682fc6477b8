#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppnear {

/// Failure categories. Each validation failure named by a contract gets its
/// own code so callers (and the CLI) can tell them apart.
enum class Errc {
    invalid_argument,
    malformed_table,
    non_associative,
    missing_identity,
    missing_inverse,
    group_too_large,
    group_mismatch,
    invalid_element,
    invalid_state,
    not_zero_preserving,
    not_zero_symmetric,
    not_delaying,
    not_amnesiac,
    not_in_ker_alpha,
    no_property_x,
    not_subgroup,
    not_homomorphism,
    not_surjective,
    not_section,
    cycling_not_reached,
    size_guard,
    parse_error,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace ppnear
