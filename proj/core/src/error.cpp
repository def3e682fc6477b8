#include "ppnear/error.hpp"

namespace ppnear {

std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::malformed_table: return "malformed_table";
    case Errc::non_associative: return "non_associative";
    case Errc::missing_identity: return "missing_identity";
    case Errc::missing_inverse: return "missing_inverse";
    case Errc::group_too_large: return "group_too_large";
    case Errc::group_mismatch: return "group_mismatch";
    case Errc::invalid_element: return "invalid_element";
    case Errc::invalid_state: return "invalid_state";
    case Errc::not_zero_preserving: return "not_zero_preserving";
    case Errc::not_zero_symmetric: return "not_zero_symmetric";
    case Errc::not_delaying: return "not_delaying";
    case Errc::not_amnesiac: return "not_amnesiac";
    case Errc::not_in_ker_alpha: return "not_in_ker_alpha";
    case Errc::no_property_x: return "no_property_x";
    case Errc::not_subgroup: return "not_subgroup";
    case Errc::not_homomorphism: return "not_homomorphism";
    case Errc::not_surjective: return "not_surjective";
    case Errc::not_section: return "not_section";
    case Errc::cycling_not_reached: return "cycling_not_reached";
    case Errc::size_guard: return "size_guard";
    case Errc::parse_error: return "parse_error";
    }
    return "unknown";
}

} // namespace ppnear
