#include "elliptica/error.hpp"

namespace elliptica {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::degenerate_generators: return "degenerate-generators";
    case ErrorKind::invalid_order: return "invalid-order";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::degree_mismatch: return "degree-mismatch";
    case ErrorKind::abel_violation: return "abel-violation";
    case ErrorKind::overlapping_divisors: return "overlapping-divisors";
    case ErrorKind::empty_divisor: return "empty-divisor";
    case ErrorKind::indeterminate_point: return "indeterminate-point";
    case ErrorKind::not_degree_2: return "not-degree-2";
    case ErrorKind::not_degree_3: return "not-degree-3";
    case ErrorKind::reconstruction_failure: return "reconstruction-failure";
    case ErrorKind::contour_too_close: return "contour-too-close";
    case ErrorKind::non_integer_count: return "non-integer-count";
    case ErrorKind::insufficient_sums: return "insufficient-sums";
    case ErrorKind::subdivision_failure: return "subdivision-failure";
    case ErrorKind::singular_cubic: return "singular-cubic";
    case ErrorKind::singular_input: return "singular-input";
    case ErrorKind::singular_point: return "singular-point";
    case ErrorKind::point_off_curve: return "point-off-curve";
    case ErrorKind::point_on_curve: return "point-on-curve";
    case ErrorKind::no_preimage: return "no-preimage";
    case ErrorKind::numerical_failure: return "numerical-failure";
    case ErrorKind::derivative_location_failure: return "derivative-location-failure";
    case ErrorKind::collision_unresolved: return "collision-unresolved";
    case ErrorKind::halving_limit: return "halving-limit";
    case ErrorKind::unsupported_format: return "unsupported-format";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, std::string operation, const std::string &message)
    : std::runtime_error(operation + ": " + message), m_kind(kind), m_operation(std::move(operation))
{
}

} // namespace elliptica
