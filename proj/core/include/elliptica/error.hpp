#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elliptica {

enum class ErrorKind {
    degenerate_generators,
    invalid_order,
    invalid_argument,
    degree_mismatch,
    abel_violation,
    overlapping_divisors,
    empty_divisor,
    indeterminate_point,
    not_degree_2,
    not_degree_3,
    reconstruction_failure,
    contour_too_close,
    non_integer_count,
    insufficient_sums,
    subdivision_failure,
    singular_cubic,
    singular_input,
    singular_point,
    point_off_curve,
    point_on_curve,
    no_preimage,
    numerical_failure,
    derivative_location_failure,
    collision_unresolved,
    halving_limit,
    unsupported_format,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every library failure is reported through this type. `operation` names the
// public function that detected the violated precondition.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string operation, const std::string &message);

    ErrorKind kind() const noexcept { return m_kind; }
    const std::string &operation() const noexcept { return m_operation; }

private:
    ErrorKind m_kind;
    std::string m_operation;
};

} // namespace elliptica
