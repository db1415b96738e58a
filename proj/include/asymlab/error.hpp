#pragma once

#include <stdexcept>
#include <string>

namespace asymlab {

// Every failure the library can report. The numeric values are shared with
// the C API (asymlab.h) so they must not be reordered.
enum class ErrorCode : int {
    ok = 0,
    invalid_argument = 1,
    convexity_violation = 2,
    order_too_low = 3,
    no_convergence = 4,
    instability = 5,
    domain_too_small = 6,
    small_time_blowup = 7,
    multivalued_region = 8,
    no_catastrophe = 9,
    states_collapsed = 10,
    no_collision = 11,
    degenerate_merge = 12,
    inside_cusp = 13,
    window_violation = 14,
    not_normalized = 15,
    b_non_positive = 16,
    order_too_high = 17,
    degenerate_jump = 18,
    degenerate_fit = 19,
    parse_error = 20,
    validation_error = 21,
    io_error = 22,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace asymlab
