#pragma once

#include <stdexcept>
#include <string>

namespace swell {

enum class ErrorCode {
    invalid_config,
    empty_interior,
    disconnected_interior,
    thin_feature,
    log_at_origin,
    overflow,
    dimension_mismatch,
    not_converged,
    indefinite_breakdown,
    breakdown,
    newton_stalled,
    newton_max_iter,
    linear_failure,
    continuation_failed,
    grid_mismatch,
    center_outside_domain,
    empty_reflection_region,
    too_short,
    io_failure,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

// Stalled continuation keeps the last parameter pair that produced a converged solve.
class ContinuationError : public Error {
public:
    ContinuationError(const std::string& what, double last_sigma, double last_epsilon)
        : Error(ErrorCode::continuation_failed, what),
          last_sigma_(last_sigma), last_epsilon_(last_epsilon) {}

    double last_sigma() const noexcept { return last_sigma_; }
    double last_epsilon() const noexcept { return last_epsilon_; }

private:
    double last_sigma_;
    double last_epsilon_;
};

} // namespace swell
