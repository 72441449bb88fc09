#include "swell/error.hpp"

namespace swell {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_config:         return "InvalidConfig";
    case ErrorCode::empty_interior:         return "EmptyInterior";
    case ErrorCode::disconnected_interior:  return "DisconnectedInterior";
    case ErrorCode::thin_feature:           return "ThinFeature";
    case ErrorCode::log_at_origin:          return "LogAtOrigin";
    case ErrorCode::overflow:               return "Overflow";
    case ErrorCode::dimension_mismatch:     return "DimensionMismatch";
    case ErrorCode::not_converged:          return "NotConverged";
    case ErrorCode::indefinite_breakdown:   return "IndefiniteBreakdown";
    case ErrorCode::breakdown:              return "Breakdown";
    case ErrorCode::newton_stalled:         return "NewtonStalled";
    case ErrorCode::newton_max_iter:        return "NewtonMaxIter";
    case ErrorCode::linear_failure:         return "LinearFailure";
    case ErrorCode::continuation_failed:    return "ContinuationFailed";
    case ErrorCode::grid_mismatch:          return "GridMismatch";
    case ErrorCode::center_outside_domain:  return "CenterOutsideDomain";
    case ErrorCode::empty_reflection_region:return "EmptyReflectionRegion";
    case ErrorCode::too_short:              return "TooShort";
    case ErrorCode::io_failure:             return "IoFailure";
    }
    return "UnknownError";
}

} // namespace swell
