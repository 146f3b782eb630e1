#include "cstar/error.hpp"

namespace cstar {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::not_square: return "not_square";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::not_self_adjoint: return "not_self_adjoint";
    case ErrorCode::not_positive: return "not_positive";
    case ErrorCode::not_projection: return "not_projection";
    case ErrorCode::function_undefined: return "function_undefined";
    case ErrorCode::defect_too_large: return "defect_too_large";
    case ErrorCode::gap_violation: return "gap_violation";
    case ErrorCode::rank_mismatch: return "rank_mismatch";
    case ErrorCode::delta_too_large: return "delta_too_large";
    case ErrorCode::rank_collapse: return "rank_collapse";
    case ErrorCode::infinite_weight: return "infinite_weight";
    case ErrorCode::not_aps: return "not_aps";
    case ErrorCode::no_index_within_truncation: return "no_index_within_truncation";
  }
  return "unknown";
}

PreconditionError::PreconditionError(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

void fail(ErrorCode code, const std::string& detail) {
  throw PreconditionError(code, detail);
}

}  // namespace cstar
