#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cstar {

/// Machine-readable reason attached to every precondition failure.
enum class ErrorCode {
  invalid_argument,
  non_finite,
  not_square,
  dimension_mismatch,
  not_self_adjoint,
  not_positive,
  not_projection,
  function_undefined,
  defect_too_large,
  gap_violation,
  rank_mismatch,
  delta_too_large,
  rank_collapse,
  infinite_weight,
  not_aps,
  no_index_within_truncation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Thrown when an operation's inputs violate its documented preconditions.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Thrown on malformed serialized input (bad JSON, wrong shape, wrong types).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace cstar
