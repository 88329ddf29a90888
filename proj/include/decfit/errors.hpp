// Copyright (c) 2026 The decfit Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace decfit {

/// Failure categories raised by validation, fitting, and parsing.
enum class ErrorCode {
  non_monotone,             ///< decile values not strictly increasing
  negative_value,           ///< decile value negative or not finite
  bad_lower_bound,          ///< first decile value incompatible with the series kind
  wrong_arity,              ///< series does not carry exactly 10 values
  wrong_kind,               ///< construction applied to the wrong series kind
  rank_deficient,           ///< polynomial system has no unique solution
  too_few_points,           ///< not enough points for the requested fit
  degenerate_observations,  ///< observed values carry no variance
  length_mismatch,          ///< paired sequences differ in length
  parse_error,              ///< malformed CSV content
  empty_dataset,            ///< dataset contains no series
};

/// Human-readable tag for an ErrorCode, e.g. "NON_MONOTONE".
const char* error_code_name(ErrorCode code) noexcept;

/// Domain exception carrying an ErrorCode and, for parser errors, a
/// 1-based source line number (0 when no line applies).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0)
      : std::runtime_error(format(code, message, line)),
        code_(code),
        line_(line),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

  /// The bare description, without the code/line prefix of what().
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(ErrorCode code, const std::string& message,
                            std::size_t line) {
    std::string out = error_code_name(code);
    if (line != 0) {
      out += " at line " + std::to_string(line);
    }
    out += ": " + message;
    return out;
  }

  ErrorCode code_;
  std::size_t line_;
  std::string message_;
};

inline const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::non_monotone: return "NON_MONOTONE";
    case ErrorCode::negative_value: return "NEGATIVE_VALUE";
    case ErrorCode::bad_lower_bound: return "BAD_LOWER_BOUND";
    case ErrorCode::wrong_arity: return "WRONG_ARITY";
    case ErrorCode::wrong_kind: return "WRONG_KIND";
    case ErrorCode::rank_deficient: return "RANK_DEFICIENT";
    case ErrorCode::too_few_points: return "TOO_FEW_POINTS";
    case ErrorCode::degenerate_observations: return "DEGENERATE_OBSERVATIONS";
    case ErrorCode::length_mismatch: return "LENGTH_MISMATCH";
    case ErrorCode::parse_error: return "PARSE_ERROR";
    case ErrorCode::empty_dataset: return "EMPTY_DATASET";
  }
  return "UNKNOWN";
}

}  // namespace decfit
