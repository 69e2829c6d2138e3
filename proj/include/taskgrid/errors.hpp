#pragma once

#include <stdexcept>
#include <string>

namespace taskgrid {

/// Stable machine-parsable error codes. The CLI prints them as
/// "error: <code>: <message>" on a single line and exits nonzero.
enum class ErrorCode {
  invalid_dfa,
  invalid_symbol,
  invalid_layout,
  alphabet_mismatch,
  episode_over,
  spawn_conflict,
  state_cap_exceeded,
  enumeration_cap_exceeded,
  rejection_limit,
  invalid_config,
  invalid_budget,
  manifest_mismatch,
  io_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace taskgrid
