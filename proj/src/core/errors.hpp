#pragma once

#include <stdexcept>
#include <string>

namespace levykit {

// Error taxonomy shared with the C API status codes.
enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  parse,
  precondition,
  not_skew_gaussian,
  not_skew_jump,
  io,
  unsupported,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace levykit
