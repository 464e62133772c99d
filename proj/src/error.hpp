#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ovp {

enum class ErrorCode {
  Parse,          // malformed expression or config text
  Domain,         // argument outside the mathematical domain
  Invalid,        // inconsistent arguments or object state
  NoConvergence,  // iterative solver failed to reach tolerance
  Io,             // file read/write failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string msg, long offset = -1)
      : std::runtime_error(std::move(msg)), code_(code), offset_(offset) {}

  ErrorCode code() const noexcept { return code_; }
  // byte offset into the offending source text; -1 when not applicable
  long offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  long offset_;
};

}  // namespace ovp
