#pragma once

#include <stdexcept>
#include <string>

namespace tflp {

enum class ErrorKind {
  parameter,   // argument outside the documented range
  domain,      // argument outside the function's domain (z <= 0, pole, ...)
  overflow,
  tolerance,   // numerical tolerance could not be met (quadrature, truncation, grid width)
  length,      // array sizes inconsistent with the request
  alignment,   // lag or breakpoint not on the grid
  io
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace tflp
