#include "tflp/errors.hpp"

namespace tflp {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::domain: return "domain";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::tolerance: return "tolerance";
    case ErrorKind::length: return "length";
    case ErrorKind::alignment: return "alignment";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace tflp
