#include "qrw/errors.hpp"

namespace qrw {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config: return "config";
    case ErrorKind::contract: return "contract";
    case ErrorKind::convention: return "convention";
    case ErrorKind::domain: return "domain";
    case ErrorKind::integration: return "integration";
    case ErrorKind::measurement_impossible: return "measurement_impossible";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::resolution: return "resolution";
  }
  return "unknown";
}

}  // namespace qrw
