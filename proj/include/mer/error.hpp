#pragma once

#include <stdexcept>
#include <string>

namespace mer {

enum class ErrorCode {
  InvalidInput,         // empty set, non-finite or out-of-range coordinates
  Parse,                // malformed CSV
  UndefinedOrder,       // angular comparison against a point at the origin
  DegenerateFrame,      // frame from coincident points
  DegenerateRectangle,  // P3 on the base line with degenerate output disallowed
  InvalidSupports,      // P4/P5 outside the slab
  CollinearInput,       // general-position mode met three collinear points
  InvalidT,             // t < 0 or t >= n/2
  Infeasible,           // n - t < 3
  SizeGuard,            // brute-force oracle asked for too many points
  InvalidParameter,     // sampling parameters out of range
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::UndefinedOrder: return "UndefinedOrder";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::DegenerateRectangle: return "DegenerateRectangle";
    case ErrorCode::InvalidSupports: return "InvalidSupports";
    case ErrorCode::CollinearInput: return "CollinearInput";
    case ErrorCode::InvalidT: return "InvalidT";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mer
