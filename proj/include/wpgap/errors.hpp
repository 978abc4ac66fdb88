#pragma once
// Error taxonomy shared by the library and the CLI.  Every failure mode the
// CLI can hit maps to a distinct process exit code so scripts can branch on
// the class of failure without parsing text.

#include <stdexcept>
#include <string>

namespace wpgap {

enum class ErrorCode : int {
  ok = 0,
  usage = 1,           // CLI11 parse failure (bad flags)
  file_not_found = 2,  // input path does not exist / cannot be opened
  parse_error = 3,     // malformed table / CSV / JSON content
  precondition = 4,    // domain precondition violated (bad g, n, eps, arity...)
  quadrature = 5,      // adaptive quadrature failed to converge
  missing_volume = 6,  // exact mode asked for a (g,n) the table lacks
  invalid_nu = 7,      // trace certificate: R < 0, chosen nu too small
  internal = 10,       // invariant breakage; always a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  ErrorCode code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

// Short stable identifier for machine-readable error reports.
inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::usage: return "usage";
    case ErrorCode::file_not_found: return "file_not_found";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::quadrature: return "quadrature";
    case ErrorCode::missing_volume: return "missing_volume";
    case ErrorCode::invalid_nu: return "invalid_nu";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace wpgap
