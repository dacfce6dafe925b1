#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rrv {

// Failure kinds surfaced by the library. Preconditions violated by callers and
// internal invariant breaks both arrive as rrv::error; the kind tells them apart.
enum class errc {
  degree_out_of_range,
  degree_mismatch,
  letter_out_of_range,
  index_out_of_range,
  invalid_field,
  singular_matrix,
  enumeration_budget_exceeded,
  dimension_mismatch,
  internal_invariant_violation,
  not_a_member,
  flags_not_transverse,
  resolution_mismatch,
  insufficient_samples,
  non_integral_coefficients,
  not_admissible,
  out_of_bounds,
  not_found,
  singular_fiber,
  usage_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::degree_out_of_range: return "DegreeOutOfRange";
    case errc::degree_mismatch: return "DegreeMismatch";
    case errc::letter_out_of_range: return "LetterOutOfRange";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::invalid_field: return "InvalidField";
    case errc::singular_matrix: return "SingularMatrix";
    case errc::enumeration_budget_exceeded: return "EnumerationBudgetExceeded";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::internal_invariant_violation: return "InternalInvariantViolation";
    case errc::not_a_member: return "NotAMember";
    case errc::flags_not_transverse: return "FlagsNotTransverse";
    case errc::resolution_mismatch: return "ResolutionMismatch";
    case errc::insufficient_samples: return "InsufficientSamples";
    case errc::non_integral_coefficients: return "NonIntegralCoefficients";
    case errc::not_admissible: return "NotAdmissible";
    case errc::out_of_bounds: return "OutOfBounds";
    case errc::not_found: return "NotFound";
    case errc::singular_fiber: return "SingularFiber";
    case errc::usage_error: return "UsageError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

// Default cap on objects materialized by a single enumeration call.
inline constexpr std::uint64_t default_budget = 10'000'000;

}  // namespace rrv
