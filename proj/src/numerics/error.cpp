#include "epigauss/numerics/error.hpp"

namespace epigauss {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::unsupported_dimension: return "unsupported_dimension";
    case ErrorKind::not_differentiable_here: return "not_differentiable_here";
    case ErrorKind::degenerate_input: return "degenerate_input";
    case ErrorKind::unsorted_input: return "unsorted_input";
    case ErrorKind::all_infinite: return "all_infinite";
    case ErrorKind::not_even: return "not_even";
    case ErrorKind::lower_dimensional: return "lower_dimensional";
    case ErrorKind::nonpositive_weight: return "nonpositive_weight";
    case ErrorKind::divergent_tail: return "divergent_tail";
    case ErrorKind::condition_violated: return "condition_violated";
    case ErrorKind::bracket_failure: return "bracket_failure";
    case ErrorKind::not_converged: return "not_converged";
    case ErrorKind::parse_error: return "parse_error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace epigauss
