#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace epigauss {

enum class ErrorKind {
  invalid_argument,
  dimension_mismatch,
  unsupported_dimension,
  not_differentiable_here,
  degenerate_input,
  unsorted_input,
  all_infinite,
  not_even,
  lower_dimensional,
  nonpositive_weight,
  divergent_tail,
  condition_violated,
  bracket_failure,
  not_converged,
  parse_error,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind; the
// message is prefixed with the kind name so CLI output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace epigauss
