#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zclass {

enum class ErrorCode {
  field_mismatch,
  division_by_zero,
  not_prime,
  not_enumerable,
  dimension_mismatch,
  not_invertible,
  lower_triangular_position,
  too_large,
  unsupported_dimension,
  not_unipotent,
  insufficient_eigenvalues,
  parse_error,
  invalid_argument,
  internal_error,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zclass
