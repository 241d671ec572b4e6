#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumfree {

// Stable numeric values; the C API returns these directly.
enum class ErrorCode : int {
  ok = 0,
  composite_modulus = 1,
  dimension_too_large = 2,
  group_too_large = 3,
  space_mismatch = 4,
  zero_dilation = 5,
  empty_input = 6,
  hypothesis_violated = 7,
  wrong_residue_class = 8,
  bad_prime = 9,
  bad_p = 10,
  zero_direction = 11,
  not_subspace = 12,
  unsupported_prime = 13,
  not_sum_free = 14,
  wrong_space = 15,
  space_too_large = 16,
  exhaustive_too_large = 17,
  invalid_argument = 18,
  parse_error = 19,
  internal = 20,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace sumfree
