#pragma once

#include <stdexcept>
#include <string>

namespace hitmix {

enum class errc {
  bad_input,
  negative_entry,
  row_sum,
  not_irreducible,
  convergence_failure,
  empty_target,
  state_count_cap,
  parameter_out_of_range,
  entry_out_of_range,
  spec_violation,
  window_violation,
  not_decreasing,
  normalization_error,
  sets_overlap,
  length_mismatch,
  step_cap_exceeded,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace hitmix
