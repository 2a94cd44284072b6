#pragma once

#include <stdexcept>
#include <string>

namespace mca {

enum class errc {
  all_zero_matrix,
  non_finite,
  dimension_mismatch,
  pole_evaluation,
  separation_violated,
  convergence_failure,
  degenerate_graph,
  rank_too_small,
  component_count_too_large,
  index_out_of_range,
  too_few_points,
  parse_error,
  invalid_flag,
  invalid_argument,
};

const char* errc_name(errc code) noexcept;

/// Library-wide exception type; carries a stable error code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace mca
