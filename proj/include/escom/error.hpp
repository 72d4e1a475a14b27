#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace escom {

enum class Errc {
  zero_normal,
  bad_box,
  bad_radius,
  zero_subgradient,
  dimension_mismatch,
  non_finite,
  empty_chain,
  bad_step_scale,
  bad_moduli,
  bad_relaxation,
  bad_schedule,
  bad_stop_rule,
  infeasible_start,
  bad_shape,
  bad_config,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message is a single line suitable for CLI output.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace escom
