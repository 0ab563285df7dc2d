#pragma once

#include <stdexcept>
#include <string>

namespace seco {

enum class ErrorCode {
  invalid_input = 1,
  invalid_config,
  singular_mass,
  infeasible_reference,
  degenerate_dynamics,
  undefined_geometry,
  integration_failure,
  not_converged,
  io_error,
  verify_failed,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace seco
