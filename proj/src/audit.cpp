#include "seco/audit.hpp"

#include "seco/error.hpp"

#include <algorithm>
#include <mutex>

namespace seco {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::invalid_config: return "invalid-config";
    case ErrorCode::singular_mass: return "singular-mass";
    case ErrorCode::infeasible_reference: return "infeasible-reference";
    case ErrorCode::degenerate_dynamics: return "degenerate-dynamics";
    case ErrorCode::undefined_geometry: return "undefined-geometry";
    case ErrorCode::integration_failure: return "integration-failure";
    case ErrorCode::not_converged: return "not-converged";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::verify_failed: return "verify-failed";
  }
  return "unknown";
}

namespace audit {

namespace {
std::mutex mu;
Counters counters;
}  // namespace

void reset() {
  std::lock_guard<std::mutex> lock(mu);
  counters = Counters{};
}

Counters snapshot() {
  std::lock_guard<std::mutex> lock(mu);
  return counters;
}

void note_factorization() {
  std::lock_guard<std::mutex> lock(mu);
  ++counters.factorizations;
}

void note_matrix(long rows, long cols) {
  std::lock_guard<std::mutex> lock(mu);
  counters.max_rows = std::max(counters.max_rows, rows);
  counters.max_cols = std::max(counters.max_cols, cols);
  if (rows > 15 || cols > 15) ++counters.large_matrices;
}

}  // namespace audit
}  // namespace seco
