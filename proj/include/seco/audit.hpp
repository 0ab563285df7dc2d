#pragma once

#include <cstdint>

namespace seco::audit {

// Counters for dense work: any factorization, general solve, or matrix larger than
// 15x15. The production solve path must leave them untouched.
struct Counters {
  std::uint64_t factorizations = 0;
  std::uint64_t large_matrices = 0;
  long max_rows = 0;
  long max_cols = 0;
};

void reset();
Counters snapshot();

void note_factorization();
void note_matrix(long rows, long cols);

}  // namespace seco::audit
