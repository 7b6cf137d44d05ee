#pragma once

#include <cstddef>
#include <cstdint>

#include "scpcs/core.hpp"

namespace scpcs {

struct OracleResult {
  Cost optimum = 0;
  // Lexicographically least optimal selection.
  Solution witness;
  std::uint64_t num_optima = 0;
};

// Enumerates all 2^n selections, judging each with core::is_cover and
// core::evaluate only. Throws LimitError when n > max_n and InfeasibleError
// when no selection covers the universe. `threads` = 0 picks the hardware
// concurrency; the result does not depend on it.
OracleResult brute_force_optimum(const Instance& inst, std::size_t max_n = 20,
                                 unsigned threads = 0);

}  // namespace scpcs
