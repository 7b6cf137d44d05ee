#pragma once

#include <chrono>
#include <cstdint>
#include <random>

#include "scpcs/core.hpp"

namespace scpcs {

struct GraspConfig {
  std::uint64_t iterations = 100;
  // 0 = pure greedy, 1 = any candidate that covers something.
  double rcl_alpha = 0.1;
  std::uint64_t seed = 1;
  std::chrono::duration<double> time_limit{3600.0};
};

struct GraspResult {
  Solution best;
  Cost total = 0;
  // 0-based iteration that first produced `best`.
  std::uint64_t iteration_found = 0;
  std::uint64_t iterations_run = 0;
  std::chrono::duration<double> time_to_best{0.0};
};

// Restricted candidate list for randomized construction. `alpha_ppm` is the
// greediness in millionths so that all score comparisons stay integral.
struct Rcl {
  std::int64_t alpha_ppm = 0;
  std::mt19937_64* rng = nullptr;
};

std::int64_t alpha_to_ppm(double alpha);

// Adds the subset with the lowest (cost + penalty against the selection) per
// newly covered element until everything is covered, then drops redundant
// subsets. Throws InfeasibleError if some element has no coverer.
Solution greedy_construct(const Instance& inst);
Solution greedy_construct(const Instance& inst, const Rcl& rcl);

// Best-improvement descent over drop and 1-1 swap moves. Throws DataError if
// `sol` is not a cover.
Solution local_search(const Instance& inst, const Solution& sol);

// Iterated randomized greedy + local search. Iteration t draws from its own
// generator seeded from (seed, t), so runs are reproducible per iteration.
GraspResult grasp(const Instance& inst, const GraspConfig& cfg);

// splitmix64 finalizer used to derive per-iteration seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace scpcs
