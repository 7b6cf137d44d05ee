#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scpcs/core.hpp"

namespace scpcs {

using Seconds = std::chrono::duration<double>;

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kUnknown };

const char* to_string(SolveStatus s);
SolveStatus parse_solve_status(std::string_view text);

struct SolveConfig {
  Seconds time_limit{3600.0};
  std::optional<std::uint64_t> node_limit;
  // Known objective of some cover (e.g. from GRASP). Nodes whose bound exceeds
  // it are pruned; the solver still has to find a cover of its own.
  std::optional<Cost> initial_upper_bound;
  // Polled once per node; raising it stops the search like a time limit.
  const std::atomic<bool>* stop = nullptr;
  // Turning this off makes the node bound the accumulated objective only.
  bool use_completion_bound = true;
};

struct SolveReport {
  Cost lower_bound = 0;
  std::optional<Cost> upper_bound;
  std::optional<Solution> incumbent;
  SolveStatus status = SolveStatus::kUnknown;
  std::uint64_t nodes_explored = 0;
  Seconds time_to_best{0.0};
  Seconds time_total{0.0};
  // Set when status == kInfeasible.
  std::optional<ElementId> uncoverable_element;
};

// Depth-first branch-and-bound on the subset selection. Anytime: when a limit
// stops the search, lower_bound <= optimum <= upper_bound still holds.
SolveReport solve(const Instance& inst, const SolveConfig& cfg = {});

// A node of the search: subsets forced in and forced out.
struct PartialSelection {
  std::vector<SubsetId> selected;
  std::vector<SubsetId> excluded;
};

// Objective of `state.selected` plus a lower bound on covering the remaining
// elements with subsets that are neither selected nor excluded:
//   sum over uncovered k of min_j w_j / |S_j ∩ uncovered|, rounded down,
// where w_j is cost_j plus the penalties j would pay against the subsets
// already selected. Penalties among not-yet-selected subsets are ignored.
// Returns nullopt when some uncovered element has no available coverer.
std::optional<Cost> node_lower_bound(const Instance& inst, const PartialSelection& state);

struct CertificateCheck {
  bool ok = false;
  std::string discrepancy;
  explicit operator bool() const { return ok; }
};

// Re-checks a report against core::evaluate / core::is_cover.
CertificateCheck verify_certificate(const Instance& inst, const SolveReport& report);

// CPLEX LP model: objective, one cover row per element, one linearisation row
// per conflict, binaries for every x and y. Names x<j>, y<i>_<j> are 1-based.
std::string export_lp(const Instance& inst);

namespace detail {

// Exact floor of a sum of fractions cost/size accumulated one term at a time.
// Falls back to flooring the pending fractional part when denominators grow
// too large, which keeps the result a valid lower bound.
class FractionFloorSum {
 public:
  void add(Cost num, Cost den);
  Cost floor() const;

 private:
  void flush_fraction();

  Cost whole_ = 0;
  // Pending fractional part frac_num_ / frac_den_ in [0, 1) plus whole units
  // folded into whole_.
  WideInt frac_num_ = 0;
  WideInt frac_den_ = 1;
};

}  // namespace detail

}  // namespace scpcs
