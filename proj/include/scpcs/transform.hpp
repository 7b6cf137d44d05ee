#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scpcs/core.hpp"
#include "scpcs/ingest.hpp"

namespace scpcs {

// How the cost-per-element ratio is turned into the integer gamma.
enum class GammaRounding { kHalfUp, kFloor, kCeil };

// Which subsets gamma ranges over.
enum class GammaBasis { kMerged, kOriginal };

const char* to_string(GammaRounding r);
const char* to_string(GammaBasis b);
GammaRounding parse_gamma_rounding(std::string_view text);

struct TransformParams {
  std::int64_t kappa = 1;
  GammaRounding rounding = GammaRounding::kHalfUp;
  GammaBasis basis = GammaBasis::kMerged;
};

// Groups subsets {3g, 3g+1, 3g+2} into one: summed cost, union of members.
// The last group keeps whatever is left (1 or 2 subsets).
Instance merge3(const Instance& inst);

// max(1, round(max_j cost_j / |S_j|)) under `rounding`. Throws DataError on an
// empty subset.
Cost gamma(const Instance& inst, GammaRounding rounding = GammaRounding::kHalfUp);

// Pairwise overlap counts |S_i ∩ S_j| for i < j, visited in (i, j) order.
// `visit(i, j, overlap)` is called for every pair with overlap > min_overlap.
template <typename Visit>
void for_each_overlap(const Instance& inst, std::size_t min_overlap, Visit&& visit);

// Adds d_ij = gamma * max(|S_i ∩ S_j| - kappa, 0) for every pair with d_ij > 0.
// Records kappa, gamma and the rounding policy in the metadata.
Instance generate_conflicts(const Instance& inst, const TransformParams& params);
Instance generate_conflicts(const Instance& inst, const TransformParams& params, Cost gamma_value);

// Number of conflicts generate_conflicts would emit, without building them.
std::size_t count_conflicts(const Instance& merged, std::int64_t kappa);

// to_instance -> merge3 -> generate_conflicts; result named "<base>-k<kappa>".
Instance pipeline(const RawScpInstance& raw, const TransformParams& params);

// --- implementation ---

template <typename Visit>
void for_each_overlap(const Instance& inst, std::size_t min_overlap, Visit&& visit) {
  const std::size_t n = inst.num_subsets();
  std::vector<std::uint32_t> count(n, 0);
  std::vector<SubsetId> touched;
  for (SubsetId i = 0; i < n; ++i) {
    touched.clear();
    for (ElementId k : inst.members(i)) {
      if (k >= inst.num_elements()) continue;
      auto cov = inst.coverers(k);
      // Coverers are sorted; only partners j > i matter.
      auto it = std::upper_bound(cov.begin(), cov.end(), i);
      for (; it != cov.end(); ++it) {
        if (count[*it]++ == 0) touched.push_back(*it);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (SubsetId j : touched) {
      if (count[j] > min_overlap) visit(i, j, static_cast<std::size_t>(count[j]));
      count[j] = 0;
    }
  }
}

}  // namespace scpcs
