#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "scpcs/core.hpp"

namespace scpcs::testing {

struct RandomSpec {
  std::size_t min_elements = 1;
  std::size_t max_elements = 30;
  std::size_t min_subsets = 1;
  std::size_t max_subsets = 18;
  double density = 0.2;
  double conflict_prob = 0.3;
  Cost max_cost = 20;
  Cost max_penalty = 30;
  bool allow_zero_cost = true;
  // When false every element gets at least one coverer.
  bool allow_uncoverable = false;
};

inline Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  auto uniform = [&rng](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  std::bernoulli_distribution coin_density(spec.density);
  std::bernoulli_distribution coin_conflict(spec.conflict_prob);

  const auto m = static_cast<std::size_t>(uniform(spec.min_elements, spec.max_elements));
  const auto n = static_cast<std::size_t>(uniform(spec.min_subsets, spec.max_subsets));
  std::vector<Cost> cost(n);
  for (auto& c : cost) c = uniform(spec.allow_zero_cost ? 0 : 1, spec.max_cost);
  std::vector<std::vector<ElementId>> members(n);
  for (ElementId k = 0; k < m; ++k) {
    bool covered = false;
    for (SubsetId j = 0; j < n; ++j) {
      if (coin_density(rng)) {
        members[j].push_back(k);
        covered = true;
      }
    }
    if (!covered && !spec.allow_uncoverable) members[static_cast<std::size_t>(uniform(0, n - 1))].push_back(k);
  }
  std::vector<Conflict> conflicts;
  for (SubsetId i = 0; i < n; ++i) {
    for (SubsetId j = i + 1; j < n; ++j) {
      if (coin_conflict(rng)) conflicts.push_back({i, j, uniform(1, spec.max_penalty)});
    }
  }
  return Instance("random", m, std::move(cost), std::move(members), std::move(conflicts));
}

// The six-set illustration: unit costs, penalty 10 per shared element.
inline Instance six_set_toy() {
  std::vector<std::vector<ElementId>> members = {
      {0, 3}, {0, 1, 2}, {3, 4}, {2, 5}, {1, 5}, {2, 4},
  };
  std::vector<Conflict> conflicts;
  for (SubsetId i = 0; i < members.size(); ++i) {
    for (SubsetId j = i + 1; j < members.size(); ++j) {
      std::vector<ElementId> common;
      std::set_intersection(members[i].begin(), members[i].end(), members[j].begin(), members[j].end(),
                            std::back_inserter(common));
      if (!common.empty()) conflicts.push_back({i, j, 10 * static_cast<Cost>(common.size())});
    }
  }
  return Instance("toy-fig1", 6, std::vector<Cost>(6, 1), std::move(members), std::move(conflicts));
}

// Objective recomputed from the raw fields only, without the instance's
// derived indexes.
inline Cost naive_total(const Instance& inst, const std::vector<SubsetId>& ids) {
  std::set<SubsetId> chosen(ids.begin(), ids.end());
  Cost total = 0;
  for (SubsetId j : chosen) total += inst.cost(j);
  for (const auto& c : inst.conflicts()) {
    if (chosen.count(c.i) && chosen.count(c.j)) total += c.penalty;
  }
  return total;
}

inline bool naive_is_cover(const Instance& inst, const std::vector<SubsetId>& ids) {
  std::set<ElementId> seen;
  for (SubsetId j : ids) {
    for (ElementId e : inst.all_members()[j]) seen.insert(e);
  }
  return seen.size() == inst.num_elements();
}

// Optimum by plain enumeration, independent of the library's oracle.
inline std::optional<Cost> naive_optimum(const Instance& inst) {
  std::optional<Cost> best;
  const std::size_t n = inst.num_subsets();
  std::vector<SubsetId> ids;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    ids.clear();
    for (SubsetId j = 0; j < n; ++j) {
      if (mask >> j & 1U) ids.push_back(j);
    }
    if (!naive_is_cover(inst, ids)) continue;
    const Cost t = naive_total(inst, ids);
    if (!best || t < *best) best = t;
  }
  return best;
}

inline std::vector<SubsetId> random_selection(std::mt19937_64& rng, std::size_t n) {
  std::vector<SubsetId> ids;
  std::bernoulli_distribution coin(0.5);
  for (SubsetId j = 0; j < n; ++j) {
    if (coin(rng)) ids.push_back(j);
  }
  return ids;
}

// Covering every 4-cycle of the d-cube by its edges, in OR-Library layout:
// rows are 4-cycles, columns are edges (u, u | 1 << b) in lexicographic
// order, unit costs.
inline std::string hypercube_cycles_orlib(int d) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t u = 0; u < (1U << d); ++u) {
    for (int b = 0; b < d; ++b) {
      if (!(u >> b & 1U)) edges.emplace_back(u, u | 1U << b);
    }
  }
  std::sort(edges.begin(), edges.end());
  auto column = [&edges](std::uint32_t a, std::uint32_t b) {
    return std::lower_bound(edges.begin(), edges.end(), std::pair{a, b}) - edges.begin() + 1;
  };
  std::vector<std::vector<long>> rows;
  for (std::uint32_t u = 0; u < (1U << d); ++u) {
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        if ((u >> a & 1U) || (u >> b & 1U)) continue;
        const std::uint32_t ua = u | 1U << a, ub = u | 1U << b, uab = ua | 1U << b;
        rows.push_back({column(u, ua), column(u, ub), column(ua, uab), column(ub, uab)});
      }
    }
  }
  std::string out = std::to_string(rows.size()) + " " + std::to_string(edges.size()) + "\n";
  for (std::size_t j = 0; j < edges.size(); ++j) out += "1 ";
  out += "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.size());
    for (long c : r) out += " " + std::to_string(c);
    out += "\n";
  }
  return out;
}

}  // namespace scpcs::testing
