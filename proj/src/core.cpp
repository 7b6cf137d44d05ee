#include "scpcs/core.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include <fmt/format.h>

namespace scpcs {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kTruncated: return "truncated";
    case ParseErrorKind::kNotInteger: return "not an integer";
    case ParseErrorKind::kIndexOutOfRange: return "index out of range";
    case ParseErrorKind::kTokenSurplus: return "token surplus";
    case ParseErrorKind::kBadCount: return "bad count";
    case ParseErrorKind::kBadHeader: return "bad header";
  }
  return "unknown";
}

Cost checked_add(Cost a, Cost b) {
  Cost out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError(fmt::format("objective overflow adding {} and {}", a, b));
  }
  return out;
}

Instance::Instance(std::string name, std::size_t num_elements, std::vector<Cost> cost,
                   std::vector<std::vector<ElementId>> members,
                   std::vector<Conflict> conflicts,
                   std::map<std::string, std::string> metadata)
    : name_(std::move(name)),
      num_elements_(num_elements),
      cost_(std::move(cost)),
      members_(std::move(members)),
      conflicts_(std::move(conflicts)),
      metadata_(std::move(metadata)) {
  if (members_.size() != cost_.size()) {
    throw DataError(fmt::format("instance '{}': {} cost entries but {} member lists",
                                name_, cost_.size(), members_.size()));
  }
  for (auto& m : members_) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
  }
  build_indexes();
}

void Instance::build_indexes() {
  const std::size_t n = cost_.size();
  coverers_.assign(num_elements_, {});
  for (SubsetId j = 0; j < n; ++j) {
    for (ElementId k : members_[j]) {
      if (k < num_elements_) coverers_[k].push_back(j);
    }
  }

  adjacency_offset_.assign(n + 1, 0);
  auto in_range = [n](const Conflict& c) { return c.i < n && c.j < n && c.i != c.j; };
  for (const auto& c : conflicts_) {
    if (!in_range(c)) continue;
    ++adjacency_offset_[c.i + 1];
    ++adjacency_offset_[c.j + 1];
  }
  for (std::size_t j = 0; j < n; ++j) adjacency_offset_[j + 1] += adjacency_offset_[j];
  adjacency_.assign(adjacency_offset_[n], {});
  std::vector<std::size_t> fill(adjacency_offset_.begin(), adjacency_offset_.end() - 1);
  for (const auto& c : conflicts_) {
    if (!in_range(c)) continue;
    adjacency_[fill[c.i]++] = {c.j, c.penalty};
    adjacency_[fill[c.j]++] = {c.i, c.penalty};
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offset_[j]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offset_[j + 1]),
              [](const ConflictEdge& a, const ConflictEdge& b) { return a.partner < b.partner; });
  }
}

Cost Instance::penalty(SubsetId a, SubsetId b) const {
  if (a >= num_subsets() || b >= num_subsets()) return 0;
  auto row = adjacency(a);
  auto it = std::lower_bound(row.begin(), row.end(), b,
                             [](const ConflictEdge& e, SubsetId id) { return e.partner < id; });
  return (it != row.end() && it->partner == b) ? it->penalty : 0;
}

Instance Instance::with_name(std::string name) const {
  Instance out = *this;
  out.name_ = std::move(name);
  return out;
}

Instance Instance::with_conflicts(std::vector<Conflict> conflicts) const {
  Instance out = *this;
  out.conflicts_ = std::move(conflicts);
  out.build_indexes();
  return out;
}

Instance Instance::with_metadata(std::map<std::string, std::string> metadata) const {
  Instance out = *this;
  out.metadata_ = std::move(metadata);
  return out;
}

bool operator==(const Instance& a, const Instance& b) {
  return a.name_ == b.name_ && a.num_elements_ == b.num_elements_ && a.cost_ == b.cost_ &&
         a.members_ == b.members_ && a.conflicts_ == b.conflicts_ &&
         a.metadata_ == b.metadata_;
}

Solution::Solution(std::vector<SubsetId> ids) : selected_(std::move(ids)) {
  std::sort(selected_.begin(), selected_.end());
  if (std::adjacent_find(selected_.begin(), selected_.end()) != selected_.end()) {
    throw DataError("malformed solution: duplicate subset id");
  }
}

bool Solution::contains(SubsetId j) const {
  return std::binary_search(selected_.begin(), selected_.end(), j);
}

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  auto report = [&out](ViolationKind kind, std::string msg) {
    out.push_back({kind, std::move(msg)});
  };
  const std::size_t m = inst.num_elements();
  const std::size_t n = inst.num_subsets();

  for (SubsetId j = 0; j < n; ++j) {
    if (inst.cost(j) < 0) {
      report(ViolationKind::kNegativeCost, fmt::format("negative cost {} on subset {}", inst.cost(j), j));
    }
    auto mem = inst.members(j);
    if (!std::is_sorted(mem.begin(), mem.end()) ||
        std::adjacent_find(mem.begin(), mem.end()) != mem.end()) {
      report(ViolationKind::kMembersNotSorted, fmt::format("members of subset {} not sorted/unique", j));
    }
    for (ElementId k : mem) {
      if (k >= m) {
        report(ViolationKind::kElementOutOfRange,
               fmt::format("subset {} lists element {} but there are {} elements", j, k, m));
      }
    }
  }

  // Transpose consistency, both directions.
  for (SubsetId j = 0; j < n; ++j) {
    for (ElementId k : inst.members(j)) {
      if (k >= m) continue;
      auto cov = inst.coverers(k);
      if (!std::binary_search(cov.begin(), cov.end(), j)) {
        report(ViolationKind::kTransposeMismatch,
               fmt::format("element {} missing coverer {}", k, j));
      }
    }
  }
  for (ElementId k = 0; k < m; ++k) {
    for (SubsetId j : inst.coverers(k)) {
      auto mem = inst.members(j);
      if (j >= n || !std::binary_search(mem.begin(), mem.end(), k)) {
        report(ViolationKind::kTransposeMismatch,
               fmt::format("coverer {} of element {} does not contain it", j, k));
      }
    }
  }

  std::set<std::pair<SubsetId, SubsetId>> seen;
  for (const auto& c : inst.conflicts()) {
    if (c.i >= n || c.j >= n) {
      report(ViolationKind::kConflictOutOfRange,
             fmt::format("conflict subset id out of range: ({},{})", c.i, c.j));
    }
    if (c.i >= c.j) {
      report(ViolationKind::kConflictNotOrdered,
             fmt::format("conflict pair not ordered i<j: ({},{})", c.i, c.j));
    }
    if (c.penalty <= 0) {
      report(ViolationKind::kConflictNonPositive,
             fmt::format("conflict penalty not positive: ({},{}) -> {}", c.i, c.j, c.penalty));
    }
    auto key = std::minmax(c.i, c.j);
    if (!seen.insert(key).second) {
      report(ViolationKind::kConflictDuplicate,
             fmt::format("conflict pair listed twice: ({},{})", key.first, key.second));
    }
  }

  for (ElementId k = 0; k < m; ++k) {
    if (inst.coverers(k).empty()) {
      report(ViolationKind::kUncoverableElement, fmt::format("uncoverable element {}", k));
    }
  }
  return out;
}

bool only_uncoverable(std::span<const Violation> violations) {
  return std::all_of(violations.begin(), violations.end(), [](const Violation& v) {
    return v.kind == ViolationKind::kUncoverableElement;
  });
}

namespace {

void check_ids(const Instance& inst, const Solution& sol) {
  if (!sol.empty() && sol.ids().back() >= inst.num_subsets()) {
    throw DataError(fmt::format("malformed solution: subset id {} out of range (n = {})",
                                sol.ids().back(), inst.num_subsets()));
  }
}

}  // namespace

bool is_cover(const Instance& inst, const Solution& sol) {
  check_ids(inst, sol);
  std::vector<char> covered(inst.num_elements(), 0);
  std::size_t remaining = inst.num_elements();
  for (SubsetId j : sol.selected()) {
    for (ElementId k : inst.members(j)) {
      if (k < covered.size() && !covered[k]) {
        covered[k] = 1;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

std::vector<Conflict> active_conflicts(const Instance& inst, const Solution& sol) {
  check_ids(inst, sol);
  std::vector<Conflict> out;
  for (SubsetId i : sol.selected()) {
    for (const auto& e : inst.adjacency(i)) {
      if (e.partner > i && sol.contains(e.partner)) out.push_back({i, e.partner, e.penalty});
    }
  }
  return out;
}

ObjectiveBreakdown evaluate(const Instance& inst, const Solution& sol) {
  check_ids(inst, sol);
  ObjectiveBreakdown out;
  for (SubsetId j : sol.selected()) out.cover_cost = checked_add(out.cover_cost, inst.cost(j));
  for (const auto& c : active_conflicts(inst, sol)) {
    out.penalty_cost = checked_add(out.penalty_cost, c.penalty);
  }
  out.total = checked_add(out.cover_cost, out.penalty_cost);
  return out;
}

}  // namespace scpcs
