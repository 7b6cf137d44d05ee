#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scpcs/error.hpp"

namespace scpcs {

using ElementId = std::uint32_t;
using SubsetId = std::uint32_t;
// Costs, penalties and objective values. Always exact integers.
using Cost = std::int64_t;
// Intermediate width for exact cross-multiplied ratio comparisons.
__extension__ typedef __int128 WideInt;

// Penalty paid when subsets `i` and `j` (i < j) are both selected.
struct Conflict {
  SubsetId i = 0;
  SubsetId j = 0;
  Cost penalty = 0;

  friend auto operator<=>(const Conflict&, const Conflict&) = default;
};

// One entry of a subset's conflict adjacency row.
struct ConflictEdge {
  SubsetId partner = 0;
  Cost penalty = 0;
};

// An SCP-CS instance. Immutable once built; the element -> subset index and
// the per-subset conflict adjacency are derived from `members` and `conflicts`.
//
// The constructor does not enforce the model invariants (conflict ordering,
// id ranges, coverability); `validate_instance` reports them. Member lists are
// sorted and deduplicated, and out-of-range ids are left out of the derived
// indexes.
class Instance {
 public:
  Instance() = default;
  Instance(std::string name, std::size_t num_elements, std::vector<Cost> cost,
           std::vector<std::vector<ElementId>> members,
           std::vector<Conflict> conflicts = {},
           std::map<std::string, std::string> metadata = {});

  const std::string& name() const { return name_; }
  std::size_t num_elements() const { return num_elements_; }
  std::size_t num_subsets() const { return cost_.size(); }

  std::span<const Cost> costs() const { return cost_; }
  Cost cost(SubsetId j) const { return cost_[j]; }

  std::span<const ElementId> members(SubsetId j) const { return members_[j]; }
  const std::vector<std::vector<ElementId>>& all_members() const { return members_; }

  std::span<const SubsetId> coverers(ElementId k) const { return coverers_[k]; }
  const std::vector<std::vector<SubsetId>>& all_coverers() const { return coverers_; }

  std::span<const Conflict> conflicts() const { return conflicts_; }

  // Conflict partners of `j` sorted by partner id (both directions).
  std::span<const ConflictEdge> adjacency(SubsetId j) const {
    return {adjacency_.data() + adjacency_offset_[j],
            adjacency_.data() + adjacency_offset_[j + 1]};
  }
  // Penalty between two distinct subsets, 0 when they do not conflict.
  Cost penalty(SubsetId a, SubsetId b) const;

  // Free-form provenance (e.g. kappa and gamma of a generated instance).
  const std::map<std::string, std::string>& metadata() const { return metadata_; }

  Instance with_name(std::string name) const;
  Instance with_conflicts(std::vector<Conflict> conflicts) const;
  Instance with_metadata(std::map<std::string, std::string> metadata) const;

  friend bool operator==(const Instance& a, const Instance& b);

 private:
  void build_indexes();

  std::string name_;
  std::size_t num_elements_ = 0;
  std::vector<Cost> cost_;
  std::vector<std::vector<ElementId>> members_;
  std::vector<std::vector<SubsetId>> coverers_;
  std::vector<Conflict> conflicts_;
  std::vector<std::size_t> adjacency_offset_{0};
  std::vector<ConflictEdge> adjacency_;
  std::map<std::string, std::string> metadata_;
};

// A selection of subsets (sorted, no duplicates).
class Solution {
 public:
  Solution() = default;
  // Sorts `ids`; throws DataError on duplicates.
  explicit Solution(std::vector<SubsetId> ids);

  std::span<const SubsetId> selected() const { return selected_; }
  const std::vector<SubsetId>& ids() const { return selected_; }
  std::size_t size() const { return selected_.size(); }
  bool empty() const { return selected_.empty(); }
  bool contains(SubsetId j) const;

  friend bool operator==(const Solution&, const Solution&) = default;
  friend auto operator<=>(const Solution&, const Solution&) = default;

 private:
  std::vector<SubsetId> selected_;
};

struct ObjectiveBreakdown {
  Cost cover_cost = 0;
  Cost penalty_cost = 0;
  Cost total = 0;

  friend bool operator==(const ObjectiveBreakdown&, const ObjectiveBreakdown&) = default;
};

enum class ViolationKind {
  kElementOutOfRange,
  kMembersNotSorted,
  kTransposeMismatch,
  kNegativeCost,
  kConflictOutOfRange,
  kConflictNotOrdered,
  kConflictDuplicate,
  kConflictNonPositive,
  kUncoverableElement,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

std::vector<Violation> validate_instance(const Instance& inst);

// True when every finding is "uncoverable element" (or there are none).
bool only_uncoverable(std::span<const Violation> violations);

bool is_cover(const Instance& inst, const Solution& sol);

std::vector<Conflict> active_conflicts(const Instance& inst, const Solution& sol);

// Defined on any selection, not only covers. Throws OverflowError instead of
// wrapping.
ObjectiveBreakdown evaluate(const Instance& inst, const Solution& sol);

// Checked integer addition used wherever objective values are accumulated.
Cost checked_add(Cost a, Cost b);

}  // namespace scpcs
