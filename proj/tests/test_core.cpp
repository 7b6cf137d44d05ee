#include <doctest.h>

#include <limits>
#include <random>

#include "scpcs/core.hpp"
#include "support.hpp"

using namespace scpcs;
using scpcs::testing::six_set_toy;
using scpcs::testing::naive_is_cover;
using scpcs::testing::naive_total;
using scpcs::testing::random_instance;
using scpcs::testing::random_selection;

TEST_SUITE("core") {

TEST_CASE("toy evaluates as drawn") {
  const Instance toy = six_set_toy();
  CHECK(validate_instance(toy).empty());
  CHECK(toy.conflicts().size() == 8);

  const Solution best({0, 4, 5});
  CHECK(is_cover(toy, best));
  CHECK(evaluate(toy, best) == ObjectiveBreakdown{3, 0, 3});
  CHECK(active_conflicts(toy, best).empty());

  const Solution black_first({1, 2, 3});
  CHECK(evaluate(toy, black_first) == ObjectiveBreakdown{3, 10, 13});
  const auto active = active_conflicts(toy, black_first);
  REQUIRE(active.size() == 1);
  CHECK(active[0] == Conflict{1, 3, 10});
}

TEST_CASE("transpose and adjacency agree with the raw fields") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(rng);
    for (ElementId k = 0; k < inst.num_elements(); ++k) {
      for (SubsetId j = 0; j < inst.num_subsets(); ++j) {
        const auto mem = inst.members(j);
        const bool in_members = std::find(mem.begin(), mem.end(), k) != mem.end();
        const auto cov = inst.coverers(k);
        const bool in_coverers = std::find(cov.begin(), cov.end(), j) != cov.end();
        CHECK(in_members == in_coverers);
      }
    }
    for (const auto& c : inst.conflicts()) {
      CHECK(inst.penalty(c.i, c.j) == c.penalty);
      CHECK(inst.penalty(c.j, c.i) == c.penalty);
    }
    std::size_t degree_sum = 0;
    for (SubsetId j = 0; j < inst.num_subsets(); ++j) degree_sum += inst.adjacency(j).size();
    CHECK(degree_sum == 2 * inst.conflicts().size());
  }
}

TEST_CASE("evaluate matches a naive recount on arbitrary selections") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_instance(rng);
    const auto ids = random_selection(rng, inst.num_subsets());
    const Solution sol(ids);
    const auto b = evaluate(inst, sol);
    CHECK(b.total == naive_total(inst, ids));
    CHECK(b.total == b.cover_cost + b.penalty_cost);
    CHECK(is_cover(inst, sol) == naive_is_cover(inst, ids));

    Cost active_sum = 0;
    for (const auto& c : active_conflicts(inst, sol)) active_sum += c.penalty;
    CHECK(active_sum == b.penalty_cost);
  }
}

TEST_CASE("adding a subset never lowers the objective") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_instance(rng);
    auto ids = random_selection(rng, inst.num_subsets());
    std::vector<SubsetId> missing;
    for (SubsetId j = 0; j < inst.num_subsets(); ++j) {
      if (std::find(ids.begin(), ids.end(), j) == ids.end()) missing.push_back(j);
    }
    if (missing.empty()) continue;
    const Cost before = evaluate(inst, Solution(ids)).total;
    ids.push_back(missing[rng() % missing.size()]);
    CHECK(evaluate(inst, Solution(ids)).total >= before);
  }
}

TEST_CASE("objective decomposes over a split of the selection") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_instance(rng);
    const auto ids = random_selection(rng, inst.num_subsets());
    std::vector<SubsetId> a, b;
    for (SubsetId j : ids) (rng() & 1U ? a : b).push_back(j);
    Cost cross = 0;
    for (SubsetId i : a) {
      for (SubsetId j : b) cross += inst.penalty(i, j);
    }
    CHECK(evaluate(inst, Solution(ids)).total ==
          evaluate(inst, Solution(a)).total + evaluate(inst, Solution(b)).total + cross);
  }
}

TEST_CASE("validation findings") {
  SUBCASE("uncoverable element") {
    const Instance inst("u", 3, {1, 1}, {{0}, {0, 1}});
    const auto v = validate_instance(inst);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::kUncoverableElement);
    CHECK(v[0].message == "uncoverable element 2");
    CHECK(only_uncoverable(v));
  }
  SUBCASE("conflict problems") {
    const Instance inst("c", 1, {1, 1, 1}, {{0}, {0}, {0}}, {{2, 1, 4}, {0, 1, 0}, {0, 1, 3}, {0, 7, 1}});
    std::vector<ViolationKind> kinds;
    for (const auto& v : validate_instance(inst)) kinds.push_back(v.kind);
    CHECK(std::count(kinds.begin(), kinds.end(), ViolationKind::kConflictNotOrdered) == 1);
    CHECK(std::count(kinds.begin(), kinds.end(), ViolationKind::kConflictNonPositive) == 1);
    CHECK(std::count(kinds.begin(), kinds.end(), ViolationKind::kConflictDuplicate) == 1);
    CHECK(std::count(kinds.begin(), kinds.end(), ViolationKind::kConflictOutOfRange) == 1);
    CHECK_FALSE(only_uncoverable(validate_instance(inst)));
  }
  SUBCASE("negative cost and element range") {
    const Instance inst("n", 2, {-1, 2}, {{0}, {1, 5}});
    std::vector<ViolationKind> kinds;
    for (const auto& v : validate_instance(inst)) kinds.push_back(v.kind);
    CHECK(std::count(kinds.begin(), kinds.end(), ViolationKind::kNegativeCost) == 1);
    CHECK(std::count(kinds.begin(), kinds.end(), ViolationKind::kElementOutOfRange) == 1);
  }
}

TEST_CASE("solutions reject duplicates and stay sorted") {
  CHECK_THROWS_AS(Solution({1, 2, 1}), DataError);
  const Solution s({4, 0, 2});
  CHECK(s.ids() == std::vector<SubsetId>{0, 2, 4});
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(3));
  CHECK_THROWS_AS(evaluate(six_set_toy(), Solution({6})), DataError);
}

TEST_CASE("objective overflow is reported, not wrapped") {
  const Cost big = std::numeric_limits<Cost>::max() - 1;
  const Instance inst("big", 1, {big, big}, {{0}, {0}});
  CHECK_THROWS_AS(evaluate(inst, Solution({0, 1})), OverflowError);
  CHECK_THROWS_AS(checked_add(big, 5), OverflowError);
  CHECK(checked_add(2, 3) == 5);
}

}  // TEST_SUITE
