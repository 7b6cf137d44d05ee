#include <doctest.h>

#include <atomic>
#include <numeric>
#include <random>

#include "scpcs/solver_exact.hpp"
#include "support.hpp"

using namespace scpcs;
using scpcs::testing::six_set_toy;
using scpcs::testing::naive_optimum;
using scpcs::testing::random_instance;
using scpcs::testing::RandomSpec;

namespace {

RandomSpec small_spec() {
  RandomSpec spec;
  spec.max_subsets = 12;
  spec.max_elements = 20;
  return spec;
}

// Best total over covers that contain `selected` and avoid `excluded`.
std::optional<Cost> completion_optimum(const Instance& inst, const PartialSelection& st) {
  std::optional<Cost> best;
  const std::size_t n = inst.num_subsets();
  std::vector<SubsetId> ids;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (SubsetId j : st.selected) ok &= (mask >> j & 1U) != 0;
    for (SubsetId j : st.excluded) ok &= (mask >> j & 1U) == 0;
    if (!ok) continue;
    ids.clear();
    for (SubsetId j = 0; j < n; ++j) {
      if (mask >> j & 1U) ids.push_back(j);
    }
    if (!scpcs::testing::naive_is_cover(inst, ids)) continue;
    const Cost t = scpcs::testing::naive_total(inst, ids);
    if (!best || t < *best) best = t;
  }
  return best;
}

}  // namespace

TEST_SUITE("solver_exact") {

TEST_CASE("toy optimum") {
  const Instance toy = six_set_toy();
  const SolveReport r = solve(toy);
  CHECK(r.status == SolveStatus::kOptimal);
  CHECK(r.lower_bound == 3);
  CHECK(r.upper_bound == 3);
  REQUIRE(r.incumbent);
  CHECK(r.incumbent->ids() == std::vector<SubsetId>{0, 4, 5});
  CHECK(verify_certificate(toy, r));
}

TEST_CASE("optimal on random instances") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const Instance inst = random_instance(rng, small_spec());
    const auto expected = naive_optimum(inst);
    REQUIRE(expected);
    const SolveReport r = solve(inst);
    CHECK(r.status == SolveStatus::kOptimal);
    CHECK(r.lower_bound == *expected);
    CHECK(r.upper_bound == *expected);
    CHECK(verify_certificate(inst, r));
  }
}

TEST_CASE("node bound never exceeds the best completion") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_instance(rng, small_spec());
    PartialSelection st;
    for (SubsetId j = 0; j < inst.num_subsets(); ++j) {
      const auto roll = rng() % 6;
      if (roll == 0) st.selected.push_back(j);
      if (roll == 1) st.excluded.push_back(j);
    }
    const auto bound = node_lower_bound(inst, st);
    const auto best = completion_optimum(inst, st);
    CHECK(bound.has_value() == best.has_value());
    if (bound && best) CHECK(*bound <= *best);
    if (bound) CHECK(*bound >= evaluate(inst, Solution(st.selected)).total);
  }
}

TEST_CASE("the completion bound does not change the optimum") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng, small_spec());
    SolveConfig plain;
    plain.use_completion_bound = false;
    const SolveReport a = solve(inst);
    const SolveReport b = solve(inst, plain);
    CHECK(b.status == SolveStatus::kOptimal);
    CHECK(a.upper_bound == b.upper_bound);
    CHECK(a.nodes_explored <= b.nodes_explored);
  }
}

TEST_CASE("warm start keeps the optimum") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng, small_spec());
    const Cost opt = *naive_optimum(inst);
    SolveConfig cfg;
    cfg.initial_upper_bound = opt + static_cast<Cost>(rng() % 3);
    const SolveReport r = solve(inst, cfg);
    CHECK(r.status == SolveStatus::kOptimal);
    CHECK(r.upper_bound == opt);
    CHECK(verify_certificate(inst, r));
  }
}

TEST_CASE("interrupted searches keep valid bounds") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(rng, small_spec());
    const Cost opt = *naive_optimum(inst);
    SolveConfig cfg;
    cfg.node_limit = 1 + rng() % 40;
    const SolveReport r = solve(inst, cfg);
    CHECK(r.lower_bound <= opt);
    if (r.upper_bound) CHECK(*r.upper_bound >= opt);
    if (r.status == SolveStatus::kOptimal) CHECK(r.lower_bound == opt);
    CHECK(verify_certificate(inst, r));
  }
}

TEST_CASE("stop flag and limits") {
  std::atomic<bool> stop{true};
  SolveConfig cfg;
  cfg.stop = &stop;
  const SolveReport r = solve(six_set_toy(), cfg);
  CHECK(r.lower_bound <= 3);
  CHECK(verify_certificate(six_set_toy(), r));

  SolveConfig bad;
  bad.time_limit = Seconds{0.0};
  CHECK_THROWS(solve(six_set_toy(), bad));
}

TEST_CASE("uncoverable element") {
  const Instance inst("u", 3, {1, 1}, {{0}, {0, 1}});
  const SolveReport r = solve(inst);
  CHECK(r.status == SolveStatus::kInfeasible);
  CHECK(r.uncoverable_element == 2);
  CHECK_FALSE(r.incumbent);
  CHECK_THROWS_AS(export_lp(inst), InfeasibleError);
}

TEST_CASE("certificate checks catch bad reports") {
  const Instance toy = six_set_toy();
  SolveReport r = solve(toy);
  SolveReport wrong_total = r;
  wrong_total.upper_bound = 4;
  CHECK_FALSE(verify_certificate(toy, wrong_total));
  SolveReport not_cover = r;
  not_cover.incumbent = Solution({0, 4});
  not_cover.upper_bound = 2;
  CHECK_FALSE(verify_certificate(toy, not_cover));
  SolveReport gap = r;
  gap.lower_bound = 2;
  CHECK_FALSE(verify_certificate(toy, gap));
  SolveReport over = r;
  over.status = SolveStatus::kFeasible;
  over.lower_bound = 5;
  CHECK_FALSE(verify_certificate(toy, over));
}

TEST_CASE("exact fractional floor") {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 500; ++trial) {
    detail::FractionFloorSum sum;
    // Exact reference with a common denominator of 1..12.
    const Cost lcm = 27720;
    Cost scaled = 0;
    const int terms = 1 + static_cast<int>(rng() % 20);
    for (int t = 0; t < terms; ++t) {
      const Cost den = 1 + static_cast<Cost>(rng() % 12);
      const Cost num = static_cast<Cost>(rng() % 1000);
      sum.add(num, den);
      scaled += num * (lcm / den);
    }
    CHECK(sum.floor() == scaled / lcm);
  }
}

TEST_CASE("LP model text") {
  const std::string lp = export_lp(six_set_toy());
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find(" cover1: x1 + x2 >= 1") != std::string::npos);
  CHECK(lp.find(" link1_2: y1_2 - x1 - x2 >= -1") != std::string::npos);
  CHECK(lp.find("Binaries") != std::string::npos);
  CHECK(lp.substr(lp.size() - 4) == "End\n");
}

TEST_CASE("status names") {
  for (auto s : {SolveStatus::kOptimal, SolveStatus::kFeasible, SolveStatus::kInfeasible, SolveStatus::kUnknown}) {
    CHECK(parse_solve_status(to_string(s)) == s);
  }
}

}  // TEST_SUITE
