#include <doctest.h>

#include <random>
#include <set>

#include "scpcs/transform.hpp"
#include "support.hpp"

using namespace scpcs;
using scpcs::testing::random_instance;
using scpcs::testing::RandomSpec;

namespace {

Instance conflict_free(std::mt19937_64& rng, std::size_t max_subsets = 40) {
  RandomSpec spec;
  spec.max_subsets = max_subsets;
  spec.density = 0.3;
  spec.conflict_prob = 0.0;
  spec.allow_zero_cost = false;
  const Instance inst = random_instance(rng, spec);
  auto members = inst.all_members();
  for (auto& mem : members) {
    if (mem.empty()) mem.push_back(static_cast<ElementId>(rng() % inst.num_elements()));
  }
  return Instance(inst.name(), inst.num_elements(), {inst.costs().begin(), inst.costs().end()}, members);
}

std::size_t naive_overlap(const Instance& inst, SubsetId i, SubsetId j) {
  const auto a = inst.members(i);
  const auto b = inst.members(j);
  std::size_t n = 0;
  for (ElementId x : a) {
    for (ElementId y : b) n += x == y;
  }
  return n;
}

}  // namespace

TEST_SUITE("transform") {

TEST_CASE("gamma examples") {
  CHECK(gamma(Instance("a", 2, {5}, {{0, 1}})) == 3);
  CHECK(gamma(Instance("b", 2, {4}, {{0, 1}})) == 2);
  CHECK(gamma(Instance("c", 3, {1, 2}, {{0, 1}, {0, 1, 2}})) == 1);
  CHECK(gamma(Instance("d", 2, {5}, {{0, 1}}), GammaRounding::kFloor) == 2);
  CHECK(gamma(Instance("e", 2, {5}, {{0, 1}}), GammaRounding::kCeil) == 3);
  CHECK(gamma(Instance("f", 2, {0}, {{0, 1}}), GammaRounding::kCeil) == 1);
  CHECK(gamma(Instance("g", 4, {7, 9}, {{0, 1}, {0, 1, 2, 3}})) == 4);
  CHECK_THROWS_AS(gamma(Instance("h", 2, {5, 1}, {{0, 1}, {}})), DataError);
}

TEST_CASE("merge3 of three sets") {
  const Instance in("m", 2, {1, 2, 3}, {{0}, {1}, {0, 1}});
  const Instance out = merge3(in);
  REQUIRE(out.num_subsets() == 1);
  CHECK(out.cost(0) == 6);
  CHECK(std::vector<ElementId>(out.members(0).begin(), out.members(0).end()) == std::vector<ElementId>{0, 1});
}

TEST_CASE("merge3 shape and union") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance in = conflict_free(rng);
    const Instance out = merge3(in);
    CHECK(out.num_subsets() == (in.num_subsets() + 2) / 3);
    CHECK(out.num_elements() == in.num_elements());
    for (SubsetId g = 0; g < out.num_subsets(); ++g) {
      Cost c = 0;
      std::set<ElementId> u;
      for (SubsetId j = 3 * g; j < std::min<std::size_t>(3 * g + 3, in.num_subsets()); ++j) {
        c += in.cost(j);
        u.insert(in.members(j).begin(), in.members(j).end());
      }
      CHECK(out.cost(g) == c);
      CHECK(std::vector<ElementId>(u.begin(), u.end()) ==
            std::vector<ElementId>(out.members(g).begin(), out.members(g).end()));
    }
    CHECK(validate_instance(out).empty());
  }
  CHECK_THROWS_AS(merge3(scpcs::testing::six_set_toy()), DataError);
}

TEST_CASE("conflicts match a naive pairwise recount") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 150; ++trial) {
    const Instance merged = merge3(conflict_free(rng, 60));
    for (std::int64_t kappa : {0, 1, 2, 3}) {
      TransformParams p;
      p.kappa = kappa;
      const Instance out = generate_conflicts(merged, p);
      const Cost g = gamma(merged);
      std::vector<Conflict> expected;
      for (SubsetId i = 0; i < merged.num_subsets(); ++i) {
        for (SubsetId j = i + 1; j < merged.num_subsets(); ++j) {
          const auto ov = static_cast<std::int64_t>(naive_overlap(merged, i, j));
          if (ov > kappa) expected.push_back({i, j, g * (ov - kappa)});
        }
      }
      const std::vector<Conflict> got(out.conflicts().begin(), out.conflicts().end());
      CHECK(got == expected);
      CHECK(count_conflicts(merged, kappa) == expected.size());
      CHECK(validate_instance(out).empty());
      CHECK(out.metadata().at("kappa") == std::to_string(kappa));
      CHECK(out.metadata().at("gamma") == std::to_string(g));
    }
  }
}

TEST_CASE("raising kappa only removes conflicts and lowers penalties") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance merged = merge3(conflict_free(rng, 60));
    TransformParams lo, hi;
    lo.kappa = static_cast<std::int64_t>(rng() % 3);
    hi.kappa = lo.kappa + 1;
    const Instance a = generate_conflicts(merged, lo);
    const Instance b = generate_conflicts(merged, hi);
    CHECK(b.conflicts().size() <= a.conflicts().size());
    for (const auto& c : b.conflicts()) CHECK(a.penalty(c.i, c.j) > c.penalty);
  }
}

TEST_CASE("pipeline names and metadata") {
  const auto raw = parse_orlib("3 6\n1 2 3 4 5 6\n2 1 4\n3 2 3 5\n2 5 6\n", "tiny");
  TransformParams p;
  p.kappa = 0;
  const Instance inst = pipeline(raw, p);
  CHECK(inst.name() == "tiny-k0");
  CHECK(inst.metadata().at("base") == "tiny");
  CHECK(inst.metadata().at("gamma_rounding") == "round-half-up");
  CHECK(inst.metadata().at("gamma_basis") == "merged");
  REQUIRE(inst.num_subsets() == 2);
  CHECK(inst.costs()[0] == 6);
  CHECK(inst.costs()[1] == 15);
  // Merged sets {0,1} and {0,1,2}: gamma = max(6/2, 15/3) = 5, overlap 2.
  REQUIRE(inst.conflicts().size() == 1);
  CHECK(inst.conflicts()[0] == Conflict{0, 1, 10});

  p.basis = GammaBasis::kOriginal;
  // Original ratios 1/1, 2/1, 3/1, 4/1, 5/2, 6/1.
  CHECK(pipeline(raw, p).conflicts()[0].penalty == 12);
  p.kappa = -1;
  CHECK_THROWS_AS(pipeline(raw, p), DataError);
  CHECK(parse_gamma_rounding("floor") == GammaRounding::kFloor);
  CHECK_THROWS_AS(parse_gamma_rounding("banker"), DataError);
}

}  // TEST_SUITE
