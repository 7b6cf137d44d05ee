#include "scpcs/transform.hpp"

#include <fmt/format.h>

namespace scpcs {

const char* to_string(GammaRounding r) {
  switch (r) {
    case GammaRounding::kHalfUp: return "round-half-up";
    case GammaRounding::kFloor: return "floor";
    case GammaRounding::kCeil: return "ceil";
  }
  return "?";
}

const char* to_string(GammaBasis b) {
  return b == GammaBasis::kMerged ? "merged" : "original";
}

GammaRounding parse_gamma_rounding(std::string_view text) {
  if (text == "round-half-up" || text == "half-up" || text == "round") return GammaRounding::kHalfUp;
  if (text == "floor") return GammaRounding::kFloor;
  if (text == "ceil") return GammaRounding::kCeil;
  throw DataError(fmt::format("unknown gamma rounding policy '{}'", text));
}

Instance merge3(const Instance& inst) {
  if (!inst.conflicts().empty()) {
    throw DataError(fmt::format("merge3: instance '{}' already has {} conflicts", inst.name(),
                                inst.conflicts().size()));
  }
  const std::size_t n_in = inst.num_subsets();
  const std::size_t n_out = (n_in + 2) / 3;
  std::vector<Cost> cost(n_out, 0);
  std::vector<std::vector<ElementId>> members(n_out);
  for (SubsetId j = 0; j < n_in; ++j) {
    const std::size_t g = j / 3;
    cost[g] = checked_add(cost[g], inst.cost(j));
    auto mem = inst.members(j);
    members[g].insert(members[g].end(), mem.begin(), mem.end());
  }
  // Instance's constructor sorts and deduplicates, which yields the union.
  return Instance(inst.name(), inst.num_elements(), std::move(cost), std::move(members), {},
                  inst.metadata());
}

Cost gamma(const Instance& inst, GammaRounding rounding) {
  // Best ratio kept as an exact fraction num/den.
  Cost num = 1;
  Cost den = 1;
  for (SubsetId j = 0; j < inst.num_subsets(); ++j) {
    const auto size = static_cast<Cost>(inst.members(j).size());
    if (size == 0) {
      throw DataError(fmt::format("gamma: subset {} of '{}' is empty", j, inst.name()));
    }
    if (static_cast<WideInt>(inst.cost(j)) * den > static_cast<WideInt>(num) * size) {
      num = inst.cost(j);
      den = size;
    }
  }
  Cost rounded = 0;
  switch (rounding) {
    case GammaRounding::kHalfUp: rounded = (2 * num + den) / (2 * den); break;
    case GammaRounding::kFloor: rounded = num / den; break;
    case GammaRounding::kCeil: rounded = (num + den - 1) / den; break;
  }
  return std::max<Cost>(rounded, 1);
}

Instance generate_conflicts(const Instance& inst, const TransformParams& params) {
  return generate_conflicts(inst, params, gamma(inst, params.rounding));
}

Instance generate_conflicts(const Instance& inst, const TransformParams& params, Cost gamma_value) {
  if (params.kappa < 0) throw DataError(fmt::format("kappa must be >= 0, got {}", params.kappa));
  if (gamma_value < 1) throw DataError(fmt::format("gamma must be >= 1, got {}", gamma_value));
  if (!inst.conflicts().empty()) {
    throw DataError(fmt::format("generate_conflicts: instance '{}' already has conflicts", inst.name()));
  }
  std::vector<Conflict> conflicts;
  const auto kappa = static_cast<std::size_t>(params.kappa);
  for_each_overlap(inst, kappa, [&](SubsetId i, SubsetId j, std::size_t overlap) {
    const auto excess = static_cast<Cost>(overlap - kappa);
    Cost d = 0;
    if (__builtin_mul_overflow(gamma_value, excess, &d)) {
      throw OverflowError(fmt::format("penalty overflow for pair ({},{})", i, j));
    }
    conflicts.push_back({i, j, d});
  });

  auto meta = inst.metadata();
  meta["kappa"] = std::to_string(params.kappa);
  meta["gamma"] = std::to_string(gamma_value);
  meta["gamma_rounding"] = to_string(params.rounding);
  meta["gamma_basis"] = to_string(params.basis);
  return inst.with_conflicts(std::move(conflicts)).with_metadata(std::move(meta));
}

std::size_t count_conflicts(const Instance& merged, std::int64_t kappa) {
  if (kappa < 0) throw DataError(fmt::format("kappa must be >= 0, got {}", kappa));
  std::size_t count = 0;
  for_each_overlap(merged, static_cast<std::size_t>(kappa),
                   [&count](SubsetId, SubsetId, std::size_t) { ++count; });
  return count;
}

Instance pipeline(const RawScpInstance& raw, const TransformParams& params) {
  const Instance original = to_instance(raw);
  Instance merged = merge3(original);
  const Cost g = gamma(params.basis == GammaBasis::kMerged ? merged : original, params.rounding);
  auto meta = merged.metadata();
  meta["base"] = raw.name;
  merged = merged.with_metadata(std::move(meta));
  return generate_conflicts(merged, params, g)
      .with_name(fmt::format("{}-k{}", raw.name, params.kappa));
}

}  // namespace scpcs
