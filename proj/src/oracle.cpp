#include "scpcs/oracle.hpp"

#include <algorithm>
#include <optional>
#include <thread>
#include <vector>

#include <fmt/format.h>

namespace scpcs {
namespace {

struct Partial {
  std::optional<Cost> optimum;
  std::optional<Solution> witness;
  std::uint64_t count = 0;

  void offer(Cost total, Solution sol) {
    if (!optimum || total < *optimum) {
      optimum = total;
      witness = std::move(sol);
      count = 1;
    } else if (total == *optimum) {
      ++count;
      if (sol < *witness) witness = std::move(sol);
    }
  }

  void merge(Partial&& other) {
    if (!other.optimum) return;
    if (!optimum || *other.optimum < *optimum) {
      *this = std::move(other);
    } else if (*other.optimum == *optimum) {
      count += other.count;
      if (*other.witness < *witness) witness = std::move(other.witness);
    }
  }
};

Partial enumerate_range(const Instance& inst, std::uint64_t begin, std::uint64_t end) {
  Partial part;
  const std::size_t n = inst.num_subsets();
  std::vector<SubsetId> ids;
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    ids.clear();
    for (SubsetId j = 0; j < n; ++j) {
      if (mask >> j & 1U) ids.push_back(j);
    }
    Solution sol(ids);
    if (!is_cover(inst, sol)) continue;
    const Cost value = evaluate(inst, sol).total;
    part.offer(value, std::move(sol));
  }
  return part;
}

}  // namespace

OracleResult brute_force_optimum(const Instance& inst, std::size_t max_n, unsigned threads) {
  const std::size_t n = inst.num_subsets();
  if (n > max_n || n >= 63) {
    throw LimitError(fmt::format("oracle refuses n = {} (limit {})", n, std::min<std::size_t>(max_n, 62)));
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  // Small spaces are not worth a thread.
  if (total < (1U << 12)) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));

  std::vector<Partial> parts(threads);
  if (threads == 1) {
    parts[0] = enumerate_range(inst, 0, total);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = std::min(total, chunk * t);
      const std::uint64_t end = std::min(total, begin + chunk);
      pool.emplace_back([&inst, &parts, t, begin, end] { parts[t] = enumerate_range(inst, begin, end); });
    }
    for (auto& th : pool) th.join();
  }
  Partial all;
  for (auto& p : parts) all.merge(std::move(p));
  if (!all.optimum) {
    ElementId bad = 0;
    for (ElementId k = 0; k < inst.num_elements(); ++k) {
      if (inst.coverers(k).empty()) {
        bad = k;
        break;
      }
    }
    throw InfeasibleError(bad, fmt::format("no selection covers '{}'", inst.name()));
  }
  return {*all.optimum, std::move(*all.witness), all.count};
}

}  // namespace scpcs
