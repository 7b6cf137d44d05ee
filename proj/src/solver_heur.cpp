#include "scpcs/solver_heur.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

namespace scpcs {
namespace {

constexpr std::int64_t kPpm = 1'000'000;
constexpr SubsetId kNoSubset = std::numeric_limits<SubsetId>::max();

// a_num / a_den < b_num / b_den with positive denominators.
bool ratio_less(Cost a_num, Cost a_den, Cost b_num, Cost b_den) {
  return static_cast<WideInt>(a_num) * b_den < static_cast<WideInt>(b_num) * a_den;
}

// Incrementally maintained selection: coverage counts, how many uncovered
// elements each subset would cover, and each subset's penalty against the
// current selection.
class SelectionState {
 public:
  explicit SelectionState(const Instance& inst)
      : inst_(inst),
        selected_(inst.num_subsets(), 0),
        cover_count_(inst.num_elements(), 0),
        uncovered_in_(inst.num_subsets(), 0),
        penalty_to_selected_(inst.num_subsets(), 0),
        uncovered_(inst.num_elements()) {
    for (SubsetId j = 0; j < inst.num_subsets(); ++j) {
      uncovered_in_[j] = static_cast<Cost>(inst.members(j).size());
    }
  }

  SelectionState(const Instance& inst, const Solution& sol) : SelectionState(inst) {
    for (SubsetId j : sol.selected()) add(j);
  }

  void add(SubsetId j) {
    assert(!selected_[j]);
    selected_[j] = 1;
    ++size_;
    total_ = checked_add(total_, checked_add(inst_.cost(j), penalty_to_selected_[j]));
    for (const auto& e : inst_.adjacency(j)) penalty_to_selected_[e.partner] += e.penalty;
    for (ElementId k : inst_.members(j)) {
      if (cover_count_[k]++ == 0) {
        --uncovered_;
        for (SubsetId q : inst_.coverers(k)) --uncovered_in_[q];
      }
    }
  }

  void remove(SubsetId j) {
    assert(selected_[j]);
    selected_[j] = 0;
    --size_;
    for (ElementId k : inst_.members(j)) {
      if (--cover_count_[k] == 0) {
        ++uncovered_;
        for (SubsetId q : inst_.coverers(k)) ++uncovered_in_[q];
      }
    }
    for (const auto& e : inst_.adjacency(j)) penalty_to_selected_[e.partner] -= e.penalty;
    total_ -= inst_.cost(j) + penalty_to_selected_[j];
  }

  bool selected(SubsetId j) const { return selected_[j] != 0; }
  std::uint32_t cover_count(ElementId k) const { return cover_count_[k]; }
  Cost uncovered_in(SubsetId j) const { return uncovered_in_[j]; }
  // Cost j adds (or would add) on top of the other selected subsets.
  Cost contribution(SubsetId j) const { return inst_.cost(j) + penalty_to_selected_[j]; }
  Cost penalty_to_selected(SubsetId j) const { return penalty_to_selected_[j]; }
  std::size_t uncovered() const { return uncovered_; }
  Cost total() const { return total_; }

  bool redundant(SubsetId j) const {
    for (ElementId k : inst_.members(j)) {
      if (cover_count_[k] < 2) return false;
    }
    return true;
  }

  Solution solution() const {
    std::vector<SubsetId> ids;
    ids.reserve(size_);
    for (SubsetId j = 0; j < selected_.size(); ++j) {
      if (selected_[j]) ids.push_back(j);
    }
    return Solution(std::move(ids));
  }

  // Rescan check for the incremental penalty bookkeeping.
  bool consistent() const {
    Solution sol = solution();
    if (evaluate(inst_, sol).total != total_) return false;
    for (SubsetId j = 0; j < selected_.size(); ++j) {
      Cost p = 0;
      for (const auto& e : inst_.adjacency(j)) p += selected_[e.partner] ? e.penalty : 0;
      if (p != penalty_to_selected_[j]) return false;
    }
    return true;
  }

 private:
  const Instance& inst_;
  std::vector<std::uint8_t> selected_;
  std::vector<std::uint32_t> cover_count_;
  std::vector<Cost> uncovered_in_;
  std::vector<Cost> penalty_to_selected_;
  std::size_t uncovered_;
  std::size_t size_ = 0;
  Cost total_ = 0;
};

void require_coverable(const Instance& inst) {
  for (ElementId k = 0; k < inst.num_elements(); ++k) {
    if (inst.coverers(k).empty()) {
      throw InfeasibleError(k, fmt::format("element {} of '{}' has no coverer", k, inst.name()));
    }
  }
}

// Removes redundant subsets, most expensive contribution first.
void drop_redundant(const Instance& inst, SelectionState& state) {
  for (;;) {
    std::optional<SubsetId> victim;
    Cost worst = -1;
    for (SubsetId j = 0; j < inst.num_subsets(); ++j) {
      if (!state.selected(j) || !state.redundant(j)) continue;
      const Cost c = state.contribution(j);
      if (c > worst) {
        worst = c;
        victim = j;
      }
    }
    if (!victim) return;
    state.remove(*victim);
  }
}

Solution construct(const Instance& inst, const Rcl* rcl) {
  require_coverable(inst);
  SelectionState state(inst);
  std::vector<SubsetId> candidates;
  while (state.uncovered() > 0) {
    candidates.clear();
    std::optional<SubsetId> best;
    std::optional<SubsetId> worst;
    for (SubsetId j = 0; j < inst.num_subsets(); ++j) {
      if (state.selected(j) || state.uncovered_in(j) == 0) continue;
      candidates.push_back(j);
      const Cost w = state.contribution(j);
      const Cost s = state.uncovered_in(j);
      if (!best || ratio_less(w, s, state.contribution(*best), state.uncovered_in(*best))) best = j;
      if (!worst || ratio_less(state.contribution(*worst), state.uncovered_in(*worst), w, s)) worst = j;
    }
    assert(best);
    SubsetId pick = *best;
    if (rcl != nullptr && rcl->rng != nullptr && rcl->alpha_ppm > 0) {
      // Keep j when score_j - best <= alpha * (worst - best), cross-multiplied.
      const WideInt bn = state.contribution(*best), bd = state.uncovered_in(*best);
      const WideInt wn = state.contribution(*worst), wd = state.uncovered_in(*worst);
      const WideInt span = wn * bd - bn * wd;  // (worst - best) * bd * wd
      std::vector<SubsetId> pool;
      for (SubsetId j : candidates) {
        const WideInt a = state.contribution(j), b = state.uncovered_in(j);
        const WideInt lhs = static_cast<WideInt>(kPpm) * (a * bd - bn * b) * wd;
        const WideInt rhs = static_cast<WideInt>(rcl->alpha_ppm) * span * b;
        if (lhs <= rhs) pool.push_back(j);
      }
      pick = pool[(*rcl->rng)() % pool.size()];
    }
    state.add(pick);
  }
  drop_redundant(inst, state);
  assert(state.consistent());
  return state.solution();
}

}  // namespace

std::int64_t alpha_to_ppm(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument(fmt::format("rcl alpha must be in [0, 1], got {}", alpha));
  }
  return static_cast<std::int64_t>(std::llround(alpha * static_cast<double>(kPpm)));
}

Solution greedy_construct(const Instance& inst) { return construct(inst, nullptr); }

Solution greedy_construct(const Instance& inst, const Rcl& rcl) { return construct(inst, &rcl); }

Solution local_search(const Instance& inst, const Solution& sol) {
  if (!is_cover(inst, sol)) throw DataError("local_search: input is not a cover");
  SelectionState state(inst, sol);
  std::vector<char> unique_mark(inst.num_elements(), 0);
  std::vector<ElementId> unique;

  for (;;) {
    Cost best_delta = 0;
    SubsetId best_out = 0;
    SubsetId best_in = kNoSubset;
    bool found = false;

    for (SubsetId j = 0; j < inst.num_subsets(); ++j) {
      if (!state.selected(j)) continue;
      const Cost leave = state.contribution(j);
      unique.clear();
      for (ElementId k : inst.members(j)) {
        if (state.cover_count(k) == 1) unique.push_back(k);
      }
      if (unique.empty()) {
        if (-leave < best_delta) {
          best_delta = -leave;
          best_out = j;
          best_in = kNoSubset;
          found = true;
        }
        continue;
      }
      for (ElementId k : unique) unique_mark[k] = 1;
      for (SubsetId q : inst.coverers(unique.front())) {
        if (state.selected(q)) continue;
        std::size_t hits = 0;
        for (ElementId k : inst.members(q)) hits += unique_mark[k];
        if (hits != unique.size()) continue;
        const Cost enter = inst.cost(q) + state.penalty_to_selected(q) - inst.penalty(q, j);
        const Cost delta = enter - leave;
        if (delta < best_delta) {
          best_delta = delta;
          best_out = j;
          best_in = q;
          found = true;
        }
      }
      for (ElementId k : unique) unique_mark[k] = 0;
    }

    if (!found) break;
    const Cost before = state.total();
    state.remove(best_out);
    if (best_in != kNoSubset) state.add(best_in);
    assert(state.total() == before + best_delta);
    (void)before;
  }
  assert(state.consistent());
  return state.solution();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GraspResult grasp(const Instance& inst, const GraspConfig& cfg) {
  if (cfg.iterations < 1) throw std::invalid_argument("grasp: iterations must be >= 1");
  const std::int64_t ppm = alpha_to_ppm(cfg.rcl_alpha);
  require_coverable(inst);
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  GraspResult result;
  bool have = false;
  for (std::uint64_t t = 0; t < cfg.iterations; ++t) {
    if (t > 0 && Clock::now() - start >= cfg.time_limit) break;
    std::mt19937_64 rng(mix_seed(cfg.seed, t));
    Solution sol = local_search(inst, greedy_construct(inst, Rcl{ppm, &rng}));
    const Cost total = evaluate(inst, sol).total;
    ++result.iterations_run;
    if (!have || total < result.total) {
      have = true;
      result.best = std::move(sol);
      result.total = total;
      result.iteration_found = t;
      result.time_to_best = Clock::now() - start;
    }
  }
  return result;
}

}  // namespace scpcs
