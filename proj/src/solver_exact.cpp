#include "scpcs/solver_exact.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace scpcs {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnknown: return "unknown";
  }
  return "unknown";
}

SolveStatus parse_solve_status(std::string_view text) {
  if (text == "optimal") return SolveStatus::kOptimal;
  if (text == "feasible") return SolveStatus::kFeasible;
  if (text == "infeasible") return SolveStatus::kInfeasible;
  if (text == "unknown") return SolveStatus::kUnknown;
  throw DataError(fmt::format("unknown solve status '{}'", text));
}

namespace detail {

namespace {
constexpr WideInt kMaxDen = static_cast<WideInt>(1) << 62;

WideInt gcd128(WideInt a, WideInt b) {
  while (b != 0) {
    WideInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}
}  // namespace

void FractionFloorSum::add(Cost num, Cost den) {
  assert(num >= 0 && den > 0);
  whole_ = checked_add(whole_, num / den);
  const Cost rem = num % den;
  if (rem == 0) return;
  WideInt n = frac_num_ * den + static_cast<WideInt>(rem) * frac_den_;
  WideInt d = frac_den_ * den;
  const WideInt g = gcd128(n, d);
  n /= g;
  d /= g;
  whole_ = checked_add(whole_, static_cast<Cost>(n / d));
  n %= d;
  frac_num_ = n;
  frac_den_ = d;
  if (frac_den_ > kMaxDen) flush_fraction();
}

void FractionFloorSum::flush_fraction() {
  // Dropping a value in [0, 1) keeps the floor a lower bound.
  frac_num_ = 0;
  frac_den_ = 1;
}

Cost FractionFloorSum::floor() const { return whole_; }

}  // namespace detail

namespace {

// cost_a / size_a < cost_b / size_b, exactly.
bool ratio_less(Cost cost_a, Cost size_a, Cost cost_b, Cost size_b) {
  return static_cast<WideInt>(cost_a) * size_b < static_cast<WideInt>(cost_b) * size_a;
}

enum : std::uint8_t { kFree = 0, kSelected = 1, kExcluded = 2 };

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const SolveConfig& cfg)
      : inst_(inst),
        cfg_(cfg),
        n_(inst.num_subsets()),
        m_(inst.num_elements()),
        state_(n_, kFree),
        cover_count_(m_, 0),
        available_(m_, 0),
        uncovered_in_(n_, 0),
        penalty_to_selected_(n_, 0),
        uncovered_(m_),
        start_(Clock::now()) {
    for (ElementId k = 0; k < m_; ++k) available_[k] = static_cast<std::uint32_t>(inst.coverers(k).size());
    for (SubsetId j = 0; j < n_; ++j) {
      std::uint32_t c = 0;
      for (ElementId k : inst.members(j)) c += (k < m_);
      uncovered_in_[j] = c;
    }
    if (cfg.initial_upper_bound) {
      warm_threshold_ = checked_add(*cfg.initial_upper_bound, 1);
    }
  }

  SolveReport run() {
    SolveReport report;
    search();
    report.nodes_explored = nodes_;
    report.time_total = Clock::now() - start_;
    report.time_to_best = time_to_best_;
    if (incumbent_) {
      report.incumbent = Solution(*incumbent_);
      report.upper_bound = incumbent_value_;
    }
    const Cost threshold = current_threshold();
    if (!stopped_) {
      report.lower_bound = threshold == kInf ? 0 : threshold;
      report.status = incumbent_ ? SolveStatus::kOptimal : SolveStatus::kUnknown;
    } else {
      Cost lb = std::min(open_bound_, threshold);
      report.lower_bound = lb == kInf ? root_bound_.value_or(0) : lb;
      report.status = incumbent_ ? SolveStatus::kFeasible : SolveStatus::kUnknown;
    }
    return report;
  }

 private:
  using Clock = std::chrono::steady_clock;
  static constexpr Cost kInf = std::numeric_limits<Cost>::max();

  Cost current_threshold() const {
    Cost t = kInf;
    if (incumbent_) t = incumbent_value_;
    if (warm_threshold_) t = std::min(t, *warm_threshold_);
    return t;
  }

  bool should_stop() {
    if (stopped_) return true;
    if (cfg_.stop != nullptr && cfg_.stop->load(std::memory_order_relaxed)) stopped_ = true;
    if (cfg_.node_limit && nodes_ >= *cfg_.node_limit) stopped_ = true;
    if ((nodes_ & 255U) == 0 && Clock::now() - start_ >= cfg_.time_limit) stopped_ = true;
    return stopped_;
  }

  void select(SubsetId j) {
    state_[j] = kSelected;
    cost_ = checked_add(cost_, inst_.cost(j));
    penalty_ = checked_add(penalty_, penalty_to_selected_[j]);
    for (const auto& e : inst_.adjacency(j)) penalty_to_selected_[e.partner] += e.penalty;
    for (ElementId k : inst_.members(j)) {
      --available_[k];
      if (cover_count_[k]++ == 0) {
        --uncovered_;
        for (SubsetId q : inst_.coverers(k)) --uncovered_in_[q];
      }
    }
  }

  void unselect(SubsetId j) {
    for (ElementId k : inst_.members(j)) {
      ++available_[k];
      if (--cover_count_[k] == 0) {
        ++uncovered_;
        for (SubsetId q : inst_.coverers(k)) ++uncovered_in_[q];
      }
    }
    for (const auto& e : inst_.adjacency(j)) penalty_to_selected_[e.partner] -= e.penalty;
    penalty_ -= penalty_to_selected_[j];
    cost_ -= inst_.cost(j);
    state_[j] = kFree;
  }

  void exclude(SubsetId j) {
    state_[j] = kExcluded;
    for (ElementId k : inst_.members(j)) --available_[k];
  }

  void include_back(SubsetId j) {
    for (ElementId k : inst_.members(j)) ++available_[k];
    state_[j] = kFree;
  }

  Cost weight(SubsetId j) const {
    return cfg_.use_completion_bound ? inst_.cost(j) + penalty_to_selected_[j] : inst_.cost(j);
  }

  // nullopt when an uncovered element has no free coverer.
  std::optional<Cost> bound() const {
    const Cost base = cost_ + penalty_;
    if (!cfg_.use_completion_bound) return base;
    detail::FractionFloorSum sum;
    for (ElementId k = 0; k < m_; ++k) {
      if (cover_count_[k] != 0) continue;
      Cost best_num = -1;
      Cost best_den = 1;
      for (SubsetId j : inst_.coverers(k)) {
        if (state_[j] != kFree) continue;
        const Cost w = weight(j);
        const Cost s = uncovered_in_[j];
        if (best_num < 0 || ratio_less(w, s, best_num, best_den)) {
          best_num = w;
          best_den = s;
        }
      }
      if (best_num < 0) return std::nullopt;
      sum.add(best_num, best_den);
    }
    return checked_add(base, sum.floor());
  }

  void record_leaf() {
    const Cost total = cost_ + penalty_;
    if (total >= current_threshold()) return;
    std::vector<SubsetId> sel;
    for (SubsetId j = 0; j < n_; ++j) {
      if (state_[j] == kSelected) sel.push_back(j);
    }
    assert(evaluate(inst_, Solution(sel)).total == total);
    incumbent_ = std::move(sel);
    incumbent_value_ = total;
    time_to_best_ = Clock::now() - start_;
  }

  void search() {
    ++nodes_;
    if (uncovered_ == 0) {
      record_leaf();
      return;
    }
    const auto node_bound = bound();
    if (!node_bound) return;
    if (!root_bound_) root_bound_ = *node_bound;
    if (*node_bound >= current_threshold()) return;

    // Branch on the uncovered element with the fewest free coverers.
    ElementId pivot = 0;
    std::uint32_t fewest = std::numeric_limits<std::uint32_t>::max();
    for (ElementId k = 0; k < m_; ++k) {
      if (cover_count_[k] == 0 && available_[k] < fewest) {
        fewest = available_[k];
        pivot = k;
        if (fewest <= 1) break;
      }
    }
    std::vector<SubsetId> children;
    children.reserve(fewest);
    for (SubsetId j : inst_.coverers(pivot)) {
      if (state_[j] == kFree) children.push_back(j);
    }
    std::stable_sort(children.begin(), children.end(), [this](SubsetId a, SubsetId b) {
      const Cost wa = inst_.cost(a) + penalty_to_selected_[a];
      const Cost wb = inst_.cost(b) + penalty_to_selected_[b];
      return ratio_less(wa, uncovered_in_[a], wb, uncovered_in_[b]);
    });

    // Child t selects children[t] and excludes children[0..t).
    std::size_t t = 0;
    for (; t < children.size(); ++t) {
      if (should_stop()) {
        open_bound_ = std::min(open_bound_, *node_bound);
        break;
      }
      select(children[t]);
      search();
      unselect(children[t]);
      exclude(children[t]);
      if (stopped_) {
        if (t + 1 < children.size()) open_bound_ = std::min(open_bound_, *node_bound);
        ++t;
        break;
      }
      if (*node_bound >= current_threshold()) {
        ++t;
        break;
      }
    }
    for (std::size_t q = 0; q < t && q < children.size(); ++q) include_back(children[q]);
  }

  const Instance& inst_;
  const SolveConfig& cfg_;
  const std::size_t n_;
  const std::size_t m_;
  std::vector<std::uint8_t> state_;
  std::vector<std::uint32_t> cover_count_;
  std::vector<std::uint32_t> available_;
  std::vector<std::uint32_t> uncovered_in_;
  std::vector<Cost> penalty_to_selected_;
  std::size_t uncovered_;
  Cost cost_ = 0;
  Cost penalty_ = 0;

  std::optional<std::vector<SubsetId>> incumbent_;
  Cost incumbent_value_ = kInf;
  std::optional<Cost> warm_threshold_;
  std::optional<Cost> root_bound_;
  Cost open_bound_ = kInf;
  bool stopped_ = false;
  std::uint64_t nodes_ = 0;
  Clock::time_point start_;
  Seconds time_to_best_{0.0};
};

}  // namespace

SolveReport solve(const Instance& inst, const SolveConfig& cfg) {
  if (!(cfg.time_limit.count() > 0)) throw DataError("solve: time_limit must be positive");
  const auto start = std::chrono::steady_clock::now();
  for (ElementId k = 0; k < inst.num_elements(); ++k) {
    if (inst.coverers(k).empty()) {
      SolveReport report;
      report.status = SolveStatus::kInfeasible;
      report.uncoverable_element = k;
      report.time_total = std::chrono::steady_clock::now() - start;
      return report;
    }
  }
  BranchAndBound bnb(inst, cfg);
  return bnb.run();
}

std::optional<Cost> node_lower_bound(const Instance& inst, const PartialSelection& state) {
  const std::size_t n = inst.num_subsets();
  const std::size_t m = inst.num_elements();
  std::vector<std::uint8_t> status(n, kFree);
  for (SubsetId j : state.excluded) {
    if (j >= n) throw DataError(fmt::format("node_lower_bound: subset {} out of range", j));
    status[j] = kExcluded;
  }
  for (SubsetId j : state.selected) {
    if (j >= n) throw DataError(fmt::format("node_lower_bound: subset {} out of range", j));
    if (status[j] == kExcluded) throw DataError(fmt::format("subset {} both selected and excluded", j));
    status[j] = kSelected;
  }
  const Solution sel(state.selected);
  const Cost base = evaluate(inst, sel).total;

  std::vector<char> covered(m, 0);
  for (SubsetId j : sel.selected()) {
    for (ElementId k : inst.members(j)) covered[k] = 1;
  }
  std::vector<Cost> uncovered_in(n, 0);
  for (SubsetId j = 0; j < n; ++j) {
    for (ElementId k : inst.members(j)) uncovered_in[j] += !covered[k];
  }
  detail::FractionFloorSum sum;
  for (ElementId k = 0; k < m; ++k) {
    if (covered[k]) continue;
    Cost best_num = -1;
    Cost best_den = 1;
    for (SubsetId j : inst.coverers(k)) {
      if (status[j] != kFree) continue;
      Cost w = inst.cost(j);
      for (SubsetId s : sel.selected()) w = checked_add(w, inst.penalty(j, s));
      if (best_num < 0 || ratio_less(w, uncovered_in[j], best_num, best_den)) {
        best_num = w;
        best_den = uncovered_in[j];
      }
    }
    if (best_num < 0) return std::nullopt;
    sum.add(best_num, best_den);
  }
  return checked_add(base, sum.floor());
}

CertificateCheck verify_certificate(const Instance& inst, const SolveReport& report) {
  auto fail = [](std::string why) { return CertificateCheck{false, std::move(why)}; };
  if (report.upper_bound.has_value() != report.incumbent.has_value()) {
    return fail("upper bound and incumbent must be reported together");
  }
  if (report.incumbent) {
    const auto& sol = *report.incumbent;
    if (!sol.empty() && sol.ids().back() >= inst.num_subsets()) return fail("incumbent has invalid subset id");
    if (!is_cover(inst, sol)) return fail("not a cover");
    const Cost value = evaluate(inst, sol).total;
    if (value != *report.upper_bound) {
      return fail(fmt::format("objective mismatch: reported {} but incumbent evaluates to {}",
                              *report.upper_bound, value));
    }
    if (report.lower_bound > *report.upper_bound) {
      return fail(fmt::format("lower bound {} exceeds upper bound {}", report.lower_bound, value));
    }
  }
  switch (report.status) {
    case SolveStatus::kOptimal:
      if (!report.incumbent) return fail("optimal status without incumbent");
      if (report.lower_bound != *report.upper_bound) {
        return fail(fmt::format("optimal status but lower bound {} != upper bound {}",
                                report.lower_bound, *report.upper_bound));
      }
      break;
    case SolveStatus::kFeasible:
      if (!report.incumbent) return fail("feasible status without incumbent");
      break;
    case SolveStatus::kInfeasible: {
      bool uncoverable = false;
      for (ElementId k = 0; k < inst.num_elements(); ++k) uncoverable |= inst.coverers(k).empty();
      if (!uncoverable) return fail("infeasible status but every element is coverable");
      break;
    }
    case SolveStatus::kUnknown:
      break;
  }
  return {true, {}};
}

}  // namespace scpcs
