#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scpcs/core.hpp"
#include "scpcs/ingest.hpp"
#include "scpcs/solver_exact.hpp"
#include "scpcs/solver_heur.hpp"
#include "scpcs/transform.hpp"

namespace scpcs {

// Exact rational number with positive denominator, kept reduced.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Ratio operator-() const { return {-num, den}; }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

// 100 * (lb_bk - lb_m) / lb_bk and 100 * (ub_m - ub_bk) / ub_bk. Absent when
// the reference is not positive.
std::optional<Ratio> deviation_lb_exact(Cost lb_bk, Cost lb_m);
std::optional<Ratio> deviation_ub_exact(Cost ub_bk, Cost ub_m);
std::optional<double> deviation_lb(Cost lb_bk, Cost lb_m);
std::optional<double> deviation_ub(Cost ub_bk, Cost ub_m);

struct BestKnown {
  Cost lb = 0;
  Cost ub = 0;
};

class BestKnownTable {
 public:
  // CSV with header "instance,kappa,lb,ub". Throws DataError on bad rows or lb > ub.
  static BestKnownTable parse_csv(std::string_view text);
  static BestKnownTable load(const std::filesystem::path& path);

  void insert(const std::string& instance, std::int64_t kappa, BestKnown value);
  std::optional<BestKnown> find(const std::string& instance, std::int64_t kappa) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<std::string, std::int64_t>, BestKnown> entries_;
};

struct BenchRecord {
  std::string instance_name;
  std::int64_t kappa = 0;
  std::string method_name;
  std::optional<Cost> lower_bound;
  std::optional<Cost> upper_bound;
  SolveStatus status = SolveStatus::kUnknown;
  double time_to_best_s = 0.0;
  double time_total_s = 0.0;
  std::optional<double> lb_deviation_pct;
  std::optional<double> ub_deviation_pct;
};

// Per-method averages over the records where each column is defined.
struct AggregateRow {
  std::string method_name;
  std::size_t records = 0;
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  std::optional<double> time_to_best_s;
  std::optional<double> time_total_s;
  std::optional<double> lb_deviation_pct;
  std::optional<double> ub_deviation_pct;
  std::size_t lb_deviation_count = 0;
  std::size_t ub_deviation_count = 0;
};

// --- Table-I style statistics ---

struct StatsRow {
  std::string instance;
  std::size_t num_elements = 0;
  std::size_t num_subsets = 0;
  std::map<std::int64_t, std::size_t> conflicts;  // kappa -> |D|
};

// Rows from generated instances; grouped by their "base" metadata (or name)
// and keyed by their "kappa" metadata. Sorted by instance name.
std::vector<StatsRow> stats_report(std::span<const Instance> instances);

// Same rows computed straight from OR-Library data without materializing the
// conflict lists.
std::vector<StatsRow> stats_from_raw(std::span<const RawScpInstance> raws,
                                     std::span<const std::int64_t> kappas);

std::string format_stats_table(std::span<const StatsRow> rows, std::span<const std::int64_t> kappas);

// --- suite runs ---

struct MethodOutcome {
  std::optional<Cost> lower_bound;
  std::optional<Solution> incumbent;
  std::optional<Cost> upper_bound;
  SolveStatus status = SolveStatus::kUnknown;
  Seconds time_to_best{0.0};
  Seconds time_total{0.0};
};

struct Method {
  std::string name;
  std::function<MethodOutcome(const Instance&, Seconds time_limit)> run;
};

Method exact_method(SolveConfig base = {});
// GRASP warm start followed by branch-and-bound under the same time budget.
Method exact_warm_method(SolveConfig base = {}, GraspConfig warm = {});
Method grasp_method(GraspConfig base = {});
Method greedy_method();
// "bnb", "bnb-warm", "grasp", "greedy". Throws DataError otherwise.
Method method_by_name(std::string_view name, const GraspConfig& grasp_cfg = {},
                      const SolveConfig& solve_cfg = {});

struct SuiteEntry {
  Instance instance;
  std::int64_t kappa = 0;
};

struct SuiteConfig {
  Seconds time_limit{3600.0};
  unsigned jobs = 1;
};

struct SuiteResult {
  std::vector<BenchRecord> records;
  std::vector<AggregateRow> aggregates;
};

// Every (instance, method) pair runs on its own under the time limit. A
// method that throws, or whose incumbent fails certification, yields a
// record with status unknown. Records are sorted by (instance, kappa, method).
SuiteResult run_suite(std::span<const SuiteEntry> entries, std::span<const Method> methods,
                      const SuiteConfig& cfg, const BestKnownTable* best_known = nullptr);

std::string record_instance_name(const Instance& inst);

BenchRecord make_record(const std::string& instance, std::int64_t kappa, const std::string& method,
                        const MethodOutcome& outcome, const BestKnownTable* best_known);

std::vector<AggregateRow> aggregate(std::span<const BenchRecord> records);

struct CsvOptions {
  // Wall-clock columns are left empty when false, making output reproducible.
  bool include_times = true;
};

inline constexpr std::string_view kResultsHeader =
    "instance,kappa,method,lb,ub,status,time_to_best_s,time_total_s,lb_dev_pct,ub_dev_pct";
inline constexpr std::string_view kAggregateInstance = "AVERAGE";

std::string write_results_csv(std::span<const BenchRecord> records,
                              std::span<const AggregateRow> aggregates, const CsvOptions& opts = {});

struct ParsedResults {
  std::vector<BenchRecord> records;
  std::vector<AggregateRow> aggregates;
};
ParsedResults read_results_csv(std::string_view text);

std::string format_results_table(std::span<const BenchRecord> records,
                                 std::span<const AggregateRow> aggregates);

// Manifest lines: "<scpcs-file> <kappa>"; '#' starts a comment. Relative
// paths resolve against `base_dir`.
std::vector<std::pair<std::filesystem::path, std::int64_t>> parse_manifest(
    std::string_view text, const std::filesystem::path& base_dir);

}  // namespace scpcs
