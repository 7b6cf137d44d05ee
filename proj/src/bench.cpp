#include "scpcs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <numeric>
#include <thread>

#include <fmt/format.h>

namespace scpcs {

Ratio Ratio::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DataError("ratio with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

namespace {

std::int64_t mul100(Cost v) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(v, std::int64_t{100}, &out)) throw OverflowError("deviation overflow");
  return out;
}

std::int64_t sub(Cost a, Cost b) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("deviation overflow");
  return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DataError(fmt::format("bad integer '{}' for {}", s, what));
  }
  return v;
}

double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DataError(fmt::format("bad number '{}' for {}", s, what));
  }
  return v;
}

std::optional<std::int64_t> parse_opt_int(std::string_view s, std::string_view what) {
  if (trim(s).empty()) return std::nullopt;
  return parse_int(s, what);
}

std::optional<double> parse_opt_double(std::string_view s, std::string_view what) {
  if (trim(s).empty()) return std::nullopt;
  return parse_double(s, what);
}

template <typename T>
std::string opt_int(const std::optional<T>& v) {
  return v ? fmt::format("{}", *v) : std::string{};
}

std::string opt_fixed(const std::optional<double>& v, int digits) {
  return v ? fmt::format("{:.{}f}", *v, digits) : std::string{};
}

}  // namespace

std::optional<Ratio> deviation_lb_exact(Cost lb_bk, Cost lb_m) {
  if (lb_bk <= 0) return std::nullopt;
  return Ratio::make(mul100(sub(lb_bk, lb_m)), lb_bk);
}

std::optional<Ratio> deviation_ub_exact(Cost ub_bk, Cost ub_m) {
  if (ub_bk <= 0) return std::nullopt;
  return Ratio::make(mul100(sub(ub_m, ub_bk)), ub_bk);
}

std::optional<double> deviation_lb(Cost lb_bk, Cost lb_m) {
  auto r = deviation_lb_exact(lb_bk, lb_m);
  return r ? std::optional<double>(r->value()) : std::nullopt;
}

std::optional<double> deviation_ub(Cost ub_bk, Cost ub_m) {
  auto r = deviation_ub_exact(ub_bk, ub_m);
  return r ? std::optional<double>(r->value()) : std::nullopt;
}

// --- best known ---

BestKnownTable BestKnownTable::parse_csv(std::string_view text) {
  BestKnownTable table;
  auto lines = lines_of(text);
  if (lines.empty() || trim(lines[0]) != "instance,kappa,lb,ub") {
    throw DataError("best-known CSV must start with header 'instance,kappa,lb,ub'");
  }
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto f = split(lines[r], ',');
    if (f.size() != 4) throw DataError(fmt::format("best-known CSV line {}: expected 4 fields", r + 1));
    table.insert(std::string(trim(f[0])), parse_int(f[1], "kappa"),
                 {parse_int(f[2], "lb"), parse_int(f[3], "ub")});
  }
  return table;
}

BestKnownTable BestKnownTable::load(const std::filesystem::path& path) {
  return parse_csv(read_text_file(path));
}

void BestKnownTable::insert(const std::string& instance, std::int64_t kappa, BestKnown value) {
  if (value.lb > value.ub) {
    throw DataError(fmt::format("best-known entry {} (kappa {}): lb {} > ub {}", instance, kappa,
                                value.lb, value.ub));
  }
  entries_[{instance, kappa}] = value;
}

std::optional<BestKnown> BestKnownTable::find(const std::string& instance, std::int64_t kappa) const {
  auto it = entries_.find({instance, kappa});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

// --- statistics ---

std::vector<StatsRow> stats_report(std::span<const Instance> instances) {
  std::map<std::string, StatsRow> rows;
  for (const auto& inst : instances) {
    const auto& meta = inst.metadata();
    auto kappa_it = meta.find("kappa");
    if (kappa_it == meta.end()) {
      throw DataError(fmt::format("instance '{}' carries no kappa metadata", inst.name()));
    }
    const std::string base = record_instance_name(inst);
    auto [it, fresh] = rows.try_emplace(base);
    StatsRow& row = it->second;
    if (fresh) {
      row.instance = base;
      row.num_elements = inst.num_elements();
      row.num_subsets = inst.num_subsets();
    } else if (row.num_elements != inst.num_elements() || row.num_subsets != inst.num_subsets()) {
      throw DataError(fmt::format("instances of '{}' disagree on dimensions", base));
    }
    row.conflicts[parse_int(kappa_it->second, "kappa")] = inst.conflicts().size();
  }
  std::vector<StatsRow> out;
  out.reserve(rows.size());
  for (auto& [_, row] : rows) out.push_back(std::move(row));
  return out;
}

std::vector<StatsRow> stats_from_raw(std::span<const RawScpInstance> raws,
                                     std::span<const std::int64_t> kappas) {
  std::vector<StatsRow> out;
  out.reserve(raws.size());
  for (const auto& raw : raws) {
    const Instance merged = merge3(to_instance(raw));
    StatsRow row;
    row.instance = raw.name;
    row.num_elements = merged.num_elements();
    row.num_subsets = merged.num_subsets();
    for (auto kappa : kappas) row.conflicts[kappa] = count_conflicts(merged, kappa);
    out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end(),
            [](const StatsRow& a, const StatsRow& b) { return a.instance < b.instance; });
  return out;
}

std::string format_stats_table(std::span<const StatsRow> rows, std::span<const std::int64_t> kappas) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"instance", "|U|", "|N|"};
  for (auto k : kappas) header.push_back(fmt::format("|D| k={}", k));
  cells.push_back(header);
  for (const auto& row : rows) {
    std::vector<std::string> line{row.instance, std::to_string(row.num_elements),
                                  std::to_string(row.num_subsets)};
    for (auto k : kappas) {
      auto it = row.conflicts.find(k);
      line.push_back(it == row.conflicts.end() ? "-" : std::to_string(it->second));
    }
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::string out;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c == 0) {
        out += fmt::format("{:<{}}", line[c], width[c]);
      } else {
        out += fmt::format("  {:>{}}", line[c], width[c]);
      }
    }
    out += '\n';
  }
  return out;
}

// --- methods ---

namespace {

MethodOutcome from_report(const SolveReport& r) {
  MethodOutcome out;
  out.lower_bound = r.lower_bound;
  out.incumbent = r.incumbent;
  out.upper_bound = r.upper_bound;
  out.status = r.status;
  out.time_to_best = r.time_to_best;
  out.time_total = r.time_total;
  return out;
}

}  // namespace

Method exact_method(SolveConfig base) {
  return {"bnb", [base](const Instance& inst, Seconds limit) {
            SolveConfig cfg = base;
            cfg.time_limit = limit;
            return from_report(solve(inst, cfg));
          }};
}

Method exact_warm_method(SolveConfig base, GraspConfig warm) {
  return {"bnb-warm", [base, warm](const Instance& inst, Seconds limit) {
            const auto start = std::chrono::steady_clock::now();
            GraspConfig gcfg = warm;
            gcfg.time_limit = std::min(gcfg.time_limit, limit / 10.0);
            const GraspResult g = grasp(inst, gcfg);

            SolveConfig cfg = base;
            cfg.initial_upper_bound = g.total;
            const Seconds used = std::chrono::steady_clock::now() - start;
            cfg.time_limit = std::max(Seconds{1e-3}, limit - used);
            const SolveReport r = solve(inst, cfg);

            MethodOutcome out = from_report(r);
            out.time_total = std::chrono::steady_clock::now() - start;
            if (r.incumbent) {
              out.time_to_best = used + r.time_to_best;
            } else {
              out.incumbent = g.best;
              out.upper_bound = g.total;
              out.time_to_best = g.time_to_best;
              out.status = SolveStatus::kFeasible;
            }
            return out;
          }};
}

Method grasp_method(GraspConfig base) {
  return {"grasp", [base](const Instance& inst, Seconds limit) {
            GraspConfig cfg = base;
            cfg.time_limit = limit;
            const auto start = std::chrono::steady_clock::now();
            GraspResult g = grasp(inst, cfg);
            MethodOutcome out;
            out.upper_bound = g.total;
            out.incumbent = std::move(g.best);
            out.status = SolveStatus::kFeasible;
            out.time_to_best = g.time_to_best;
            out.time_total = std::chrono::steady_clock::now() - start;
            return out;
          }};
}

Method greedy_method() {
  return {"greedy", [](const Instance& inst, Seconds) {
            const auto start = std::chrono::steady_clock::now();
            Solution sol = local_search(inst, greedy_construct(inst));
            MethodOutcome out;
            out.upper_bound = evaluate(inst, sol).total;
            out.incumbent = std::move(sol);
            out.status = SolveStatus::kFeasible;
            out.time_total = out.time_to_best = std::chrono::steady_clock::now() - start;
            return out;
          }};
}

Method method_by_name(std::string_view name, const GraspConfig& grasp_cfg, const SolveConfig& solve_cfg) {
  if (name == "bnb") return exact_method(solve_cfg);
  if (name == "bnb-warm") return exact_warm_method(solve_cfg, grasp_cfg);
  if (name == "grasp") return grasp_method(grasp_cfg);
  if (name == "greedy") return greedy_method();
  throw DataError(fmt::format("unknown method '{}' (expected bnb, bnb-warm, grasp, greedy)", name));
}

std::string record_instance_name(const Instance& inst) {
  auto it = inst.metadata().find("base");
  return it != inst.metadata().end() && !it->second.empty() ? it->second : inst.name();
}

BenchRecord make_record(const std::string& instance, std::int64_t kappa, const std::string& method,
                        const MethodOutcome& outcome, const BestKnownTable* best_known) {
  BenchRecord rec;
  rec.instance_name = instance;
  rec.kappa = kappa;
  rec.method_name = method;
  rec.lower_bound = outcome.lower_bound;
  rec.upper_bound = outcome.upper_bound;
  rec.status = outcome.status;
  rec.time_to_best_s = outcome.time_to_best.count();
  rec.time_total_s = outcome.time_total.count();
  if (best_known != nullptr) {
    if (auto bk = best_known->find(instance, kappa)) {
      if (rec.lower_bound) rec.lb_deviation_pct = deviation_lb(bk->lb, *rec.lower_bound);
      if (rec.upper_bound) rec.ub_deviation_pct = deviation_ub(bk->ub, *rec.upper_bound);
    }
  }
  return rec;
}

std::vector<AggregateRow> aggregate(std::span<const BenchRecord> records) {
  struct Acc {
    double sum = 0;
    std::size_t n = 0;
    void add(double v) {
      sum += v;
      ++n;
    }
    std::optional<double> mean() const { return n ? std::optional<double>(sum / static_cast<double>(n)) : std::nullopt; }
  };
  struct MethodAcc {
    std::size_t records = 0;
    Acc lb, ub, ttb, tt, lbd, ubd;
  };
  std::map<std::string, MethodAcc> by_method;
  for (const auto& r : records) {
    auto& a = by_method[r.method_name];
    ++a.records;
    if (r.lower_bound) a.lb.add(static_cast<double>(*r.lower_bound));
    if (r.upper_bound) a.ub.add(static_cast<double>(*r.upper_bound));
    a.ttb.add(r.time_to_best_s);
    a.tt.add(r.time_total_s);
    if (r.lb_deviation_pct) a.lbd.add(*r.lb_deviation_pct);
    if (r.ub_deviation_pct) a.ubd.add(*r.ub_deviation_pct);
  }
  std::vector<AggregateRow> out;
  for (const auto& [name, a] : by_method) {
    AggregateRow row;
    row.method_name = name;
    row.records = a.records;
    row.lower_bound = a.lb.mean();
    row.upper_bound = a.ub.mean();
    row.time_to_best_s = a.ttb.mean();
    row.time_total_s = a.tt.mean();
    row.lb_deviation_pct = a.lbd.mean();
    row.ub_deviation_pct = a.ubd.mean();
    row.lb_deviation_count = a.lbd.n;
    row.ub_deviation_count = a.ubd.n;
    out.push_back(std::move(row));
  }
  return out;
}

SuiteResult run_suite(std::span<const SuiteEntry> entries, std::span<const Method> methods,
                      const SuiteConfig& cfg, const BestKnownTable* best_known) {
  const std::size_t tasks = entries.size() * methods.size();
  std::vector<BenchRecord> records(tasks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) {
      const auto& entry = entries[t / methods.size()];
      const auto& method = methods[t % methods.size()];
      const std::string name = record_instance_name(entry.instance);
      MethodOutcome outcome;
      try {
        outcome = method.run(entry.instance, cfg.time_limit);
        SolveReport as_report;
        as_report.lower_bound = outcome.lower_bound.value_or(0);
        as_report.upper_bound = outcome.upper_bound;
        as_report.incumbent = outcome.incumbent;
        as_report.status = outcome.status;
        if (!verify_certificate(entry.instance, as_report)) {
          outcome = MethodOutcome{};
        }
      } catch (const std::exception&) {
        outcome = MethodOutcome{};
      }
      records[t] = make_record(name, entry.kappa, method.name, outcome, best_known);
    }
  };

  const unsigned jobs = std::max(1U, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(std::max<std::size_t>(tasks, 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.instance_name, a.kappa, a.method_name) <
           std::tie(b.instance_name, b.kappa, b.method_name);
  });
  SuiteResult result;
  result.aggregates = aggregate(records);
  result.records = std::move(records);
  return result;
}

// --- CSV / text output ---

std::string write_results_csv(std::span<const BenchRecord> records,
                              std::span<const AggregateRow> aggregates, const CsvOptions& opts) {
  std::string out(kResultsHeader);
  out += '\n';
  auto time_field = [&opts](const std::optional<double>& v) {
    return opts.include_times ? opt_fixed(v, 6) : std::string{};
  };
  for (const auto& r : records) {
    if (r.instance_name.find(',') != std::string::npos || r.method_name.find(',') != std::string::npos) {
      throw DataError(fmt::format("cannot write '{}' to CSV: comma in name", r.instance_name));
    }
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.instance_name, r.kappa, r.method_name,
                       opt_int(r.lower_bound), opt_int(r.upper_bound), to_string(r.status),
                       time_field(r.time_to_best_s), time_field(r.time_total_s),
                       opt_fixed(r.lb_deviation_pct, 4), opt_fixed(r.ub_deviation_pct, 4));
  }
  for (const auto& a : aggregates) {
    out += fmt::format("{},,{},{},{},n={},{},{},{},{}\n", kAggregateInstance, a.method_name,
                       opt_fixed(a.lower_bound, 4), opt_fixed(a.upper_bound, 4), a.records,
                       time_field(a.time_to_best_s), time_field(a.time_total_s),
                       opt_fixed(a.lb_deviation_pct, 4), opt_fixed(a.ub_deviation_pct, 4));
  }
  return out;
}

ParsedResults read_results_csv(std::string_view text) {
  ParsedResults out;
  auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kResultsHeader) throw DataError("results CSV: missing or wrong header");
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto f = split(lines[r], ',');
    if (f.size() != 10) throw DataError(fmt::format("results CSV line {}: expected 10 fields", r + 1));
    if (f[0] == kAggregateInstance) {
      AggregateRow a;
      a.method_name = std::string(f[2]);
      a.lower_bound = parse_opt_double(f[3], "lb");
      a.upper_bound = parse_opt_double(f[4], "ub");
      if (!f[5].starts_with("n=")) throw DataError(fmt::format("results CSV line {}: bad count", r + 1));
      a.records = static_cast<std::size_t>(parse_int(f[5].substr(2), "count"));
      a.time_to_best_s = parse_opt_double(f[6], "time_to_best_s");
      a.time_total_s = parse_opt_double(f[7], "time_total_s");
      a.lb_deviation_pct = parse_opt_double(f[8], "lb_dev_pct");
      a.ub_deviation_pct = parse_opt_double(f[9], "ub_dev_pct");
      out.aggregates.push_back(std::move(a));
      continue;
    }
    BenchRecord rec;
    rec.instance_name = std::string(f[0]);
    rec.kappa = parse_int(f[1], "kappa");
    rec.method_name = std::string(f[2]);
    rec.lower_bound = parse_opt_int(f[3], "lb");
    rec.upper_bound = parse_opt_int(f[4], "ub");
    rec.status = parse_solve_status(f[5]);
    rec.time_to_best_s = parse_opt_double(f[6], "time_to_best_s").value_or(0.0);
    rec.time_total_s = parse_opt_double(f[7], "time_total_s").value_or(0.0);
    rec.lb_deviation_pct = parse_opt_double(f[8], "lb_dev_pct");
    rec.ub_deviation_pct = parse_opt_double(f[9], "ub_dev_pct");
    out.records.push_back(std::move(rec));
  }
  return out;
}

std::string format_results_table(std::span<const BenchRecord> records,
                                 std::span<const AggregateRow> aggregates) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"instance", "kappa", "method", "LB", "UB", "status", "heu[s]", "tot[s]", "LB dev%", "UB dev%"});
  for (const auto& r : records) {
    cells.push_back({r.instance_name, std::to_string(r.kappa), r.method_name, opt_int(r.lower_bound),
                     opt_int(r.upper_bound), to_string(r.status), fmt::format("{:.2f}", r.time_to_best_s),
                     fmt::format("{:.2f}", r.time_total_s), opt_fixed(r.lb_deviation_pct, 2),
                     opt_fixed(r.ub_deviation_pct, 2)});
  }
  for (const auto& a : aggregates) {
    cells.push_back({"average", "", a.method_name, opt_fixed(a.lower_bound, 2), opt_fixed(a.upper_bound, 2),
                     fmt::format("n={}", a.records), opt_fixed(a.time_to_best_s, 2),
                     opt_fixed(a.time_total_s, 2),
                     a.lb_deviation_pct ? fmt::format("{:.2f} ({})", *a.lb_deviation_pct, a.lb_deviation_count) : "",
                     a.ub_deviation_pct ? fmt::format("{:.2f} ({})", *a.ub_deviation_pct, a.ub_deviation_count) : ""});
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::string out;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out += "  ";
      out += c < 3 ? fmt::format("{:<{}}", line[c], width[c]) : fmt::format("{:>{}}", line[c], width[c]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

std::vector<std::pair<std::filesystem::path, std::int64_t>> parse_manifest(
    std::string_view text, const std::filesystem::path& base_dir) {
  std::vector<std::pair<std::filesystem::path, std::int64_t>> out;
  std::size_t lineno = 0;
  for (auto line : split(text, '\n')) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto sp = line.find_last_of(" \t");
    if (sp == std::string_view::npos) {
      throw DataError(fmt::format("manifest line {}: expected '<file> <kappa>'", lineno));
    }
    std::filesystem::path file{std::string(trim(line.substr(0, sp)))};
    if (file.is_relative()) file = base_dir / file;
    out.emplace_back(file, parse_int(line.substr(sp + 1), "kappa"));
  }
  return out;
}

}  // namespace scpcs
