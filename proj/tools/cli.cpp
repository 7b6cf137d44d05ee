#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "scpcs/bench.hpp"
#include "scpcs/core.hpp"
#include "scpcs/ingest.hpp"
#include "scpcs/oracle.hpp"
#include "scpcs/solver_exact.hpp"
#include "scpcs/solver_heur.hpp"
#include "scpcs/transform.hpp"

namespace scpcs::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string ids_1based(const Solution& sol) {
  std::string out;
  for (SubsetId j : sol.selected()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(j + 1);
  }
  return out;
}

std::int64_t kappa_of(const Instance& inst) {
  auto it = inst.metadata().find("kappa");
  if (it == inst.metadata().end()) return 0;
  try {
    return std::stoll(it->second);
  } catch (const std::exception&) {
    return 0;
  }
}

template <typename T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json record_json(const BenchRecord& r) {
  return json{{"instance", r.instance_name},
              {"kappa", r.kappa},
              {"method", r.method_name},
              {"lb", opt_json(r.lower_bound)},
              {"ub", opt_json(r.upper_bound)},
              {"status", to_string(r.status)},
              {"time_to_best_s", r.time_to_best_s},
              {"time_total_s", r.time_total_s},
              {"lb_dev_pct", opt_json(r.lb_deviation_pct)},
              {"ub_dev_pct", opt_json(r.ub_deviation_pct)}};
}

struct ParseArgs {
  std::string file;
};

int cmd_parse(const ParseArgs& a, std::ostream& out) {
  const RawScpInstance raw = load_orlib(a.file);
  const Instance inst = to_instance(raw);
  out << fmt::format("m={} n={}\n", raw.num_rows, raw.num_cols);
  const auto findings = validate_instance(inst);
  if (findings.empty()) {
    out << "valid\n";
  } else {
    for (const auto& v : findings) out << v.message << '\n';
  }
  return kSuccess;
}

struct TransformArgs {
  std::string file;
  std::int64_t kappa = 1;
  std::string rounding = "round-half-up";
  std::string basis = "merged";
  std::string output;
};

int cmd_transform(const TransformArgs& a, std::ostream& out) {
  TransformParams params;
  params.kappa = a.kappa;
  params.rounding = parse_gamma_rounding(a.rounding);
  params.basis = a.basis == "original" ? GammaBasis::kOriginal : GammaBasis::kMerged;
  const Instance inst = pipeline(load_orlib(a.file), params);
  out << fmt::format("n={} |D|={} gamma={} ({}, {})\n", inst.num_subsets(), inst.conflicts().size(),
                     inst.metadata().at("gamma"), to_string(params.rounding), to_string(params.basis));
  if (!a.output.empty()) write_text_file(a.output, write_canonical(inst));
  return kSuccess;
}

struct SolveArgs {
  std::string file;
  double time_limit = 3600.0;
  std::uint64_t node_limit = 0;
  bool warm_start = false;
  std::uint64_t seed = 1;
  std::string jsonl;
  bool json_stdout = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Instance inst = load_canonical(a.file);
  SolveConfig cfg;
  cfg.time_limit = Seconds{a.time_limit};
  if (a.node_limit > 0) cfg.node_limit = a.node_limit;
  GraspConfig warm;
  warm.seed = a.seed;
  const Method method = a.warm_start ? exact_warm_method(cfg, warm) : exact_method(cfg);

  MethodOutcome outcome;
  if (!a.warm_start) {
    // Direct call keeps node counts and the infeasibility witness.
    const SolveReport report = solve(inst, cfg);
    if (report.status == SolveStatus::kInfeasible) {
      err << fmt::format("infeasible: element {} has no coverer\n", *report.uncoverable_element + 1);
      return kInfeasible;
    }
    outcome.lower_bound = report.lower_bound;
    outcome.upper_bound = report.upper_bound;
    outcome.incumbent = report.incumbent;
    outcome.status = report.status;
    outcome.time_to_best = report.time_to_best;
    outcome.time_total = report.time_total;
    out << fmt::format("nodes={}\n", report.nodes_explored);
  } else {
    outcome = method.run(inst, cfg.time_limit);
  }

  out << fmt::format("status={}\n", to_string(outcome.status));
  out << fmt::format("lower_bound={}\n", outcome.lower_bound.value_or(0));
  out << (outcome.upper_bound ? fmt::format("upper_bound={}\n", *outcome.upper_bound)
                              : std::string("upper_bound=none\n"));
  out << fmt::format("time_to_best_s={:.6f}\ntime_total_s={:.6f}\n", outcome.time_to_best.count(),
                     outcome.time_total.count());
  if (outcome.incumbent) out << "solution: " << ids_1based(*outcome.incumbent) << '\n';

  const BenchRecord rec =
      make_record(record_instance_name(inst), kappa_of(inst), method.name, outcome, nullptr);
  if (a.json_stdout) out << record_json(rec).dump() << '\n';
  if (!a.jsonl.empty()) {
    std::ofstream f(a.jsonl, std::ios::app);
    if (!f) throw DataError(fmt::format("cannot append to '{}'", a.jsonl));
    f << record_json(rec).dump() << '\n';
  }
  return kSuccess;
}

struct GraspArgs {
  std::string file;
  std::uint64_t iterations = 100;
  double alpha = 0.1;
  std::uint64_t seed = 1;
  double time_limit = 3600.0;
};

int cmd_grasp(const GraspArgs& a, std::ostream& out) {
  const Instance inst = load_canonical(a.file);
  GraspConfig cfg;
  cfg.iterations = a.iterations;
  cfg.rcl_alpha = a.alpha;
  cfg.seed = a.seed;
  cfg.time_limit = Seconds{a.time_limit};
  const GraspResult r = grasp(inst, cfg);
  out << fmt::format("total={}\niteration_found={}\niterations_run={}\n", r.total, r.iteration_found,
                     r.iterations_run);
  out << "solution: " << ids_1based(r.best) << '\n';
  return kSuccess;
}

struct OracleArgs {
  std::string file;
  std::size_t max_n = 20;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  const Instance inst = load_canonical(a.file);
  try {
    const OracleResult r = brute_force_optimum(inst, a.max_n);
    out << fmt::format("optimum={}\ncount={}\n", r.optimum, r.num_optima);
    out << "witness: " << ids_1based(r.witness) << '\n';
  } catch (const LimitError& e) {
    err << "refused: " << e.what() << '\n';
    return kDataError;
  }
  return kSuccess;
}

struct ExportArgs {
  std::string file;
  std::string output;
};

int cmd_export_lp(const ExportArgs& a, std::ostream& out) {
  const Instance inst = load_canonical(a.file);
  const std::string lp = export_lp(inst);
  if (a.output.empty() || a.output == "-") {
    out << lp;
  } else {
    write_text_file(a.output, lp);
  }
  return kSuccess;
}

struct StatsArgs {
  std::string dir;
  std::vector<std::int64_t> kappas{1, 2};
};

int cmd_stats(const StatsArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<RawScpInstance> raws;
  for (const auto& f : files) {
    try {
      raws.push_back(load_orlib(f));
    } catch (const DataError& e) {
      err << fmt::format("skipping {}: {}\n", f.filename().string(), e.what());
    }
  }
  const auto rows = stats_from_raw(raws, a.kappas);
  out << format_stats_table(rows, a.kappas);
  return kSuccess;
}

struct BenchArgs {
  std::string manifest;
  std::string best_known;
  double time_limit = 3600.0;
  std::string output;
  std::vector<std::string> methods{"bnb", "grasp"};
  unsigned jobs = 1;
  std::uint64_t iterations = 100;
  double alpha = 0.1;
  std::uint64_t seed = 1;
  std::uint64_t node_limit = 0;
  bool no_times = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const fs::path manifest_path(a.manifest);
  const auto manifest = parse_manifest(read_text_file(manifest_path), manifest_path.parent_path());
  std::vector<SuiteEntry> entries;
  entries.reserve(manifest.size());
  for (const auto& [file, kappa] : manifest) entries.push_back({load_canonical(file), kappa});

  GraspConfig gcfg;
  gcfg.iterations = a.iterations;
  gcfg.rcl_alpha = a.alpha;
  gcfg.seed = a.seed;
  SolveConfig scfg;
  if (a.node_limit > 0) scfg.node_limit = a.node_limit;
  std::vector<Method> methods;
  for (const auto& name : a.methods) methods.push_back(method_by_name(name, gcfg, scfg));

  std::optional<BestKnownTable> table;
  if (!a.best_known.empty()) table = BestKnownTable::load(a.best_known);

  SuiteConfig cfg;
  cfg.time_limit = Seconds{a.time_limit};
  cfg.jobs = a.jobs;
  const SuiteResult result = run_suite(entries, methods, cfg, table ? &*table : nullptr);
  CsvOptions opts;
  opts.include_times = !a.no_times;
  if (!a.output.empty()) {
    write_text_file(a.output, write_results_csv(result.records, result.aggregates, opts));
  }
  out << format_results_table(result.records, result.aggregates);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Set covering with conflicts on sets: instances, solvers and benchmarks", "scpcs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "scpcs 0.1.0");

  std::function<int()> action;

  ParseArgs parse_args;
  auto* parse = app.add_subcommand("parse", "Parse an OR-Library file and report its size");
  parse->add_option("file", parse_args.file, "OR-Library SCP file")->required();
  parse->callback([&] { action = [&] { return cmd_parse(parse_args, out); }; });

  TransformArgs tr_args;
  auto* tr = app.add_subcommand("transform", "Build an SCP-CS instance from an OR-Library file");
  tr->add_option("file", tr_args.file, "OR-Library SCP file")->required();
  tr->add_option("--kappa,-k", tr_args.kappa, "overlap tolerance")->required()->check(CLI::NonNegativeNumber);
  tr->add_option("--rounding", tr_args.rounding, "gamma rounding: round-half-up, floor, ceil")
      ->check(CLI::IsMember({"round-half-up", "floor", "ceil"}));
  tr->add_option("--gamma-basis", tr_args.basis, "subsets gamma ranges over: merged, original")
      ->check(CLI::IsMember({"merged", "original"}));
  tr->add_option("-o,--output", tr_args.output, "canonical SCP-CS output file");
  tr->callback([&] { action = [&] { return cmd_transform(tr_args, out); }; });

  SolveArgs solve_args;
  auto* sv = app.add_subcommand("solve", "Branch-and-bound with certified bounds");
  sv->add_option("file", solve_args.file, "canonical SCP-CS file")->required();
  sv->add_option("--time-limit", solve_args.time_limit, "seconds")->check(CLI::PositiveNumber);
  sv->add_option("--node-limit", solve_args.node_limit, "stop after this many nodes (0 = none)");
  sv->add_flag("--warm-start", solve_args.warm_start, "seed the upper bound with GRASP");
  sv->add_option("--seed", solve_args.seed, "GRASP seed for --warm-start");
  sv->add_option("--jsonl", solve_args.jsonl, "append a JSON-lines record to this file");
  sv->add_flag("--json", solve_args.json_stdout, "also print the JSON record");
  sv->callback([&] { action = [&] { return cmd_solve(solve_args, out, err); }; });

  GraspArgs grasp_args;
  auto* gr = app.add_subcommand("grasp", "GRASP upper bound");
  gr->add_option("file", grasp_args.file, "canonical SCP-CS file")->required();
  gr->add_option("--iterations,-i", grasp_args.iterations)->check(CLI::PositiveNumber);
  gr->add_option("--alpha,-a", grasp_args.alpha, "RCL greediness in [0,1]")->check(CLI::Range(0.0, 1.0));
  gr->add_option("--seed,-s", grasp_args.seed);
  gr->add_option("--time-limit", grasp_args.time_limit, "seconds")->check(CLI::PositiveNumber);
  gr->callback([&] { action = [&] { return cmd_grasp(grasp_args, out); }; });

  OracleArgs oracle_args;
  auto* orc = app.add_subcommand("oracle", "Exhaustive optimum for tiny instances");
  orc->add_option("file", oracle_args.file, "canonical SCP-CS file")->required();
  orc->add_option("--max-n", oracle_args.max_n, "refuse instances with more subsets");
  orc->callback([&] { action = [&] { return cmd_oracle(oracle_args, out, err); }; });

  ExportArgs export_args;
  auto* ex = app.add_subcommand("export-lp", "Write the MILP model in CPLEX LP format");
  ex->add_option("file", export_args.file, "canonical SCP-CS file")->required();
  ex->add_option("-o,--output", export_args.output, "LP file ('-' for stdout)");
  ex->callback([&] { action = [&] { return cmd_export_lp(export_args, out); }; });

  StatsArgs stats_args;
  auto* st = app.add_subcommand("stats", "Benchmark characteristics of a directory of OR-Library files");
  st->add_option("dir", stats_args.dir, "directory with OR-Library files")->required()->check(CLI::ExistingDirectory);
  st->add_option("--kappa,-k", stats_args.kappas, "comma-separated kappa values")->delimiter(',');
  st->callback([&] { action = [&] { return cmd_stats(stats_args, out, err); }; });

  BenchArgs bench_args;
  auto* bn = app.add_subcommand("bench", "Run methods over a suite manifest");
  bn->add_option("manifest", bench_args.manifest, "lines of '<scpcs-file> <kappa>'")->required();
  bn->add_option("--best-known", bench_args.best_known, "CSV instance,kappa,lb,ub");
  bn->add_option("--time-limit", bench_args.time_limit, "seconds per run")->check(CLI::PositiveNumber);
  bn->add_option("-o,--output", bench_args.output, "results CSV");
  bn->add_option("--methods", bench_args.methods, "bnb, bnb-warm, grasp, greedy")->delimiter(',');
  bn->add_option("--jobs,-j", bench_args.jobs, "concurrent runs")->check(CLI::PositiveNumber);
  bn->add_option("--iterations", bench_args.iterations, "GRASP iterations")->check(CLI::PositiveNumber);
  bn->add_option("--alpha", bench_args.alpha, "GRASP RCL alpha")->check(CLI::Range(0.0, 1.0));
  bn->add_option("--seed", bench_args.seed, "GRASP seed");
  bn->add_option("--node-limit", bench_args.node_limit, "branch-and-bound node limit (0 = none)");
  bn->add_flag("--no-times", bench_args.no_times, "leave wall-clock columns empty in the CSV");
  bn->callback([&] { action = [&] { return cmd_bench(bench_args, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    return action ? action() : kUsageError;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace scpcs::cli
