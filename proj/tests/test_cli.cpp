#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <fmt/format.h>

#include "cli.hpp"
#include "scpcs/bench.hpp"
#include "scpcs/ingest.hpp"
#include "support.hpp"

using namespace scpcs;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / fmt::format("scpcs-cli-{}", std::random_device{}());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

const std::string kToy = std::string(SCPCS_DATA_DIR) + "/toy_fig1.scpcs";
const std::string kTiny = "3 6\n1 2 3 4 5 6\n2 1 4\n3 2 3 5\n2 5 6\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("toy file matches the in-code toy") {
  CHECK(load_canonical(kToy).with_name("toy-fig1") == scpcs::testing::six_set_toy());
}

TEST_CASE("oracle and solve on the toy") {
  const Run o = run({"oracle", kToy});
  CHECK(o.code == cli::kSuccess);
  CHECK(o.out.find("optimum=3\n") == 0);
  CHECK(o.out.find("witness: 1 5 6") != std::string::npos);

  const Run s = run({"solve", kToy, "--json"});
  CHECK(s.code == cli::kSuccess);
  CHECK(s.out.find("status=optimal") != std::string::npos);
  CHECK(s.out.find("solution: 1 5 6") != std::string::npos);
  CHECK(s.out.find("\"ub\":3") != std::string::npos);

  CHECK(run({"oracle", kToy, "--max-n", "4"}).code == cli::kDataError);
}

TEST_CASE("grasp output is determined by the seed") {
  const Run a = run({"grasp", kToy, "-i", "50", "-a", "1", "-s", "9"});
  const Run b = run({"grasp", kToy, "-i", "50", "-a", "1", "-s", "9"});
  CHECK(a.code == cli::kSuccess);
  CHECK(a.out == b.out);
  CHECK(a.out.find("total=3\n") == 0);
}

TEST_CASE("parse, transform and export") {
  TempDir tmp;
  write_text_file(tmp / "tiny.txt", kTiny);
  const Run p = run({"parse", (tmp / "tiny.txt").string()});
  CHECK(p.code == cli::kSuccess);
  CHECK(p.out == "m=3 n=6\nvalid\n");

  const Run t = run({"transform", (tmp / "tiny.txt").string(), "--kappa", "0", "-o", (tmp / "tiny.scpcs").string()});
  CHECK(t.code == cli::kSuccess);
  CHECK(t.out.find("n=2 |D|=1 gamma=5") == 0);
  TransformParams params;
  params.kappa = 0;
  CHECK(load_canonical(tmp / "tiny.scpcs") == pipeline(parse_orlib(kTiny, "tiny"), params));

  const Run lp = run({"export-lp", kToy, "-o", (tmp / "toy.lp").string()});
  CHECK(lp.code == cli::kSuccess);
  CHECK(read_text_file(tmp / "toy.lp") == export_lp(load_canonical(kToy)));

  const Run stats = run({"stats", tmp.path().string(), "--kappa", "0,1"});
  CHECK(stats.code == cli::kSuccess);
  CHECK(stats.out.find("tiny") != std::string::npos);
  CHECK(stats.err.find("skipping tiny.scpcs") != std::string::npos);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  CHECK(run({}).code == cli::kUsageError);
  CHECK(run({"frobnicate"}).code == cli::kUsageError);
  CHECK(run({"--help"}).code == cli::kSuccess);
  CHECK(run({"grasp", kToy, "--alpha", "2"}).code == cli::kUsageError);
  CHECK(run({"solve", (tmp / "missing.scpcs").string()}).code == cli::kDataError);

  write_text_file(tmp / "bad.txt", "2 2\n1 1\n1 3\n");
  CHECK(run({"parse", (tmp / "bad.txt").string()}).code == cli::kDataError);

  const Instance lonely("lonely", 2, {1}, {{0}});
  write_text_file(tmp / "lonely.scpcs", write_canonical(lonely));
  const Run s = run({"solve", (tmp / "lonely.scpcs").string()});
  CHECK(s.code == cli::kInfeasible);
  CHECK(s.err.find("element 2") != std::string::npos);
  CHECK(run({"grasp", (tmp / "lonely.scpcs").string()}).code == cli::kInfeasible);
  CHECK(run({"oracle", (tmp / "lonely.scpcs").string()}).code == cli::kInfeasible);
  CHECK(run({"export-lp", (tmp / "lonely.scpcs").string()}).code == cli::kInfeasible);
}

TEST_CASE("bench writes identical CSV twice") {
  TempDir tmp;
  write_text_file(tmp / "suite.txt", fmt::format("{} 0\n", kToy));
  write_text_file(tmp / "bk.csv", "instance,kappa,lb,ub\ntoy-fig1,0,3,3\n");
  auto args = [&](const std::string& out) {
    return std::vector<std::string>{"bench", (tmp / "suite.txt").string(), "--best-known", (tmp / "bk.csv").string(),
                                    "--time-limit", "5", "-o", (tmp / out).string(), "--methods",
                                    "bnb,grasp,greedy,bnb-warm", "--no-times"};
  };
  const Run a = run(args("a.csv"));
  const Run b = run(args("b.csv"));
  CHECK(a.code == cli::kSuccess);
  CHECK(b.code == cli::kSuccess);
  const std::string csv = read_text_file(tmp / "a.csv");
  CHECK(csv == read_text_file(tmp / "b.csv"));
  CHECK(csv.find("toy-fig1,0,bnb,3,3,optimal,,,0.0000,0.0000") != std::string::npos);
  CHECK(a.out.find("average") != std::string::npos);
}

TEST_CASE("solve appends JSON lines") {
  TempDir tmp;
  const std::string jl = (tmp / "runs.jsonl").string();
  CHECK(run({"solve", kToy, "--jsonl", jl}).code == cli::kSuccess);
  CHECK(run({"solve", kToy, "--warm-start", "--jsonl", jl}).code == cli::kSuccess);
  const std::string text = read_text_file(jl);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find("\"method\":\"bnb-warm\"") != std::string::npos);
}

}  // TEST_SUITE
