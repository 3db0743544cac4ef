#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "routecog/output.hpp"

namespace routecog::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("routecog_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

// Drops the route_search_ms column, the only wall-clock field.
std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    cells.erase(cells.begin() + 3);
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += "\n";
  }
  return out;
}

TEST(Cli, ChoicePrintsBothModels) {
  auto r = cli({"choice", "--costs", "5,10", "--sensitivity", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "logit: 0.524979, 0.475021\nkirchhoff: 0.666667, 0.333333\n");
  r = cli({"choice", "--costs", "5, 10", "--sensitivity", "1", "--model", "kirchhoff"});
  EXPECT_EQ(r.out, "0.666667, 0.333333\n");
}

TEST(Cli, ChoiceRejectsBadInput) {
  EXPECT_EQ(cli({"choice", "--costs", "5,x"}).code, 1);
  EXPECT_EQ(cli({"choice", "--costs", "5,0"}).code, 1);
  EXPECT_EQ(cli({"choice", "--costs", "5", "--model", "probit"}).code, 1);
  EXPECT_EQ(cli({"choice"}).code, 1);
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"bogus"}).code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, ValidateBundledNetwork) {
  const auto r = cli({"validate"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ok: 12 zones, 36 nodes, 100 links, 100 edges\n");
}

TEST(Cli, ValidateReportsDiagnostics) {
  const fs::path dir = scratch_dir("validate");
  fs::create_directories(dir);
  EXPECT_EQ(cli({"validate", "--network", (dir / "missing.json").string()}).code, 1);
  write_file_atomic(dir / "bad.json", "{\"nodes\": 3}");
  const auto r = cli({"validate", "--network", (dir / "bad.json").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error: "), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, RoutesPrintsRankedSet) {
  const auto r = cli({"routes", "--origin", "Z1", "--dest", "Z11", "--k", "3"});
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "rank,cost,probability,route_edge_ids");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
  EXPECT_EQ(cli({"routes", "--origin", "Z1", "--dest", "Z42"}).code, 1);
}

TEST(Cli, RunIsDeterministic) {
  const fs::path a = scratch_dir("run_a"), b = scratch_dir("run_b");
  for (const auto& dir : {a, b}) {
    const auto r = cli({"run", "--max-iter", "3", "--seed", "42", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("after 3 iterations"), std::string::npos) << r.out;
  }
  for (const char* name : {"flows.csv", "library.json"})
    EXPECT_EQ(read_file(a / name), read_file(b / name)) << name;
  EXPECT_EQ(without_timing(read_file(a / "iterations.csv")),
            without_timing(read_file(b / "iterations.csv")));
  EXPECT_EQ(read_file(a / "iterations.csv").substr(0, 80),
            "iteration,avg_travel_cost,cost_variance,route_search_ms,cache_hit_rate,converged");

  // a stored library resumes with full hits
  const fs::path c = scratch_dir("run_c");
  const auto r = cli({"run", "--max-iter", "1", "--library-in", (a / "library.json").string(),
                      "--out", c.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string it = read_file(c / "iterations.csv");
  EXPECT_NE(it.find(",1,"), std::string::npos) << it;
  for (const auto& dir : {a, b, c}) fs::remove_all(dir);
}

TEST(Cli, ErrorsWriteNothing) {
  const fs::path dir = scratch_dir("errors");
  const fs::path od = fs::temp_directory_path() / "routecog_cli_test_bad.od";
  write_file_atomic(od, "2\nZ1 Z2\n0 -5\n0 0\n");
  auto r = cli({"run", "--od", od.string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("negative entry -5 at (Z1,Z2)"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir));

  r = cli({"run", "--config", od.string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 1);
  r = cli({"run", "--epsilon", "0", "--out", dir.string()});
  EXPECT_EQ(r.code, 1);
  r = cli({"run", "--mode", "rush", "--out", dir.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(fs::exists(dir));
  fs::remove(od);
}

TEST(Cli, CompareWritesSummary) {
  const fs::path dir = scratch_dir("compare");
  const auto r = cli({"compare", "--iterations", "3", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, read_file(dir / "summary.csv"));
  EXPECT_NE(r.out.find("iterations,3,3\n"), std::string::npos) << r.out;
  const std::string csv = read_file(dir / "compare.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace routecog::cli
