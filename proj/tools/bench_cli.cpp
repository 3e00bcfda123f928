// Benchmark and verification harness for Cartesian-sum top-k selection.
//
// Runs the naive, loh, and simplified methods over a grid of (n, k) points
// on seeded random instances, cross-checks their result multisets, and
// reports mean wall times (with the loh phase split) as a table or CSV.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xytopk/bench.hpp"

namespace {

using xytopk::bench::BenchOptions;
using xytopk::bench::GridPoint;
using xytopk::bench::Method;

std::vector<GridPoint> build_grid(const std::vector<std::size_t>& ns,
                                  const std::vector<std::size_t>& ks) {
  if (ns.empty() && ks.empty()) return xytopk::bench::default_grid();
  std::vector<GridPoint> grid;
  if (ks.empty()) {
    // Default per-n k schedule, matching the default grid's shape.
    for (std::size_t n : ns) {
      for (std::size_t k : {n / 4, n / 2, n, 2 * n, 4 * n}) grid.push_back({n, k});
    }
    return grid;
  }
  const std::vector<std::size_t> base_ns = ns.empty() ? std::vector<std::size_t>{1000} : ns;
  for (std::size_t n : base_ns) {
    for (std::size_t k : ks) grid.push_back({n, k});
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top-k selection on X+Y: benchmark and verification harness"};

  std::vector<std::size_t> ns, ks;
  std::string methods_csv = "naive,loh,simplified";
  std::string format_name = "table";
  std::string corrupt_name;
  BenchOptions opts;

  app.add_option("--n", ns, "Input lengths (comma separated); default 1000,2000,4000")
      ->delimiter(',');
  app.add_option("--k", ks,
                 "Selection sizes (comma separated); default n/4,n/2,n,2n,4n per n")
      ->delimiter(',');
  app.add_option("--alpha", opts.alpha, "Layer growth rate (> 1)", true);
  app.add_option("--methods", methods_csv, "Methods to run: csv of naive,loh,simplified",
                 true);
  app.add_option("--trials", opts.trials, "Trials per grid point", true);
  app.add_option("--seed", opts.seed, "Base seed; instances derive from it", true);
  app.add_option("--format", format_name, "Report format: table|csv", true)
      ->check(CLI::IsMember({"table", "csv"}));
  app.add_option("--value-max", opts.value_max, "Values drawn uniformly from [0, value-max]",
                 true);
  app.add_flag("--verify-only", opts.verify_only,
               "Run cross-method agreement checks, skip timing");
  app.add_option("--corrupt", corrupt_name,
                 "Testing hook: perturb this method's output to trip the agreement gate");

  CLI11_PARSE(app, argc, argv);

  std::vector<Method> methods;
  {
    std::string token;
    std::stringstream ss(methods_csv);
    while (std::getline(ss, token, ',')) {
      const auto m = xytopk::bench::parse_method(token);
      if (!m) {
        std::fprintf(stderr, "unknown method '%s'\n", token.c_str());
        return 2;
      }
      methods.push_back(*m);
    }
  }
  if (!corrupt_name.empty()) {
    const auto m = xytopk::bench::parse_method(corrupt_name);
    if (!m) {
      std::fprintf(stderr, "unknown method '%s'\n", corrupt_name.c_str());
      return 2;
    }
    opts.corrupt = *m;
  }

  const std::vector<GridPoint> grid = build_grid(ns, ks);

  try {
    const auto records = xytopk::bench::run_benchmark(grid, methods, opts);
    if (opts.verify_only) {
      std::printf("verified %zu grid points x %zu trials: all methods agree\n",
                  grid.size(), opts.trials);
      return 0;
    }
    const auto format = format_name == "csv" ? xytopk::bench::ReportFormat::csv
                                             : xytopk::bench::ReportFormat::table;
    std::fputs(xytopk::bench::emit_report(records, format).c_str(), stdout);
    return 0;
  } catch (const xytopk::bench::AgreementError& e) {
    std::fprintf(stderr, "agreement failure: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
