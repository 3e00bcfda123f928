#include "xytopk/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "xytopk/baselines.hpp"
#include "xytopk/pairwise_select.hpp"

namespace xytopk::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Uniform draw in [lo, hi] by rejection; portable across standard libraries.
Value bounded_uniform(std::mt19937_64& rng, Value lo, Value hi) {
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<Value>(rng());  // full 64-bit range
  if (span == 1) return lo;
  const std::uint64_t copies = std::numeric_limits<std::uint64_t>::max() / span;
  const std::uint64_t accept_below = copies * span;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= accept_below);
  return static_cast<Value>(static_cast<std::uint64_t>(lo) + draw % span);
}

std::string format_time(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", seconds);
  return buf;
}

struct TrialResult {
  std::vector<Value> sorted_values;
  double elapsed = 0.0;
  double phase0 = 0.0;
  double phases123 = 0.0;
  double overhead = 0.0;
};

TrialResult run_method(Method m, const std::vector<Value>& x,
                       const std::vector<Value>& y, std::size_t k, double alpha) {
  const LohConfig config{alpha};
  TrialResult out;
  switch (m) {
    case Method::naive: {
      const auto start = Clock::now();
      auto res = naive_select<Value>(x, y, k);
      out.elapsed = seconds_since(start);
      out.sorted_values = std::move(res.values);
      break;
    }
    case Method::simplified: {
      const auto start = Clock::now();
      auto res = simplified_select<Value>(x, y, k, config);
      out.elapsed = seconds_since(start);
      out.sorted_values = std::move(res.values);
      break;
    }
    case Method::loh: {
      const auto start = Clock::now();
      const Loh<Value> x_loh = lohify(std::vector<Value>(x), config);
      const Loh<Value> y_loh = lohify(std::vector<Value>(y), config);
      out.phase0 = seconds_since(start);
      const auto mid = Clock::now();
      auto res = select_from_lohs(x_loh, y_loh, k);
      out.phases123 = seconds_since(mid);
      out.elapsed = out.phase0 + out.phases123;
      out.sorted_values = std::move(res.values);
      // Untimed instrumented rerun for the (s + s') / k ratio.
      SelectOptions opts;
      opts.instrument = true;
      const auto instrumented = select_from_lohs(x_loh, y_loh, k, opts);
      out.overhead =
          static_cast<double>(instrumented.trace->s + instrumented.trace->s_prime) /
          static_cast<double>(k);
      break;
    }
  }
  std::sort(out.sorted_values.begin(), out.sorted_values.end());
  return out;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::naive: return "naive";
    case Method::loh: return "loh";
    case Method::simplified: return "simplified";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "naive") return Method::naive;
  if (name == "loh") return Method::loh;
  if (name == "simplified") return Method::simplified;
  return std::nullopt;
}

std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t n, std::size_t k,
                            std::size_t trial) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(n));
  h = mix64(h ^ static_cast<std::uint64_t>(k));
  h = mix64(h ^ static_cast<std::uint64_t>(trial));
  return h;
}

std::pair<std::vector<Value>, std::vector<Value>> generate_instance(
    std::size_t n, std::uint64_t seed, Value lo, Value hi) {
  if (n == 0) throw std::invalid_argument("generate_instance: n must be >= 1");
  if (lo > hi) throw std::invalid_argument("generate_instance: empty value range");
  std::mt19937_64 rng(seed);
  std::vector<Value> x(n), y(n);
  for (Value& v : x) v = bounded_uniform(rng, lo, hi);
  for (Value& v : y) v = bounded_uniform(rng, lo, hi);
  return {std::move(x), std::move(y)};
}

std::vector<GridPoint> default_grid() {
  std::vector<GridPoint> grid;
  for (std::size_t n : {1000u, 2000u, 4000u}) {
    for (std::size_t k : {n / 4, n / 2, n, 2 * n, 4 * n}) {
      grid.push_back({n, k});
    }
  }
  return grid;
}

std::vector<BenchRecord> run_benchmark(const std::vector<GridPoint>& grid,
                                       const std::vector<Method>& methods,
                                       const BenchOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("run_benchmark: trials must be >= 1");
  if (methods.empty()) throw std::invalid_argument("run_benchmark: no methods");

  std::vector<BenchRecord> records;
  for (const GridPoint& gp : grid) {
    if (gp.n == 0 || gp.k == 0 || gp.k > gp.n * gp.n) {
      throw std::invalid_argument("run_benchmark: grid point requires 1 <= k <= n^2");
    }
    std::map<Method, TrialResult> sums;
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
      const std::uint64_t iseed = instance_seed(opts.seed, gp.n, gp.k, trial);
      const auto [x, y] = generate_instance(gp.n, iseed, opts.value_min, opts.value_max);

      std::map<Method, TrialResult> trial_results;
      for (Method m : methods) {
        trial_results[m] = run_method(m, x, y, gp.k, opts.alpha);
        if (opts.corrupt == m && !trial_results[m].sorted_values.empty()) {
          trial_results[m].sorted_values.front() -= 1;
        }
      }

      // Agreement gate.  The reference is naive up to n = 2000 (full sort is
      // still cheap there); beyond that, loh and simplified check each other.
      Method reference = Method::naive;
      if (gp.n <= 2000) {
        if (!trial_results.count(Method::naive)) {
          trial_results[Method::naive] = run_method(Method::naive, x, y, gp.k, opts.alpha);
        }
      } else {
        reference = Method::simplified;
        if (!trial_results.count(Method::simplified)) {
          trial_results[Method::simplified] =
              run_method(Method::simplified, x, y, gp.k, opts.alpha);
        }
        if (!trial_results.count(Method::loh)) {
          trial_results[Method::loh] = run_method(Method::loh, x, y, gp.k, opts.alpha);
        }
      }
      const auto& expect = trial_results.at(reference).sorted_values;
      for (const auto& [m, res] : trial_results) {
        if (res.sorted_values != expect) {
          std::ostringstream msg;
          msg << "method " << method_name(m) << " disagrees with "
              << method_name(reference) << " on instance seed=" << iseed
              << " (n=" << gp.n << ", k=" << gp.k << ", alpha=" << opts.alpha << ")";
          throw AgreementError(msg.str(), iseed);
        }
      }

      for (Method m : methods) {
        TrialResult& acc = sums[m];
        const TrialResult& r = trial_results.at(m);
        acc.elapsed += r.elapsed;
        acc.phase0 += r.phase0;
        acc.phases123 += r.phases123;
        acc.overhead += r.overhead;
      }
    }

    if (opts.verify_only) continue;
    for (Method m : methods) {
      const TrialResult& acc = sums.at(m);
      BenchRecord rec;
      rec.n = gp.n;
      rec.k = gp.k;
      rec.alpha = opts.alpha;
      rec.method = m;
      rec.trials = opts.trials;
      rec.mean_seconds = acc.elapsed / static_cast<double>(opts.trials);
      if (m == Method::loh) {
        rec.phase0_seconds = acc.phase0 / static_cast<double>(opts.trials);
        rec.phases123_seconds = acc.phases123 / static_cast<double>(opts.trials);
        rec.overhead_ratio = acc.overhead / static_cast<double>(opts.trials);
      }
      rec.seed = opts.seed;
      records.push_back(rec);
    }
  }
  return records;
}

std::string emit_report(const std::vector<BenchRecord>& records, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::csv) {
    out << "n,k,alpha,method,trials,mean_seconds,phase0_seconds,"
           "phases123_seconds,overhead_ratio,seed\n";
    for (const BenchRecord& r : records) {
      out << r.n << ',' << r.k << ',' << r.alpha << ',' << method_name(r.method)
          << ',' << r.trials << ',' << format_time(r.mean_seconds) << ',';
      if (r.phase0_seconds) out << format_time(*r.phase0_seconds);
      out << ',';
      if (r.phases123_seconds) out << format_time(*r.phases123_seconds);
      out << ',';
      if (r.overhead_ratio) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4g", *r.overhead_ratio);
        out << buf;
      }
      out << ',' << r.seed << '\n';
    }
    return out.str();
  }

  // Table layout: rows keyed by (n, k) in first-appearance order, one column
  // per method present, groups separated when n changes.
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  std::vector<Method> columns;
  std::map<std::pair<std::size_t, std::size_t>, std::map<Method, std::string>> cells;
  for (const BenchRecord& r : records) {
    const auto key = std::make_pair(r.n, r.k);
    if (!cells.count(key)) rows.push_back(key);
    if (std::find(columns.begin(), columns.end(), r.method) == columns.end()) {
      columns.push_back(r.method);
    }
    std::string cell;
    if (r.method == Method::loh && r.phase0_seconds && r.phases123_seconds) {
      cell = format_time(r.mean_seconds) + "=" + format_time(*r.phase0_seconds) +
             "+" + format_time(*r.phases123_seconds);
    } else {
      cell = format_time(r.mean_seconds);
    }
    cells[key][r.method] = cell;
  }

  std::vector<std::string> headers{"instance"};
  for (Method m : columns) {
    headers.push_back(m == Method::loh ? "loh (total=phase0+phases1-3)"
                                       : std::string(method_name(m)));
  }
  std::vector<std::size_t> widths;
  for (const std::string& h : headers) widths.push_back(h.size());
  std::vector<std::vector<std::string>> body;
  for (const auto& key : rows) {
    std::vector<std::string> line;
    line.push_back("n=" + std::to_string(key.first) + ",k=" + std::to_string(key.second));
    for (Method m : columns) {
      const auto& per_method = cells.at(key);
      auto it = per_method.find(m);
      line.push_back(it == per_method.end() ? "" : it->second);
    }
    for (std::size_t c = 0; c < line.size(); ++c) {
      widths[c] = std::max(widths[c], line[c].size());
    }
    body.push_back(std::move(line));
  }

  auto emit_line = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out << " | ";
      out << line[c];
      for (std::size_t pad = line[c].size(); pad < widths[c]; ++pad) out << ' ';
    }
    out << '\n';
  };

  emit_line(headers);
  std::size_t rule_len = 0;
  for (std::size_t c = 0; c < widths.size(); ++c) rule_len += widths[c] + (c > 0 ? 3 : 0);
  out << std::string(rule_len, '-') << '\n';
  std::size_t previous_n = rows.empty() ? 0 : rows.front().first;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (rows[i].first != previous_n) {
      out << std::string(rule_len, '-') << '\n';
      previous_n = rows[i].first;
    }
    emit_line(body[i]);
  }

  double ratio_sum = 0.0;
  std::size_t ratio_count = 0;
  for (const BenchRecord& r : records) {
    if (r.overhead_ratio) {
      ratio_sum += *r.overhead_ratio;
      ++ratio_count;
    }
  }
  if (ratio_count > 0) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "mean (s+s')/k = %.4g over %zu loh rows\n",
                  ratio_sum / static_cast<double>(ratio_count), ratio_count);
    out << buf;
  }
  return out.str();
}

}  // namespace xytopk::bench
