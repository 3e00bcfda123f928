#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Benchmark and verification harness: seeded instance generation, a timing
// runner with a cross-method agreement gate, and table/CSV reporting.
//
// Instances are reproducible across platforms: values come from
// std::mt19937_64 (whose output sequence the standard pins down) mapped into
// range by rejection sampling, never through std::uniform_int_distribution,
// whose algorithm is implementation-defined.

namespace xytopk::bench {

using Value = std::int64_t;

enum class Method { naive, loh, simplified };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct GridPoint {
  std::size_t n;
  std::size_t k;
};

// One benchmark row.  The phase split and overhead ratio are populated for
// the loh method only.
struct BenchRecord {
  std::size_t n = 0;
  std::size_t k = 0;
  double alpha = 2.0;
  Method method = Method::loh;
  std::size_t trials = 0;
  double mean_seconds = 0.0;
  std::optional<double> phase0_seconds;     // LOHification
  std::optional<double> phases123_seconds;  // frontier + inflation + selection
  std::optional<double> overhead_ratio;     // (s + s') / k
  std::uint64_t seed = 0;
};

struct BenchOptions {
  double alpha = 2.0;
  std::size_t trials = 5;
  std::uint64_t seed = 0;
  Value value_min = 0;
  Value value_max = (Value{1} << 31) - 1;  // uniform integers in [0, 2^31)
  bool verify_only = false;                // agreement checks only, no timing
  std::optional<Method> corrupt;           // test hook: perturb this method's output
};

// Raised when one method's result multiset disagrees with the reference;
// carries the seed of the offending instance.
class AgreementError : public std::runtime_error {
 public:
  AgreementError(const std::string& message, std::uint64_t instance_seed)
      : std::runtime_error(message), instance_seed_(instance_seed) {}
  std::uint64_t instance_seed() const { return instance_seed_; }

 private:
  std::uint64_t instance_seed_;
};

// Two length-n arrays of uniform integers in [lo, hi], deterministic in the
// seed.
std::pair<std::vector<Value>, std::vector<Value>> generate_instance(
    std::size_t n, std::uint64_t seed, Value lo, Value hi);

// Seed for trial `trial` of grid point (n, k) under a base seed; printed on
// agreement failures so instances can be replayed.
std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t n, std::size_t k,
                            std::size_t trial);

// Runs every requested method `trials` times per grid point on fresh seeded
// instances.  Each instance's result multisets are verified against a
// reference (naive for n <= 2000, simplified above that) before any timing
// is reported; a mismatch throws AgreementError.  In verify_only mode no
// records are produced.
std::vector<BenchRecord> run_benchmark(const std::vector<GridPoint>& grid,
                                       const std::vector<Method>& methods,
                                       const BenchOptions& opts = {});

enum class ReportFormat { table, csv };

// Table format: one row per (n, k), one column per method, rows grouped by
// n, loh cells as total=phase0+phases123.  CSV: fixed header, empty fields
// where not applicable.  Times carry three significant figures.
std::string emit_report(const std::vector<BenchRecord>& records, ReportFormat format);

// The default 15-point grid: n in {1000, 2000, 4000}, k in
// {n/4, n/2, n, 2n, 4n}.
std::vector<GridPoint> default_grid();

}  // namespace xytopk::bench
