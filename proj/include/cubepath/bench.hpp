#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cubepath/rubberband.hpp"

namespace cubepath {

struct BenchRecord {
  std::size_t n = 0;
  std::size_t critical_edges = 0;
  Variant variant = Variant::EdgeBased;
  double epsilon = 0.0;
  std::size_t loops = 0;
  double time_ms = 0.0;
  double length = 0.0;
  std::optional<double> oracle_length;
  std::uint64_t seed = 0;
  /// Not written to CSV; kept for the loop-count statistics.
  std::size_t vertex_visits = 0;

  friend bool operator==(const BenchRecord& a, const BenchRecord& b) {
    return a.n == b.n && a.critical_edges == b.critical_edges && a.variant == b.variant && a.epsilon == b.epsilon &&
           a.loops == b.loops && a.time_ms == b.time_ms && a.length == b.length && a.oracle_length == b.oracle_length &&
           a.seed == b.seed;
  }
};

inline constexpr const char* kBenchCsvHeader = "n,critical_edges,variant,epsilon,loops,time_ms,length,oracle_length,seed";

/// Header line plus one row per record; reals with 17 significant digits, empty oracle_length when absent.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
/// Inverse of write_bench_csv; throws std::runtime_error naming the offending line.
std::vector<BenchRecord> read_bench_csv(std::istream& in);

struct BenchConfig {
  std::size_t size_min = 10;
  std::size_t size_max = 630;
  std::size_t step = 20;
  std::size_t per_size = 3;
  Variant variant = Variant::EdgeBased;
  double epsilon = 1e-10;
  /// Samples per edge for an oracle length per curve; 0 skips the oracle.
  std::size_t oracle_m = 0;
  /// Worker count; 0 means bench_threads().
  std::size_t threads = 0;
};

struct BenchOutcome {
  std::vector<BenchRecord> records;  // in (size, index) order
  std::vector<std::string> skipped;  // one message per curve that could not be generated or solved
};

/// Seed used for the j-th curve of size n.
std::uint64_t bench_seed(std::size_t n, std::size_t j);

/// CUBEPATH_THREADS if set to a positive integer, else the hardware concurrency (at least 1).
std::size_t bench_threads();

/// Generates per_size curves for each size in [size_min, size_max] (by step) and solves each one.
/// Only the solver loop is timed. Failures are logged to `log` (if given) and skipped.
BenchOutcome run_bench(const BenchConfig& cfg, std::ostream* log = nullptr);

struct AffineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares y = slope * x + intercept. Needs two distinct x values; r2 is 1 for constant y.
AffineFit fit_affine(const std::vector<double>& x, const std::vector<double>& y);

/// Fit of time_ms against n.
AffineFit fit_time(const std::vector<BenchRecord>& records);

/// Static scatter of time_ms against n with the fitted line and its R^2.
void write_scatter_svg(std::ostream& out, const std::vector<BenchRecord>& records, const AffineFit& fit);

}  // namespace cubepath
