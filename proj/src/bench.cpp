#include "cubepath/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cubepath/curve_gen.hpp"
#include "cubepath/graph_oracle.hpp"

namespace cubepath {

namespace {

std::string real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string label(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_unsigned(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return static_cast<T>(v);
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

struct Job {
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

}  // namespace

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    out << r.n << ',' << r.critical_edges << ',' << to_string(r.variant) << ',' << real(r.epsilon) << ',' << r.loops << ','
        << real(r.time_ms) << ',' << real(r.length) << ',' << (r.oracle_length ? real(*r.oracle_length) : "") << ','
        << r.seed << '\n';
  }
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
  std::vector<BenchRecord> out;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kBenchCsvHeader) throw std::runtime_error("line 1: missing bench CSV header");
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    try {
      if (f.size() != 9) throw std::invalid_argument("expected 9 fields");
      BenchRecord r;
      r.n = parse_unsigned<std::size_t>(f[0]);
      r.critical_edges = parse_unsigned<std::size_t>(f[1]);
      const auto v = parse_variant(f[2]);
      if (!v) throw std::invalid_argument("unknown variant " + f[2]);
      r.variant = *v;
      r.epsilon = parse_real(f[3]);
      r.loops = parse_unsigned<std::size_t>(f[4]);
      r.time_ms = parse_real(f[5]);
      r.length = parse_real(f[6]);
      if (!f[7].empty()) r.oracle_length = parse_real(f[7]);
      r.seed = parse_unsigned<std::uint64_t>(f[8]);
      out.push_back(r);
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::uint64_t bench_seed(std::size_t n, std::size_t j) { return static_cast<std::uint64_t>(n) * 1000 + j + 1; }

std::size_t bench_threads() {
  if (const char* env = std::getenv("CUBEPATH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BenchOutcome run_bench(const BenchConfig& cfg, std::ostream* log) {
  SolverConfig solver;
  solver.epsilon = cfg.epsilon;
  solver.variant = cfg.variant;
  solver.validate();
  if (cfg.step == 0) throw std::invalid_argument("step must be >= 1");

  std::vector<Job> jobs;
  for (std::size_t n = cfg.size_min; n <= cfg.size_max; n += cfg.step) {
    for (std::size_t j = 0; j < cfg.per_size; ++j) jobs.push_back({n, bench_seed(n, j)});
  }

  std::vector<std::optional<BenchRecord>> slots(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      try {
        const CubeCurve curve = generate_curve({job.n, job.seed});
        const SolveResult result = solve(curve, solver);
        BenchRecord r;
        r.n = curve.size();
        r.critical_edges = curve.edge_count();
        r.variant = cfg.variant;
        r.epsilon = cfg.epsilon;
        r.loops = result.report.loops;
        r.time_ms = result.report.wall_time_ms;
        r.length = result.report.final_length();
        r.seed = job.seed;
        r.vertex_visits = result.report.vertex_visits;
        if (cfg.oracle_m > 0) {
          try {
            r.oracle_length = shortest_cycle(build_graph(curve, cfg.oracle_m)).length;
          } catch (const OracleError&) {
          }
        }
        slots[i] = r;
      } catch (const std::exception& e) {
        errors[i] = "skip target=" + std::to_string(job.n) + " seed=" + std::to_string(job.seed) + ": " + e.what();
        if (log) {
          std::lock_guard lock(log_mutex);
          *log << errors[i] << '\n';
        }
      }
    }
  };

  const std::size_t workers = std::min(cfg.threads ? cfg.threads : bench_threads(), std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BenchOutcome out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (slots[i]) out.records.push_back(*slots[i]);
    else out.skipped.push_back(errors[i]);
  }
  return out;
}

AffineFit fit_affine(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("affine fit needs two or more points");
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("affine fit needs two distinct x values");
  AffineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

AffineFit fit_time(const std::vector<BenchRecord>& records) {
  std::vector<double> x, y;
  for (const BenchRecord& r : records) {
    x.push_back(static_cast<double>(r.n));
    y.push_back(r.time_ms);
  }
  return fit_affine(x, y);
}

void write_scatter_svg(std::ostream& out, const std::vector<BenchRecord>& records, const AffineFit& fit) {
  constexpr double W = 640, H = 420, L = 60, R = 20, T = 30, B = 50;
  double xmax = 1, ymax = 1e-3;
  for (const BenchRecord& r : records) {
    xmax = std::max(xmax, static_cast<double>(r.n));
    ymax = std::max(ymax, r.time_ms);
  }
  xmax *= 1.05;
  ymax *= 1.1;
  auto px = [&](double x) { return L + x / xmax * (W - L - R); };
  auto py = [&](double y) { return H - B - y / ymax * (H - T - B); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double xv = xmax * tick / 4, yv = ymax * tick / 4;
    out << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << std::lround(xv) << "</text>\n";
    out << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << label(yv)
        << "</text>\n";
  }
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">cubes n</text>\n";
  out << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << (T + H - B) / 2
      << ")\">solver time (ms)</text>\n";
  for (const BenchRecord& r : records) {
    out << "<circle cx=\"" << px(static_cast<double>(r.n)) << "\" cy=\"" << py(r.time_ms) << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
  }
  const double y0 = fit.intercept, y1 = fit.intercept + fit.slope * xmax;
  out << "<line x1=\"" << px(0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(xmax) << "\" y2=\"" << py(y1)
      << "\" stroke=\"firebrick\" stroke-width=\"1.5\"/>\n";
  out << "<text x=\"" << L + 10 << "\" y=\"" << T + 4 << "\">t = " << label(fit.slope) << " n + " << label(fit.intercept)
      << ", R² = " << label(fit.r2) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace cubepath
