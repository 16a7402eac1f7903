// cubepath: shortest closed paths in simple cube-curves.
//
//   cubepath validate curve.txt
//   cubepath esp curve.txt --variant edge --epsilon 1e-10 [--seed-oracle 16] [--out path.txt]
//   cubepath oracle curve.txt --m 16 [--out cycle.txt] [--graph-dump graph.txt [--full-graph]]
//   cubepath bench --sizes 10..630 --step 20 --per-size 3 --out bench.csv --svg bench.svg
//   cubepath generate --cubes 60 --seed 7 [--out curve.txt]
//
// Exit codes: 0 success, 1 usage error, 2 validation error, 3 solver failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cubepath/bench.hpp"
#include "cubepath/cube_curve.hpp"
#include "cubepath/curve_gen.hpp"
#include "cubepath/curve_io.hpp"
#include "cubepath/graph_oracle.hpp"
#include "cubepath/path.hpp"
#include "cubepath/rubberband.hpp"

using namespace cubepath;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kSolver = 3 };

struct Failure {
  Exit code;
  std::string message;
};

CubeCurve load_curve(const std::string& file) {
  try {
    const auto cubes = read_cubes_file(file);
    return validate_curve(cubes);
  } catch (const CurveError& e) {
    throw Failure{kInvalid, file + ": " + to_string(e.kind()) + ": " + e.what()};
  } catch (const std::exception& e) {
    throw Failure{kInvalid, file + ": " + e.what()};
  }
}

Variant variant_arg(const std::string& name) {
  const auto v = parse_variant(name);
  if (!v) throw Failure{kUsage, "unknown variant '" + name + "' (expected original, edge or face)"};
  return *v;
}

void require_positive_epsilon(double eps) {
  if (!(eps > 0.0)) throw Failure{kUsage, "epsilon must be > 0"};
}

std::ofstream open_out(const std::string& file) {
  std::ofstream out(file);
  if (!out) throw Failure{kUsage, "cannot write '" + file + "'"};
  return out;
}

// "10..630" or a single size.
std::pair<std::size_t, std::size_t> size_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const std::size_t n = std::stoul(text);
      return {n, n};
    }
    return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Failure{kUsage, "--sizes expects MIN..MAX, got '" + text + "'"};
  }
}

int cmd_validate(const std::string& file) {
  const CubeCurve curve = load_curve(file);
  const CurveClassification cls = classify_angles(curve);
  std::cout << curve.size() << " cubes, " << curve.edge_count() << " critical edges, " << cls.end_angle_count()
            << " end angles\n";
  std::cout << "middle angles: " << cls.middle_angle_count() << "\n";
  std::cout << "first-class: unknown (requires solve)\n";
  return kOk;
}

struct EspOptions {
  std::string file;
  std::string variant = "edge";
  double epsilon = 1e-10;
  std::size_t seed_oracle = 0;
  std::size_t max_loops = 10'000'000;
  std::string out;
  bool simplify = false;
};

int cmd_esp(const EspOptions& o) {
  require_positive_epsilon(o.epsilon);
  SolverConfig cfg;
  cfg.variant = variant_arg(o.variant);
  cfg.epsilon = o.epsilon;
  cfg.max_loops = o.max_loops;
  const CubeCurve curve = load_curve(o.file);

  SolveResult result;
  std::optional<double> seed_length;
  try {
    if (o.seed_oracle > 0) {
      OracleRun run = oracle_then_rba(curve, o.seed_oracle, cfg);
      seed_length = run.cycle.length;
      result = std::move(run.refined);
    } else {
      result = solve(curve, cfg);
    }
  } catch (const SolverError& e) {
    throw Failure{kSolver, e.what()};
  } catch (const OracleError& e) {
    throw Failure{kSolver, e.what()};
  }

  const RunReport& r = result.report;
  const Polyline path = o.simplify ? simplify_collinear(result.path) : result.path;
  if (!o.out.empty()) {
    auto out = open_out(o.out);
    write_path(out, {to_string(cfg.variant), cfg.epsilon, r.final_length(), r.loops}, path);
  }
  std::printf("length=%.12f loops=%zu time_ms=%.3f\n", r.final_length(), r.loops, r.wall_time_ms);
  if (seed_length) std::printf("seed_length=%.12f\n", *seed_length);
  if (r.broke_off_by == BreakOff::MaxLoops) std::fprintf(stderr, "warning: stopped at --max-loops %zu\n", o.max_loops);
  if (cfg.variant == Variant::FaceBased && !r.all_on_edges) std::fprintf(stderr, "note: some vertices stayed off their edges\n");
  std::printf("first-class (w.r.t. computed path): %s\n",
              classify_first_class(curve, path) == FirstClass::Yes ? "yes" : "no");
  return kOk;
}

struct OracleOptions {
  std::string file;
  std::size_t m = 16;
  std::string out;
  std::string graph_dump;
  bool full_graph = false;
};

int cmd_oracle(const OracleOptions& o) {
  if (o.m < 1) throw Failure{kUsage, "--m must be >= 1"};
  const CubeCurve curve = load_curve(o.file);
  try {
    GraphOptions options;
    options.include_same_edge = o.full_graph;
    const SubdivisionGraph graph = build_graph(curve, o.m, options);
    if (!o.graph_dump.empty()) {
      auto out = open_out(o.graph_dump);
      write_graph(out, graph);
    }
    const CycleResult cycle = shortest_cycle(graph);
    if (!o.out.empty()) {
      auto out = open_out(o.out);
      write_path(out, {"oracle", 0.0, cycle.length, 0}, cycle.path);
    }
    std::printf("length=%.12f nodes=%zu arcs=%zu vertices=%zu\n", cycle.length, graph.nodes.size(), graph.arcs.size(),
                cycle.path.vertices.size());
  } catch (const OracleError& e) {
    throw Failure{kSolver, e.what()};
  }
  return kOk;
}

struct BenchOptions {
  std::string sizes = "10..630";
  std::size_t step = 20;
  std::size_t per_size = 3;
  std::string variant = "edge";
  double epsilon = 1e-10;
  std::size_t oracle_m = 0;
  std::string out = "bench.csv";
  std::string svg;
};

int cmd_bench(const BenchOptions& o) {
  require_positive_epsilon(o.epsilon);
  if (o.step == 0) throw Failure{kUsage, "--step must be >= 1"};
  BenchConfig cfg;
  std::tie(cfg.size_min, cfg.size_max) = size_range(o.sizes);
  cfg.step = o.step;
  cfg.per_size = o.per_size;
  cfg.variant = variant_arg(o.variant);
  cfg.epsilon = o.epsilon;
  cfg.oracle_m = o.oracle_m;

  const BenchOutcome outcome = run_bench(cfg, &std::cerr);
  {
    auto out = open_out(o.out);
    write_bench_csv(out, outcome.records);
  }
  std::printf("records=%zu skipped=%zu\n", outcome.records.size(), outcome.skipped.size());
  std::optional<AffineFit> fit;
  try {
    fit = fit_time(outcome.records);
    std::printf("time_ms = %.6g * n + %.6g  R2=%.4f\n", fit->slope, fit->intercept, fit->r2);
  } catch (const std::invalid_argument&) {
    std::printf("fit: not enough distinct sizes\n");
  }
  if (!o.svg.empty()) {
    auto out = open_out(o.svg);
    write_scatter_svg(out, outcome.records, fit.value_or(AffineFit{}));
  }
  return kOk;
}

int cmd_generate(std::size_t cubes, std::uint64_t seed, const std::string& out_file) {
  std::vector<GridCube> curve;
  try {
    curve = generate_cubes({cubes, seed});
  } catch (const std::invalid_argument& e) {
    throw Failure{kUsage, e.what()};
  } catch (const GenerationFailed& e) {
    throw Failure{kSolver, e.what()};
  }
  if (out_file.empty()) {
    write_cubes(std::cout, curve);
  } else {
    auto out = open_out(out_file);
    write_cubes(out, curve);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate Euclidean shortest paths in simple cube-curves"};
  app.require_subcommand(1);

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Check a curve file and report its critical edges");
  validate->add_option("file", validate_file, "Curve file (`cube x y z` lines)")->required();

  EspOptions esp_opt;
  auto* esp = app.add_subcommand("esp", "Run a rubberband solver");
  esp->add_option("file", esp_opt.file, "Curve file")->required();
  esp->add_option("--variant", esp_opt.variant, "original, edge or face")->capture_default_str();
  esp->add_option("--epsilon", esp_opt.epsilon, "Break-off threshold on the per-loop length gain")->capture_default_str();
  esp->add_option("--seed-oracle", esp_opt.seed_oracle, "Seed with the shortest cycle of the m-sample graph");
  esp->add_option("--max-loops", esp_opt.max_loops, "Safety limit on loops")->capture_default_str();
  esp->add_option("--out", esp_opt.out, "Path output file");
  esp->add_flag("--simplify", esp_opt.simplify, "Drop collinear vertices before writing");

  OracleOptions oracle_opt;
  auto* oracle = app.add_subcommand("oracle", "Shortest cycle over sampled critical edges");
  oracle->add_option("file", oracle_opt.file, "Curve file")->required();
  oracle->add_option("--m", oracle_opt.m, "Samples per critical edge")->capture_default_str();
  oracle->add_option("--out", oracle_opt.out, "Cycle output file");
  oracle->add_option("--graph-dump", oracle_opt.graph_dump, "Write nodes and arcs");
  oracle->add_flag("--full-graph", oracle_opt.full_graph, "Also connect samples on the same edge");

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Runtime against curve size");
  bench->add_option("--sizes", bench_opt.sizes, "MIN..MAX target cube counts")->capture_default_str();
  bench->add_option("--step", bench_opt.step, "Size increment")->capture_default_str();
  bench->add_option("--per-size", bench_opt.per_size, "Curves per size")->capture_default_str();
  bench->add_option("--variant", bench_opt.variant, "original, edge or face")->capture_default_str();
  bench->add_option("--epsilon", bench_opt.epsilon, "Break-off threshold")->capture_default_str();
  bench->add_option("--oracle-m", bench_opt.oracle_m, "Also record the oracle length with m samples");
  bench->add_option("--out", bench_opt.out, "CSV output")->capture_default_str();
  bench->add_option("--svg", bench_opt.svg, "Scatter plot output");

  std::size_t gen_cubes = 60;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a random simple cube-curve");
  generate->add_option("--cubes", gen_cubes, "Target cube count (>= 8)")->capture_default_str();
  generate->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  generate->add_option("--out", gen_out, "Curve output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(validate_file);
    if (*esp) return cmd_esp(esp_opt);
    if (*oracle) return cmd_oracle(oracle_opt);
    if (*bench) return cmd_bench(bench_opt);
    if (*generate) return cmd_generate(gen_cubes, gen_seed, gen_out);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolver;
  }
  return kUsage;
}
