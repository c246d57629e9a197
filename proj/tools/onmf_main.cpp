// onmf: command-line front end.
//
//   onmf generate  --m --n --k --noise --seed --mode {single,double} [--out-dir]
//   onmf factorize --input M.csv --k K --mode {single,double,double-large-k} ...
//   onmf evaluate  --input M.csv --a A.csv --w W.csv [--truth Mtruth.csv]
//   onmf sweep     --m --n --k --noise-grid 0.1:1.0:0.1 [--trials 7] ...
//   onmf bcc       --edges edges.txt [--complete] [--out clusters.csv]
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.  ONMF_THREADS caps
// the number of worker threads.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "onmf/bcc.hpp"
#include "onmf/csv.hpp"
#include "onmf/experiment.hpp"
#include "onmf/metrics.hpp"
#include "onmf/onmf_double.hpp"
#include "onmf/onmf_single.hpp"
#include "onmf/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_verbose = false;

void log(const std::string& msg) {
  if (g_verbose) std::cerr << "[onmf] " << msg << '\n';
}

unsigned worker_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ONMF_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1) {
      throw UsageError(std::string("ONMF_THREADS must be a positive integer, got '") + env + "'");
    }
    n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct KMeansFlags {
  int restarts = 10;
  int max_iters = 100;
  double tol = 1e-9;
  std::uint64_t seed = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--restarts", restarts, "k-means++ restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", max_iters, "Lloyd iterations per restart")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", tol, "relative cost improvement to stop at")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", seed, "random seed");
  }

  onmf::KMeansConfig config() const {
    onmf::KMeansConfig c;
    c.restarts = restarts;
    c.max_iters = max_iters;
    c.rel_tol = tol;
    c.seed = seed;
    return c;
  }
};

// generate ------------------------------------------------------------------

struct GenerateArgs {
  long m = 0, n = 0, k = 0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string mode = "single";
  std::string out_dir = ".";
};

int cmd_generate(const GenerateArgs& args) {
  const auto mode = onmf::parse_plant_mode(args.mode);
  const auto inst = onmf::gen_planted(mode, args.m, args.n, args.k, args.noise, args.seed);
  const fs::path dir(args.out_dir);
  fs::create_directories(dir);
  onmf::write_matrix(dir / "M.csv", inst.m_observed.matrix());
  onmf::write_matrix(dir / "Mtruth.csv", inst.m_truth.matrix());
  onmf::write_matrix(dir / "Atruth.csv", inst.a_truth.matrix());
  onmf::write_matrix(dir / "Wtruth.csv", inst.w_truth.matrix());

  ordered_json meta;
  meta["m"] = args.m;
  meta["n"] = args.n;
  meta["k"] = args.k;
  meta["noise_level"] = args.noise;
  meta["seed"] = args.seed;
  meta["mode"] = args.mode;
  write_text(dir / "meta.json", meta.dump(2) + "\n");
  log("wrote instance to " + dir.string());
  return 0;
}

// factorize -----------------------------------------------------------------

struct FactorizeArgs {
  std::string input;
  bool header = false;
  long k = 0;
  std::string mode = "single";
  KMeansFlags kmeans;
  std::string out_a;
  std::string out_w;
  bool no_timing = false;
};

int cmd_factorize(const FactorizeArgs& args) {
  if (args.mode != "double-large-k" && args.k < 1) {
    throw UsageError("--k is required for mode " + args.mode);
  }
  const onmf::NonNegMatrix m(onmf::read_matrix(args.input, {args.header}));
  log("read " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");

  onmf::KMeansConfig config = args.kmeans.config();
  config.threads = worker_threads();

  const auto start = std::chrono::steady_clock::now();
  onmf::OnmfSolution sol;
  if (args.mode == "single") {
    sol = onmf::factorize_single(m, args.k, config);
  } else if (args.mode == "double") {
    sol = onmf::factorize_double(m, args.k, config);
  } else {
    sol = onmf::factorize_double_large_k(m);
  }
  const auto stop = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(stop - start).count();

  if (!args.out_a.empty()) onmf::write_matrix(args.out_a, sol.a.matrix());
  if (!args.out_w.empty()) onmf::write_matrix(args.out_w, sol.materialized_w().matrix());

  ordered_json out;
  out["objective"] = sol.objective;
  out["wall_time_ms"] = args.no_timing ? 0.0 : ms;
  out["mode"] = args.mode;
  out["k"] = sol.w.k;
  std::cout << out.dump() << '\n';
  return 0;
}

// evaluate ------------------------------------------------------------------

struct EvaluateArgs {
  std::string input, truth, a, w;
  bool header = false;
};

int cmd_evaluate(const EvaluateArgs& args) {
  const onmf::CsvOptions opts{args.header};
  const auto m = onmf::read_matrix(args.input, opts);
  const auto a = onmf::read_matrix(args.a, opts);
  const auto w = onmf::read_matrix(args.w, opts);

  ordered_json out;
  out["reconstruction_error"] = onmf::reconstruction_error(m, a, w);
  if (!args.truth.empty()) {
    out["recovery_error"] = onmf::recovery_error(onmf::read_matrix(args.truth, opts), a, w);
  }
  out["non_orthogonality_w"] = onmf::non_orthogonality(w);
  out["non_orthogonality_a"] = onmf::column_non_orthogonality(a);
  if (m.squaredNorm() > 0.0) {
    out["rsfe"] = onmf::rsfe(m, a, w);
  } else {
    out["rsfe"] = nullptr;
  }
  std::cout << out.dump() << '\n';
  return 0;
}

// sweep ---------------------------------------------------------------------

struct SweepArgs {
  long m = 0, n = 0, k = 0;
  std::string noise_grid;
  int trials = 7;
  std::string mode = "single";
  KMeansFlags kmeans;
  std::string out;
  bool no_timing = false;
};

int cmd_sweep(const SweepArgs& args) {
  onmf::SweepConfig config;
  config.m = args.m;
  config.n = args.n;
  config.k = args.k;
  try {
    config.noise_grid = onmf::parse_noise_grid(args.noise_grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  config.trials = args.trials;
  config.seed = args.kmeans.seed;
  config.mode = onmf::parse_plant_mode(args.mode);
  config.kmeans = args.kmeans.config();
  config.threads = worker_threads();

  log("sweeping " + std::to_string(config.noise_grid.size()) + " noise levels x " +
      std::to_string(config.trials) + " trials on " + std::to_string(config.threads) +
      " threads");
  const auto rows = onmf::run_sweep(config);
  if (args.out.empty()) {
    onmf::write_sweep_csv(std::cout, rows, !args.no_timing);
  } else {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + args.out);
    onmf::write_sweep_csv(out, rows, !args.no_timing);
  }
  return 0;
}

// bcc -----------------------------------------------------------------------

struct BccArgs {
  std::string edges;
  bool complete = false;
  long rows = 0, cols = 0;
  std::string out;
};

int cmd_bcc(const BccArgs& args) {
  const auto g = onmf::read_edge_list(args.edges, args.complete, args.rows, args.cols);
  const auto result = onmf::bcc_cluster(g);
  if (!args.out.empty()) {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + args.out);
    onmf::write_clustering(out, result.clustering);
  }
  onmf::Index clusters = 0;
  for (auto id : result.clustering.row_cluster) clusters = std::max(clusters, id);
  for (auto id : result.clustering.col_cluster) clusters = std::max(clusters, id);

  ordered_json out;
  out["disagreements"] = result.disagreements;
  out["clusters"] = clusters;
  out["fractional_objective"] = result.fractional_objective;
  std::cout << out.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal non-negative matrix factorization tools"};
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", g_verbose, "log progress to stderr");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a planted instance as CSV + meta.json");
  generate->add_option("--m", gen.m, "rows")->required()->check(CLI::PositiveNumber);
  generate->add_option("--n", gen.n, "columns")->required()->check(CLI::PositiveNumber);
  generate->add_option("--k", gen.k, "inner dimension")->required()->check(CLI::PositiveNumber);
  generate->add_option("--noise", gen.noise, "mean of the exponential noise")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--mode", gen.mode)->check(CLI::IsMember({"single", "double"}));
  generate->add_option("--out-dir", gen.out_dir, "output directory");

  FactorizeArgs fac;
  auto* factorize = app.add_subcommand("factorize", "factorize a non-negative CSV matrix");
  factorize->add_option("--input", fac.input, "matrix CSV")->required();
  factorize->add_flag("--header", fac.header, "skip the first line of the CSV");
  factorize->add_option("--k", fac.k, "inner dimension (ignored by double-large-k)")
      ->check(CLI::PositiveNumber);
  factorize->add_option("--mode", fac.mode)
      ->check(CLI::IsMember({"single", "double", "double-large-k"}));
  fac.kmeans.add_to(factorize);
  factorize->add_option("--out-a", fac.out_a, "write A as CSV");
  factorize->add_option("--out-w", fac.out_w, "write W as CSV");
  factorize->add_flag("--no-timing", fac.no_timing, "report wall_time_ms as 0");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "print error and orthogonality metrics");
  evaluate->add_option("--input", ev.input, "observed matrix M")->required();
  evaluate->add_option("--truth", ev.truth, "planted matrix M_truth");
  evaluate->add_option("--a", ev.a, "factor A")->required();
  evaluate->add_option("--w", ev.w, "factor W")->required();
  evaluate->add_flag("--header", ev.header, "skip the first line of every CSV");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "noise sweep over planted instances");
  sweep->add_option("--m", sw.m)->required()->check(CLI::PositiveNumber);
  sweep->add_option("--n", sw.n)->required()->check(CLI::PositiveNumber);
  sweep->add_option("--k", sw.k)->required()->check(CLI::PositiveNumber);
  sweep->add_option("--noise-grid", sw.noise_grid, "list a,b,c or range start:stop:step")
      ->required();
  sweep->add_option("--trials", sw.trials, "trials per noise level")->check(CLI::PositiveNumber);
  sweep->add_option("--mode", sw.mode)->check(CLI::IsMember({"single", "double"}));
  sw.kmeans.add_to(sweep);
  sweep->add_option("--out", sw.out, "CSV output path (default stdout)");
  sweep->add_flag("--no-timing", sw.no_timing, "write 0 in the wall-time column");

  BccArgs bc;
  auto* bcc = app.add_subcommand("bcc", "bipartite correlation clustering from an edge list");
  bcc->add_option("--edges", bc.edges, "edge list: u,v,+ or u,v,- per line")->required();
  bcc->add_flag("--complete", bc.complete, "treat missing pairs as '-'");
  bcc->add_option("--m", bc.rows, "number of U vertices")->check(CLI::PositiveNumber);
  bcc->add_option("--n", bc.cols, "number of V vertices")->check(CLI::PositiveNumber);
  bcc->add_option("--out", bc.out, "clustering CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*factorize) return cmd_factorize(fac);
    if (*evaluate) return cmd_evaluate(ev);
    if (*sweep) return cmd_sweep(sw);
    if (*bcc) return cmd_bcc(bc);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
