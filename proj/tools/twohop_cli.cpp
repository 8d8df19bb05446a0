// Command-line driver for the incremental 2-hop neighborhood engine and its
// experiment protocols. Subcommands mirror the measurement drivers: coverage,
// size-mape, jaccard-mape, speedup, centrality, adversarial, gamma-check and
// gen (synthetic graph emission). Output is CSV (stdout or --out PATH) plus a
// JSON sidecar `<out>.config.json` describing the full configuration.
//
// Exit codes: 0 success, 1 configuration error, 2 I/O or parse error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twohop/experiments.hpp"
#include "twohop/generators.hpp"
#include "twohop/io.hpp"
#include "twohop/sparsity.hpp"

namespace {

using namespace twohop;
using nlohmann::json;

struct CliOptions {
  ExperimentConfig cfg;
  std::vector<double> phis;
  std::vector<std::uint32_t> ks;
  std::string store_text = "exact";
  std::string er_text;
  std::string ba_text;
  std::string out_path;
  std::string dump_path;
  // adversarial / gamma-check extras
  std::uint32_t delta = 64;
  std::uint32_t rho = 2;
  double epsilon = 0.5;
};

std::vector<std::uint64_t> parse_uint_list(const std::string& text, std::size_t expected,
                                           const std::string& flag) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stoull(part));
  if (out.size() != expected)
    throw std::invalid_argument(flag + ": expected " + std::to_string(expected) +
                                " comma-separated integers, got `" + text + "`");
  return out;
}

void add_shared_options(CLI::App* sub, CliOptions& opt) {
  sub->add_option("--input", opt.cfg.input_path, "edge-list file, replayed in file order");
  sub->add_option("--er", opt.er_text, "uniform random graph `n,m`");
  sub->add_option("--ba", opt.ba_text, "preferential-attachment graph `n,m0,epc`");
  sub->add_option("--phi", opt.phis, "laziness threshold(s) in [0,1]")->delimiter(',');
  sub->add_option("--k", opt.ks, "random light updates per endpoint")->delimiter(',');
  sub->add_option("--store", opt.store_text, "exact | kmv[:S] | minhash[:H] | kmv+minhash");
  sub->add_option("--seeds", opt.cfg.runs, "number of independent runs")
      ->check(CLI::Range(1u, 1000000u));
  sub->add_option("--seed", opt.cfg.seed, "master seed");
  sub->add_option("--init-frac", opt.cfg.init_fraction, "fraction of edges forming the initial graph")
      ->check(CLI::Range(0.0, 0.999999));
  sub->add_option("--snapshots", opt.cfg.snapshots, "number of equally spaced snapshots")
      ->check(CLI::Range(1u, 1000000u));
  sub->add_option("--sample-top", opt.cfg.sample_top, "sample size: vertices with largest 2-balls")
      ->check(CLI::Range(1u, 1000000u));
  sub->add_option("--pairs", opt.cfg.pair_count, "similarity pairs to sample");
  sub->add_option("--similarity-floor", opt.cfg.similarity_floor,
                  "minimum exact Jaccard for sampled pairs");
  sub->add_flag("--directed", opt.cfg.directed, "treat the input as directed");
  sub->add_option("--out", opt.out_path, "CSV output path (default: stdout)");
  sub->add_option("--dump", opt.dump_path, "per-vertex dump CSV (coverage, size-mape)");
}

// Resolves the dataset text flags and one (phi, k) cell into cfg.
void finalize_config(CliOptions& opt) {
  if (!opt.er_text.empty()) {
    const auto v = parse_uint_list(opt.er_text, 2, "--er");
    opt.cfg.er = ErSpec{static_cast<std::uint32_t>(v[0]), v[1]};
  }
  if (!opt.ba_text.empty()) {
    const auto v = parse_uint_list(opt.ba_text, 3, "--ba");
    opt.cfg.ba = BaSpec{static_cast<std::uint32_t>(v[0]), static_cast<std::uint32_t>(v[1]),
                        static_cast<std::uint32_t>(v[2])};
  }
  opt.cfg.store = parse_store_spec(opt.store_text);
  for (double phi : opt.phis)
    if (phi < 0.0 || phi > 1.0) throw std::invalid_argument("--phi: must lie in [0, 1]");
  if (!opt.phis.empty()) opt.cfg.phi = opt.phis.front();
  if (!opt.ks.empty()) opt.cfg.k = opt.ks.front();
}

std::vector<GridCell> make_grid(const CliOptions& opt, std::vector<double> default_phis,
                                std::vector<std::uint32_t> default_ks) {
  const auto& phis = opt.phis.empty() ? default_phis : opt.phis;
  const auto& ks = opt.ks.empty() ? default_ks : opt.ks;
  std::vector<GridCell> grid;
  for (double phi : phis)
    for (std::uint32_t k : ks) grid.push_back({phi, k});
  return grid;
}

json config_json(const CliOptions& opt, const std::string& command) {
  json j;
  j["command"] = command;
  j["input"] = opt.cfg.input_path;
  if (opt.cfg.er) j["er"] = {{"n", opt.cfg.er->n}, {"m", opt.cfg.er->m}};
  if (opt.cfg.ba)
    j["ba"] = {{"n", opt.cfg.ba->n}, {"m0", opt.cfg.ba->m0}, {"epc", opt.cfg.ba->edges_per_step}};
  j["directed"] = opt.cfg.directed;
  j["store"] = to_string(opt.cfg.store);
  j["phi"] = opt.phis.empty() ? std::vector<double>{opt.cfg.phi} : opt.phis;
  j["k"] = opt.ks.empty() ? std::vector<std::uint32_t>{opt.cfg.k} : opt.ks;
  j["seed"] = opt.cfg.seed;
  j["runs"] = opt.cfg.runs;
  j["init_fraction"] = opt.cfg.init_fraction;
  j["snapshots"] = opt.cfg.snapshots;
  j["sample_top"] = opt.cfg.sample_top;
  j["pair_count"] = opt.cfg.pair_count;
  j["similarity_floor"] = opt.cfg.similarity_floor;
  return j;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.emplace(path);
      if (!*file_) throw IoError("cannot open for writing: " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::optional<std::ofstream> file_;
};

void write_sidecar(const CliOptions& opt, const std::string& command) {
  if (opt.out_path.empty()) return;
  std::ofstream side(opt.out_path + ".config.json");
  if (!side) throw IoError("cannot open for writing: " + opt.out_path + ".config.json");
  side << config_json(opt, command).dump(2) << '\n';
}

const char* algo_name(bool baseline) { return baseline ? "baseline" : "lazy"; }

int cmd_coverage(CliOptions& opt) {
  finalize_config(opt);
  const auto grid = make_grid(opt, {opt.cfg.phi}, {opt.cfg.k});
  Output out(opt.out_path);
  out.stream() << "phi,k,snapshot,stream_pos,coverage_mean,coverage_theory,union_ops_mean\n";
  std::ofstream dump;
  if (!opt.dump_path.empty()) {
    dump.open(opt.dump_path);
    if (!dump) throw IoError("cannot open for writing: " + opt.dump_path);
    dump << "phi,k,run,snapshot,vertex,coverage\n";
  }
  for (const GridCell& cell : grid) {
    ExperimentConfig cfg = opt.cfg;
    cfg.phi = cell.phi;
    cfg.k = cell.k;
    const CoverageResult result = run_coverage(cfg, dump.is_open());
    for (const MetricsRow& row : result.rows)
      out.stream() << format_metric(cell.phi) << ',' << cell.k << ',' << row.snapshot_index << ','
                   << row.stream_pos << ',' << format_metric(row.coverage_mean) << ','
                   << format_metric(row.coverage_theory) << ','
                   << format_metric(row.union_ops_mean) << '\n';
    for (const auto& pv : result.per_vertex)
      dump << format_metric(cell.phi) << ',' << cell.k << ',' << pv.run << ','
           << pv.snapshot_index << ',' << pv.vertex << ',' << format_metric(pv.coverage) << '\n';
  }
  write_sidecar(opt, "coverage");
  return 0;
}

void write_mape_cells(std::ostream& os, const std::vector<MapeCell>& cells) {
  os << "algo,phi,k,snapshot_pct,mape_mean,mape_std,union_ops_mean\n";
  for (const MapeCell& c : cells)
    os << algo_name(c.baseline) << ',' << format_metric(c.phi) << ',' << c.k << ','
       << format_metric(c.snapshot_pct) << ',' << format_metric(c.mape_mean) << ','
       << format_metric(c.mape_std) << ',' << format_metric(c.union_ops_mean) << '\n';
}

int cmd_size_mape(CliOptions& opt) {
  finalize_config(opt);
  if (opt.store_text == "exact") opt.cfg.store = parse_store_spec("kmv:32");
  const auto grid = make_grid(opt, {0.1, 0.25, 0.5, 0.75, 1.0}, {0, 2, 4, 8});
  std::ofstream dump;
  if (!opt.dump_path.empty()) {
    dump.open(opt.dump_path);
    if (!dump) throw IoError("cannot open for writing: " + opt.dump_path);
    dump << "algo,phi,k,run,snapshot_pct,vertex,ape\n";
  }
  const SizeMapeResult result = run_size_mape(opt.cfg, grid, {50.0, 75.0, 100.0}, dump.is_open());
  Output out(opt.out_path);
  write_mape_cells(out.stream(), result.cells);
  for (const auto& pv : result.per_vertex)
    dump << algo_name(pv.baseline) << ',' << format_metric(pv.phi) << ',' << pv.k << ','
         << pv.run << ',' << format_metric(pv.snapshot_pct) << ',' << pv.vertex << ','
         << format_metric(pv.ape) << '\n';
  write_sidecar(opt, "size-mape");
  return 0;
}

int cmd_jaccard_mape(CliOptions& opt) {
  finalize_config(opt);
  if (opt.store_text == "exact") opt.cfg.store = parse_store_spec("minhash:100");
  const auto grid = make_grid(opt, {0.1, 0.25, 0.5, 0.75, 1.0}, {0, 2, 4, 8});
  const JaccardMapeResult result = run_jaccard_mape(opt.cfg, grid);
  Output out(opt.out_path);
  write_mape_cells(out.stream(), result.cells);
  std::cerr << "jaccard-mape: " << result.pairs.size() << " pairs accepted out of "
            << result.candidates_tried << " candidates (rate "
            << format_metric(result.acceptance_rate) << ")\n";
  write_sidecar(opt, "jaccard-mape");
  return 0;
}

int cmd_speedup(CliOptions& opt) {
  finalize_config(opt);
  if (opt.store_text == "exact") opt.cfg.store = parse_store_spec("kmv:32");
  const auto grid = make_grid(opt, {0.1, 0.25, 0.5, 0.75, 1.0}, {0, 2, 4, 8});
  const SpeedupResult result = run_speedup(opt.cfg, grid);
  Output out(opt.out_path);
  out.stream() << "algo,phi,k,seconds_mean,speedup_vs_baseline,union_ops_mean,union_ratio\n";
  for (const SpeedupCell& c : result.cells)
    out.stream() << algo_name(c.baseline) << ',' << format_metric(c.phi) << ',' << c.k << ','
                 << format_metric(c.seconds_mean) << ','
                 << format_metric(c.speedup_vs_baseline) << ','
                 << format_metric(c.union_ops_mean) << ',' << format_metric(c.union_ratio)
                 << '\n';
  write_sidecar(opt, "speedup");
  return 0;
}

int cmd_centrality(CliOptions& opt) {
  finalize_config(opt);
  const CentralityResult result = run_centrality(opt.cfg);
  Output out(opt.out_path);
  out.stream() << "kind,snapshot_pct,alpha_pct,spearman_trunc,kendall_trunc,spearman_approx,"
                  "kendall_approx,recall_trunc,recall_approx\n";
  for (const CentralityRow& r : result.correlations)
    out.stream() << "correlation," << format_metric(r.snapshot_pct) << ','
                 << format_metric(r.alpha_pct) << ',' << format_metric(r.spearman_trunc) << ','
                 << format_metric(r.kendall_trunc) << ',' << format_metric(r.spearman_approx)
                 << ',' << format_metric(r.kendall_approx) << ",,\n";
  for (const RecallRow& r : result.recalls)
    out.stream() << "recall," << format_metric(r.snapshot_pct) << ','
                 << format_metric(r.alpha_pct) << ",,,,," << format_metric(r.recall_trunc) << ','
                 << format_metric(r.recall_approx) << '\n';
  std::cerr << "centrality: tracker agreement with brute-force top-h = "
            << format_metric(result.tracker_agreement) << '\n';
  write_sidecar(opt, "centrality");
  return 0;
}

int cmd_adversarial(CliOptions& opt) {
  finalize_config(opt);
  if (opt.phis.empty()) opt.cfg.phi = 1.0;
  if (opt.store_text == "exact") opt.cfg.store.kind = StoreSpec::Kind::Exact;
  const AdversarialReport report = run_adversarial(opt.delta, opt.rho, opt.cfg);
  Output out(opt.out_path);
  out.stream() << "delta,rho,phi,k,coverage_adversarial,coverage_random,union_ops_adversarial,"
                  "union_ops_random,ball_sizes_exact,cost_bound_holds\n";
  out.stream() << report.delta << ',' << report.rho << ',' << format_metric(opt.cfg.phi) << ','
               << opt.cfg.k << ',' << format_metric(report.coverage_adversarial) << ','
               << format_metric(report.coverage_random) << ','
               << format_metric(report.union_ops_adversarial) << ','
               << format_metric(report.union_ops_random) << ','
               << (report.ball_sizes_exact ? 1 : 0) << ',' << (report.cost_bound_holds ? 1 : 0)
               << '\n';
  write_sidecar(opt, "adversarial");
  return 0;
}

int cmd_gamma_check(CliOptions& opt) {
  finalize_config(opt);
  const Dataset data = load_dataset(opt.cfg);
  const GammaCheckReport report = check_gamma(data.final_graph, opt.epsilon, opt.cfg);
  Output out(opt.out_path);
  out.stream() << "gamma_min,girth_class,epsilon,k_used,coverage_mean,coverage_target\n";
  const char* girth = report.sparsity.girth_class == GirthClass::Three   ? "3"
                      : report.sparsity.girth_class == GirthClass::Four ? "4"
                                                                        : ">=5";
  out.stream() << report.sparsity.gamma_min << ',' << girth << ','
               << format_metric(report.epsilon) << ',' << report.k_used << ','
               << format_metric(report.coverage_mean) << ','
               << format_metric(report.coverage_target) << '\n';
  write_sidecar(opt, "gamma-check");
  return 0;
}

int cmd_gen(CliOptions& opt) {
  finalize_config(opt);
  if (opt.out_path.empty()) throw std::invalid_argument("gen: --out is required");
  const Dataset data = load_dataset(opt.cfg);
  EdgeStream es = gen_random_permutation(data.final_graph, opt.cfg.seed, 0.0);
  save_edge_list(es.stream, opt.out_path);
  write_sidecar(opt, "gen");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental approximate 2-hop neighborhoods: engine and experiment drivers"};
  app.require_subcommand(1);

  CliOptions opt;
  int (*handler)(CliOptions&) = nullptr;

  auto register_cmd = [&](const std::string& name, const std::string& help,
                          int (*fn)(CliOptions&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_shared_options(sub, opt);
    sub->callback([&handler, fn] { handler = fn; });
    return sub;
  };

  register_cmd("coverage", "mean 2-ball coverage at snapshots (exact stores)", cmd_coverage);
  register_cmd("size-mape", "size-estimation error table over a (phi, k) grid", cmd_size_mape);
  register_cmd("jaccard-mape", "Jaccard-estimation error table over a (phi, k) grid",
               cmd_jaccard_mape);
  register_cmd("speedup", "wall-clock and union-op comparison against the eager baseline",
               cmd_speedup);
  register_cmd("centrality", "harmonic-centrality ranking quality vs the exact scores",
               cmd_centrality);
  CLI::App* adv = register_cmd("adversarial", "pathological vs random insertion order",
                               cmd_adversarial);
  adv->add_option("--delta", opt.delta, "bipartite side size")->check(CLI::Range(1u, 1000000u));
  adv->add_option("--rho", opt.rho, "pendant multiplier")->check(CLI::Range(1u, 10000u));
  CLI::App* gamma = register_cmd("gamma-check", "local sparsity classification plus sorted-order run",
                                 cmd_gamma_check);
  gamma->add_option("--eps", opt.epsilon, "target accuracy parameter in (0,1)");
  register_cmd("gen", "emit a synthetic graph as a shuffled edge list", cmd_gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return handler(opt);
  } catch (const twohop::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const twohop::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
