#pragma once
// Experiment drivers: dataset handling, per-run stream construction, and the
// measurement protocols behind the CLI subcommands (coverage curves, size and
// Jaccard error tables, wall-clock speedups, centrality ranking quality, the
// pathological-order comparison and the local-sparsity check).
//
// Every driver is deterministic given (config, master seed): run seeds,
// sketch seeds and sampling decisions all derive from the master seed through
// the fixed splitting rule. Wall-clock numbers appear only in the speedup
// driver.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twohop/ball_store.hpp"
#include "twohop/centrality.hpp"
#include "twohop/engine.hpp"
#include "twohop/generators.hpp"
#include "twohop/graph.hpp"
#include "twohop/io.hpp"
#include "twohop/oracle.hpp"
#include "twohop/rng.hpp"
#include "twohop/sparsity.hpp"

namespace twohop {

struct SampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Configuration

struct StoreSpec {
  enum class Kind { Exact, Kmv, MinHash, KmvMinHash };
  Kind kind = Kind::Exact;
  std::uint32_t kmv_size = 32;
  std::uint32_t minhash_width = 100;
};

// Accepts "exact", "kmv[:S]", "minhash[:H]" and "kmv[:S]+minhash[:H]".
inline StoreSpec parse_store_spec(const std::string& text) {
  auto parse_part = [](const std::string& part, const std::string& name,
                       std::uint32_t fallback) -> std::uint32_t {
    if (part == name) return fallback;
    if (part.rfind(name + ":", 0) != 0)
      throw std::invalid_argument("store: cannot parse `" + part + "`");
    const std::string num = part.substr(name.size() + 1);
    const unsigned long value = std::stoul(num);
    if (value == 0) throw std::invalid_argument("store: size must be positive in `" + part + "`");
    return static_cast<std::uint32_t>(value);
  };
  StoreSpec spec;
  if (text == "exact") {
    spec.kind = StoreSpec::Kind::Exact;
    return spec;
  }
  const std::size_t plus = text.find('+');
  if (plus != std::string::npos) {
    spec.kind = StoreSpec::Kind::KmvMinHash;
    spec.kmv_size = parse_part(text.substr(0, plus), "kmv", spec.kmv_size);
    spec.minhash_width = parse_part(text.substr(plus + 1), "minhash", spec.minhash_width);
    return spec;
  }
  if (text.rfind("kmv", 0) == 0) {
    spec.kind = StoreSpec::Kind::Kmv;
    spec.kmv_size = parse_part(text, "kmv", spec.kmv_size);
    return spec;
  }
  if (text.rfind("minhash", 0) == 0) {
    spec.kind = StoreSpec::Kind::MinHash;
    spec.minhash_width = parse_part(text, "minhash", spec.minhash_width);
    return spec;
  }
  throw std::invalid_argument("store: cannot parse `" + text + "`");
}

inline std::string to_string(const StoreSpec& s) {
  switch (s.kind) {
    case StoreSpec::Kind::Exact:
      return "exact";
    case StoreSpec::Kind::Kmv:
      return "kmv:" + std::to_string(s.kmv_size);
    case StoreSpec::Kind::MinHash:
      return "minhash:" + std::to_string(s.minhash_width);
    case StoreSpec::Kind::KmvMinHash:
      return "kmv:" + std::to_string(s.kmv_size) + "+minhash:" + std::to_string(s.minhash_width);
  }
  return "exact";
}

struct ErSpec {
  std::uint32_t n = 0;
  std::uint64_t m = 0;
};
struct BaSpec {
  std::uint32_t n = 0;
  std::uint32_t m0 = 2;
  std::uint32_t edges_per_step = 2;
};

struct ExperimentConfig {
  // Exactly one dataset source: a trace file (replayed in file order) or a
  // generated graph (replayed as a fresh random permutation per run).
  std::string input_path;
  std::optional<ErSpec> er;
  std::optional<BaSpec> ba;
  bool directed = false;

  double phi = 0.5;
  std::uint32_t k = 0;
  StoreSpec store;

  std::uint64_t seed = 1;     // master seed; run r uses derive_seed(seed, r)
  std::uint32_t runs = 10;
  double init_fraction = 0.2;
  std::uint32_t snapshots = 20;
  std::uint32_t sample_top = 50;
  std::uint32_t pair_count = 200;
  double similarity_floor = 0.2;
};

struct GridCell {
  double phi = 0.5;
  std::uint32_t k = 0;
};

// ---------------------------------------------------------------------------
// Datasets and streams

struct Dataset {
  DynamicGraph final_graph;
  std::vector<Edge> trace;  // file order; empty for generated graphs
  bool has_trace = false;
};

inline Dataset load_dataset(const ExperimentConfig& cfg) {
  int sources = !cfg.input_path.empty();
  sources += cfg.er.has_value();
  sources += cfg.ba.has_value();
  if (sources != 1)
    throw std::invalid_argument("dataset: give exactly one of --input, --er, --ba");
  Dataset data;
  if (!cfg.input_path.empty()) {
    EdgeListData listing = load_edge_list(cfg.input_path);
    data.has_trace = true;
    data.trace = std::move(listing.edges);
    data.final_graph = DynamicGraph(cfg.directed);
    if (listing.labels.size() > 0)
      data.final_graph.ensure_vertex(static_cast<VertexId>(listing.labels.size() - 1));
    for (const Edge& e : data.trace) data.final_graph.add_edge(e.u, e.v);
  } else if (cfg.er) {
    if (cfg.directed) throw std::invalid_argument("dataset: generators are undirected");
    data.final_graph = gen_er(cfg.er->n, cfg.er->m, cfg.seed);
  } else {
    if (cfg.directed) throw std::invalid_argument("dataset: generators are undirected");
    data.final_graph = gen_ba(cfg.ba->n, cfg.ba->m0, cfg.ba->edges_per_step, cfg.seed);
  }
  return data;
}

// Stream for one run. Traces keep file order for every run (the run seed
// only drives the engine); generated graphs get a fresh permutation.
inline EdgeStream make_stream(const Dataset& data, const ExperimentConfig& cfg,
                              std::uint64_t run_seed) {
  if (!data.has_trace) return gen_random_permutation(data.final_graph, run_seed, cfg.init_fraction);
  EdgeStream out{DynamicGraph(data.final_graph.directed()), {}};
  if (data.final_graph.vertex_count() > 0)
    out.initial.ensure_vertex(static_cast<VertexId>(data.final_graph.vertex_count() - 1));
  const std::size_t cut =
      static_cast<std::size_t>(cfg.init_fraction * static_cast<double>(data.trace.size()));
  for (std::size_t i = 0; i < cut; ++i) out.initial.add_edge(data.trace[i].u, data.trace[i].v);
  out.stream.assign(data.trace.begin() + static_cast<std::ptrdiff_t>(cut), data.trace.end());
  return out;
}

// The `count` vertices with the largest exact 2-balls in the final graph,
// ties by ascending id.
inline std::vector<VertexId> top_ball_sample(const DynamicGraph& final_graph, std::uint32_t count) {
  BallOracle oracle;
  std::vector<std::pair<std::size_t, VertexId>> sizes;
  sizes.reserve(final_graph.vertex_count());
  for (VertexId v = 0; v < final_graph.vertex_count(); ++v)
    sizes.emplace_back(oracle.ball(final_graph, v, 2).size(), v);
  std::sort(sizes.begin(), sizes.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<VertexId> out;
  out.reserve(std::min<std::size_t>(count, sizes.size()));
  for (std::size_t i = 0; i < sizes.size() && i < count; ++i) out.push_back(sizes[i].second);
  return out;
}

template <typename Engine, typename AtSnapshot>
void replay_with_snapshots(Engine& engine, const std::vector<Edge>& stream,
                           const std::vector<std::size_t>& positions, AtSnapshot&& at_snapshot) {
  std::size_t next = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    engine.insert(stream[i].u, stream[i].v);
    while (next < positions.size() && positions[next] == i + 1) {
      at_snapshot(next, i + 1);
      ++next;
    }
  }
  while (next < positions.size()) {
    at_snapshot(next, stream.size());
    ++next;
  }
}

// Runtime-to-template store dispatch for stores that can estimate sizes.
template <typename Fn>
auto with_size_store(const StoreSpec& spec, std::uint64_t sketch_seed, Fn&& fn) {
  switch (spec.kind) {
    case StoreSpec::Kind::Exact:
      return fn(ExactBall::Factory{});
    case StoreSpec::Kind::Kmv:
      return fn(KmvSketch::Factory(spec.kmv_size, sketch_seed));
    case StoreSpec::Kind::KmvMinHash:
      return fn(KmvMinHash::Factory(spec.kmv_size, spec.minhash_width, sketch_seed));
    case StoreSpec::Kind::MinHash:
      break;
  }
  throw std::invalid_argument("store: this experiment needs a size-capable store");
}

// Dispatch for stores that can estimate Jaccard similarity.
template <typename Fn>
auto with_jaccard_store(const StoreSpec& spec, std::uint64_t sketch_seed, Fn&& fn) {
  switch (spec.kind) {
    case StoreSpec::Kind::Exact:
      return fn(ExactBall::Factory{});
    case StoreSpec::Kind::MinHash:
      return fn(MinHashSignature::Factory(spec.minhash_width, sketch_seed));
    case StoreSpec::Kind::KmvMinHash:
      return fn(KmvMinHash::Factory(spec.kmv_size, spec.minhash_width, sketch_seed));
    case StoreSpec::Kind::Kmv:
      break;
  }
  throw std::invalid_argument("store: this experiment needs a similarity-capable store");
}

template <typename Fn>
auto with_any_store(const StoreSpec& spec, std::uint64_t sketch_seed, Fn&& fn) {
  if (spec.kind == StoreSpec::Kind::MinHash)
    return fn(MinHashSignature::Factory(spec.minhash_width, sketch_seed));
  return with_size_store(spec, sketch_seed, std::forward<Fn>(fn));
}

// ---------------------------------------------------------------------------
// Coverage curves

struct MetricsRow {
  std::size_t snapshot_index = 0;  // 1-based
  std::size_t stream_pos = 0;      // insertions applied when measured
  double coverage_mean = 0.0;      // averaged over runs
  double coverage_theory = 0.0;    // 1 / (1 + phi)
  double union_ops_mean = 0.0;
};

struct CoverageResult {
  std::vector<MetricsRow> rows;
  std::vector<VertexId> sample;
  struct VertexRow {
    std::uint32_t run;
    std::size_t snapshot_index;
    VertexId vertex;
    double coverage;
  };
  std::vector<VertexRow> per_vertex;  // filled when requested
};

inline CoverageResult run_coverage(const ExperimentConfig& cfg, bool dump_per_vertex = false) {
  if (cfg.store.kind != StoreSpec::Kind::Exact)
    throw std::invalid_argument("coverage: exact stores only (sketch noise has no coverage)");
  const Dataset data = load_dataset(cfg);
  CoverageResult result;
  result.sample = top_ball_sample(data.final_graph, cfg.sample_top);
  if (result.sample.empty()) throw SampleError("coverage: graph has no vertices");

  std::vector<double> cov_sum;
  std::vector<double> ops_sum;
  std::vector<std::size_t> pos_of;
  BallOracle oracle;
  for (std::uint32_t run = 0; run < cfg.runs; ++run) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, run);
    EdgeStream es = make_stream(data, cfg, run_seed);
    const auto positions = snapshot_positions(es.stream.size(), cfg.snapshots);
    if (run == 0) {
      cov_sum.assign(positions.size(), 0.0);
      ops_sum.assign(positions.size(), 0.0);
      pos_of = positions;
    }
    LazyEngine<ExactBall> engine(std::move(es.initial),
                                 {cfg.phi, cfg.k, run_seed, cfg.directed}, {});
    replay_with_snapshots(engine, es.stream, positions, [&](std::size_t idx, std::size_t) {
      double total = 0.0;
      for (VertexId v : result.sample) {
        const double c = coverage(engine, oracle, v);
        total += c;
        if (dump_per_vertex) result.per_vertex.push_back({run, idx + 1, v, c});
      }
      cov_sum[idx] += total / static_cast<double>(result.sample.size());
      ops_sum[idx] += static_cast<double>(engine.cost().union_ops());
    });
  }
  for (std::size_t i = 0; i < cov_sum.size(); ++i)
    result.rows.push_back({i + 1, pos_of[i], cov_sum[i] / cfg.runs, 1.0 / (1.0 + cfg.phi),
                           ops_sum[i] / cfg.runs});
  return result;
}

// ---------------------------------------------------------------------------
// Size-estimation error table

struct MapeCell {
  bool baseline = false;
  double phi = 0.0;
  std::uint32_t k = 0;
  double snapshot_pct = 100.0;
  double mape_mean = 0.0;
  double mape_std = 0.0;
  double union_ops_mean = 0.0;
};

struct SizeMapeResult {
  std::vector<MapeCell> cells;
  std::vector<VertexId> sample;
  struct VertexRow {
    std::uint32_t run;
    bool baseline;
    double phi;
    std::uint32_t k;
    double snapshot_pct;
    VertexId vertex;
    double ape;
  };
  std::vector<VertexRow> per_vertex;
};

namespace detail {

struct RunningStat {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
  double ops_sum = 0.0;
  std::uint32_t ops_count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  double mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
  double stddev() const {
    if (count == 0) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / static_cast<double>(count) - m * m));
  }
};

}  // namespace detail

// Absolute percentage error of estimated 2-ball sizes over the top sample,
// pooled across runs, for each grid cell plus the eager sketch baseline.
inline SizeMapeResult run_size_mape(const ExperimentConfig& cfg, const std::vector<GridCell>& grid,
                                    const std::vector<double>& snapshot_pcts = {50.0, 75.0, 100.0},
                                    bool dump_per_vertex = false) {
  const Dataset data = load_dataset(cfg);
  SizeMapeResult result;
  result.sample = top_ball_sample(data.final_graph, cfg.sample_top);
  if (result.sample.empty()) throw SampleError("size-mape: graph has no vertices");

  const std::size_t n_cells = grid.size() + 1;  // + baseline
  std::vector<detail::RunningStat> stats(n_cells * snapshot_pcts.size());

  BallOracle oracle;
  for (std::uint32_t run = 0; run < cfg.runs; ++run) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, run);
    const std::uint64_t sketch_seed = derive_seed(run_seed, 0x5ce7);
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
      const bool baseline = cell == grid.size();
      const GridCell gc = baseline ? GridCell{0.0, 0} : grid[cell];
      EdgeStream es = make_stream(data, cfg, run_seed);
      std::vector<std::size_t> positions;
      for (double pct : snapshot_pcts)
        positions.push_back(static_cast<std::size_t>(
            std::llround(static_cast<double>(es.stream.size()) * pct / 100.0)));
      with_size_store(cfg.store, sketch_seed, [&](auto factory) {
        using Store = decltype(factory.make());
        LazyEngine<Store> engine(std::move(es.initial), {gc.phi, gc.k, run_seed, cfg.directed},
                                 factory);
        std::size_t next = 0;
        auto measure = [&](std::size_t idx) {
          auto& stat = stats[cell * snapshot_pcts.size() + idx];
          for (VertexId v : result.sample) {
            const double truth =
                static_cast<double>(oracle.ball(engine.graph(), v, 2).size());
            const double est = engine.ball2(v).estimate_size();
            const double ape = std::abs(truth - est) / truth;
            stat.add(ape);
            if (dump_per_vertex)
              result.per_vertex.push_back(
                  {run, baseline, gc.phi, gc.k, snapshot_pcts[idx], v, ape});
          }
          stat.ops_sum += static_cast<double>(engine.cost().union_ops());
          stat.ops_count += 1;
        };
        for (std::size_t i = 0; i < es.stream.size(); ++i) {
          if (baseline)
            engine.insert_baseline(es.stream[i].u, es.stream[i].v);
          else
            engine.insert(es.stream[i].u, es.stream[i].v);
          while (next < positions.size() && positions[next] == i + 1) measure(next++);
        }
        while (next < positions.size()) measure(next++);
      });
    }
  }

  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    const bool baseline = cell == grid.size();
    const GridCell gc = baseline ? GridCell{0.0, 0} : grid[cell];
    for (std::size_t s = 0; s < snapshot_pcts.size(); ++s) {
      const auto& stat = stats[cell * snapshot_pcts.size() + s];
      result.cells.push_back({baseline, gc.phi, gc.k, snapshot_pcts[s], stat.mean(),
                              stat.stddev(),
                              stat.ops_count ? stat.ops_sum / stat.ops_count : 0.0});
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Jaccard-estimation error table

struct JaccardMapeResult {
  std::vector<MapeCell> cells;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::uint64_t candidates_tried = 0;  // sampling acceptance bookkeeping
  double acceptance_rate = 0.0;
};

// Pairs are drawn once, on the final graph: uniform candidate pairs from the
// top-ball sample, kept when their exact 2-ball Jaccard similarity clears the
// floor, until pair_count pairs pass (or candidates are exhausted).
inline std::vector<std::pair<VertexId, VertexId>> sample_similar_pairs(
    const DynamicGraph& final_graph, const std::vector<VertexId>& sample, std::uint32_t pair_count,
    double floor, std::uint64_t seed, std::uint64_t* tried_out = nullptr) {
  if (sample.size() < 2) throw SampleError("jaccard: need at least two sampled vertices");
  BallOracle oracle;
  SplitMix64 rng(derive_seed(seed, 0x9a1));
  std::vector<std::pair<VertexId, VertexId>> accepted;
  std::unordered_set<std::uint64_t> seen;
  const std::uint64_t universe =
      static_cast<std::uint64_t>(sample.size()) * (sample.size() - 1) / 2;
  std::uint64_t tried = 0;
  while (accepted.size() < pair_count && seen.size() < universe) {
    const std::size_t a = rng.next_below(sample.size());
    const std::size_t b = rng.next_below(sample.size());
    if (a == b) continue;
    const std::size_t lo = std::min(a, b), hi = std::max(a, b);
    if (!seen.insert((static_cast<std::uint64_t>(lo) << 32) | hi).second) continue;
    ++tried;
    if (oracle.jaccard2(final_graph, sample[lo], sample[hi]) >= floor)
      accepted.emplace_back(sample[lo], sample[hi]);
  }
  if (tried_out) *tried_out = tried;
  if (accepted.empty())
    throw SampleError("jaccard: no vertex pair reaches the similarity floor; graph too small?");
  return accepted;
}

inline JaccardMapeResult run_jaccard_mape(const ExperimentConfig& cfg,
                                          const std::vector<GridCell>& grid,
                                          const std::vector<double>& snapshot_pcts = {50.0, 75.0,
                                                                                      100.0}) {
  const Dataset data = load_dataset(cfg);
  const auto sample = top_ball_sample(data.final_graph, cfg.sample_top);
  JaccardMapeResult result;
  result.pairs = sample_similar_pairs(data.final_graph, sample, cfg.pair_count,
                                      cfg.similarity_floor, cfg.seed, &result.candidates_tried);
  result.acceptance_rate = result.candidates_tried == 0
                               ? 0.0
                               : static_cast<double>(result.pairs.size()) /
                                     static_cast<double>(result.candidates_tried);

  const std::size_t n_cells = grid.size() + 1;
  std::vector<detail::RunningStat> stats(n_cells * snapshot_pcts.size());

  BallOracle oracle;
  for (std::uint32_t run = 0; run < cfg.runs; ++run) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, run);
    const std::uint64_t sketch_seed = derive_seed(run_seed, 0x5ce7);
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
      const bool baseline = cell == grid.size();
      const GridCell gc = baseline ? GridCell{0.0, 0} : grid[cell];
      EdgeStream es = make_stream(data, cfg, run_seed);
      std::vector<std::size_t> positions;
      for (double pct : snapshot_pcts)
        positions.push_back(static_cast<std::size_t>(
            std::llround(static_cast<double>(es.stream.size()) * pct / 100.0)));
      with_jaccard_store(cfg.store, sketch_seed, [&](auto factory) {
        using Store = decltype(factory.make());
        LazyEngine<Store> engine(std::move(es.initial), {gc.phi, gc.k, run_seed, cfg.directed},
                                 factory);
        std::size_t next = 0;
        auto measure = [&](std::size_t idx) {
          auto& stat = stats[cell * snapshot_pcts.size() + idx];
          for (const auto& [u, v] : result.pairs) {
            const double truth = oracle.jaccard2(engine.graph(), u, v);
            if (truth == 0.0) continue;  // relative error undefined this early
            const double est = engine.ball2(u).jaccard(engine.ball2(v));
            stat.add(std::abs(truth - est) / truth);
          }
          stat.ops_sum += static_cast<double>(engine.cost().union_ops());
          stat.ops_count += 1;
        };
        for (std::size_t i = 0; i < es.stream.size(); ++i) {
          if (baseline)
            engine.insert_baseline(es.stream[i].u, es.stream[i].v);
          else
            engine.insert(es.stream[i].u, es.stream[i].v);
          while (next < positions.size() && positions[next] == i + 1) measure(next++);
        }
        while (next < positions.size()) measure(next++);
      });
    }
  }

  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    const bool baseline = cell == grid.size();
    const GridCell gc = baseline ? GridCell{0.0, 0} : grid[cell];
    for (std::size_t s = 0; s < snapshot_pcts.size(); ++s) {
      const auto& stat = stats[cell * snapshot_pcts.size() + s];
      result.cells.push_back({baseline, gc.phi, gc.k, snapshot_pcts[s], stat.mean(),
                              stat.stddev(),
                              stat.ops_count ? stat.ops_sum / stat.ops_count : 0.0});
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Speedup table

struct SpeedupCell {
  bool baseline = false;
  double phi = 0.0;
  std::uint32_t k = 0;
  double seconds_mean = 0.0;
  double speedup_vs_baseline = 1.0;   // baseline seconds / cell seconds
  double union_ops_mean = 0.0;
  double union_ratio = 1.0;           // baseline union ops / cell union ops
};

struct SpeedupResult {
  std::vector<SpeedupCell> cells;
};

// Replays the identical per-run stream under the baseline and every grid
// cell, timing only the insertion loop (initialization is shared work).
inline SpeedupResult run_speedup(const ExperimentConfig& cfg, const std::vector<GridCell>& grid) {
  const Dataset data = load_dataset(cfg);
  const std::size_t n_cells = grid.size() + 1;
  std::vector<double> seconds(n_cells, 0.0);
  std::vector<double> ops(n_cells, 0.0);

  for (std::uint32_t run = 0; run < cfg.runs; ++run) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, run);
    const std::uint64_t sketch_seed = derive_seed(run_seed, 0x5ce7);
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
      const bool baseline = cell == grid.size();
      const GridCell gc = baseline ? GridCell{0.0, 0} : grid[cell];
      EdgeStream es = make_stream(data, cfg, run_seed);
      with_any_store(cfg.store, sketch_seed, [&](auto factory) {
        using Store = decltype(factory.make());
        LazyEngine<Store> engine(std::move(es.initial), {gc.phi, gc.k, run_seed, cfg.directed},
                                 factory);
        const auto start = std::chrono::steady_clock::now();
        if (baseline) {
          for (const Edge& e : es.stream) engine.insert_baseline(e.u, e.v);
        } else {
          for (const Edge& e : es.stream) engine.insert(e.u, e.v);
        }
        const auto stop = std::chrono::steady_clock::now();
        seconds[cell] += std::chrono::duration<double>(stop - start).count();
        ops[cell] += static_cast<double>(engine.cost().union_ops());
      });
    }
  }

  SpeedupResult result;
  const double base_sec = seconds.back() / cfg.runs;
  const double base_ops = ops.back() / cfg.runs;
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    const bool baseline = cell == grid.size();
    const GridCell gc = baseline ? GridCell{0.0, 0} : grid[cell];
    const double sec = seconds[cell] / cfg.runs;
    const double op = ops[cell] / cfg.runs;
    result.cells.push_back({baseline, gc.phi, gc.k, sec, sec > 0.0 ? base_sec / sec : 0.0, op,
                            op > 0.0 ? base_ops / op : 0.0});
  }
  return result;
}

// ---------------------------------------------------------------------------
// Centrality ranking quality

struct CentralityRow {
  double snapshot_pct = 100.0;
  double alpha_pct = 100.0;
  double spearman_trunc = 0.0;  // truncated scores vs exact, top alpha% of exact
  double kendall_trunc = 0.0;
  double spearman_approx = 0.0;  // engine-estimated scores vs exact
  double kendall_approx = 0.0;
};

struct RecallRow {
  double snapshot_pct = 100.0;
  double alpha_pct = 10.0;
  double recall_trunc = 0.0;
  double recall_approx = 0.0;
};

struct CentralityResult {
  std::vector<CentralityRow> correlations;
  std::vector<RecallRow> recalls;
  double tracker_agreement = 1.0;  // tracked top-h vs brute force at the end
};

inline CentralityResult run_centrality(
    const ExperimentConfig& cfg, const std::vector<double>& snapshot_pcts = {25.0, 50.0, 75.0,
                                                                             100.0},
    const std::vector<double>& alpha_grid = {5.0, 10.0, 20.0, 50.0, 100.0},
    const std::vector<double>& recall_grid = {1.0, 5.0, 10.0}) {
  const Dataset data = load_dataset(cfg);
  const std::size_t n_corr = snapshot_pcts.size() * alpha_grid.size();
  const std::size_t n_rec = snapshot_pcts.size() * recall_grid.size();
  std::vector<CentralityRow> corr(n_corr);
  std::vector<RecallRow> rec(n_rec);
  double tracker_sum = 0.0;

  for (std::uint32_t run = 0; run < cfg.runs; ++run) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, run);
    const std::uint64_t sketch_seed = derive_seed(run_seed, 0x5ce7);
    EdgeStream es = make_stream(data, cfg, run_seed);
    std::vector<std::size_t> positions;
    for (double pct : snapshot_pcts)
      positions.push_back(static_cast<std::size_t>(
          std::llround(static_cast<double>(es.stream.size()) * pct / 100.0)));
    with_size_store(cfg.store, sketch_seed, [&](auto factory) {
      using Store = decltype(factory.make());
      LazyEngine<Store> engine(std::move(es.initial), {cfg.phi, cfg.k, run_seed, cfg.directed},
                               factory);
      TopHTracker tracker(std::max<std::uint32_t>(1, cfg.sample_top));
      auto push_score = [&](VertexId v) {
        tracker.update(v, approx_truncated_score(engine.ball1(v).estimate_size(),
                                                 engine.ball2(v).estimate_size()));
      };
      for (VertexId v = 0; v < engine.vertex_count(); ++v) push_score(v);

      std::size_t next = 0;
      auto measure = [&](std::size_t idx) {
        const CentralityScores exact = harmonic_exact(engine.graph());
        const CentralityScores trunc = harmonic_truncated(engine.graph());
        const CentralityScores approx = harmonic_approx(engine);
        const auto ranking_exact = rank_by_score(exact.values);
        for (std::size_t a = 0; a < alpha_grid.size(); ++a) {
          const auto top = top_fraction(ranking_exact, alpha_grid[a]);
          if (top.size() < 2) continue;
          std::vector<double> se, st, sa;
          se.reserve(top.size());
          st.reserve(top.size());
          sa.reserve(top.size());
          for (VertexId v : top) {
            se.push_back(exact.values[v]);
            st.push_back(trunc.values[v]);
            sa.push_back(approx.values[v]);
          }
          auto& row = corr[idx * alpha_grid.size() + a];
          row.snapshot_pct = snapshot_pcts[idx];
          row.alpha_pct = alpha_grid[a];
          row.spearman_trunc += spearman(st, se);
          row.kendall_trunc += kendall_tau(st, se);
          row.spearman_approx += spearman(sa, se);
          row.kendall_approx += kendall_tau(sa, se);
        }
        const auto ranking_trunc = rank_by_score(trunc.values);
        const auto ranking_approx = rank_by_score(approx.values);
        for (std::size_t a = 0; a < recall_grid.size(); ++a) {
          const auto top_exact = top_fraction(ranking_exact, recall_grid[a]);
          if (top_exact.empty()) continue;
          auto& row = rec[idx * recall_grid.size() + a];
          row.snapshot_pct = snapshot_pcts[idx];
          row.alpha_pct = recall_grid[a];
          row.recall_trunc += recall_at(top_exact, top_fraction(ranking_trunc, recall_grid[a]));
          row.recall_approx += recall_at(top_exact, top_fraction(ranking_approx, recall_grid[a]));
        }
      };
      for (std::size_t i = 0; i < es.stream.size(); ++i) {
        engine.insert(es.stream[i].u, es.stream[i].v, [&](VertexId v) { push_score(v); });
        while (next < positions.size() && positions[next] == i + 1) measure(next++);
      }
      while (next < positions.size()) measure(next++);

      // Tracked set vs brute-force top-h of the final estimated scores.
      const CentralityScores approx = harmonic_approx(engine);
      const auto brute = top_fraction(rank_by_score(approx.values),
                                      100.0 * tracker.capacity() /
                                          std::max<std::size_t>(1, approx.values.size()));
      std::unordered_set<VertexId> tracked_set;
      for (VertexId v : tracker.tracked()) tracked_set.insert(v);
      std::size_t agree = 0;
      for (std::size_t i = 0; i < brute.size() && i < tracker.capacity(); ++i)
        if (tracked_set.contains(brute[i])) ++agree;
      tracker_sum += brute.empty()
                         ? 1.0
                         : static_cast<double>(agree) /
                               static_cast<double>(std::min(brute.size(),
                                                            tracker.capacity()));
    });
  }

  CentralityResult result;
  for (auto& row : corr) {
    row.spearman_trunc /= cfg.runs;
    row.kendall_trunc /= cfg.runs;
    row.spearman_approx /= cfg.runs;
    row.kendall_approx /= cfg.runs;
    result.correlations.push_back(row);
  }
  for (auto& row : rec) {
    row.recall_trunc /= cfg.runs;
    row.recall_approx /= cfg.runs;
    result.recalls.push_back(row);
  }
  result.tracker_agreement = tracker_sum / cfg.runs;
  return result;
}

// ---------------------------------------------------------------------------
// Pathological insertion order

struct AdversarialReport {
  std::uint32_t delta = 0;
  std::uint32_t rho = 0;
  double coverage_adversarial = 0.0;  // mean over the bipartite side-a sample
  double coverage_random = 0.0;       // same final edges, shuffled from empty
  double union_ops_adversarial = 0.0;
  double union_ops_random = 0.0;
  bool ball_sizes_exact = true;       // |B2(u)| == 2*delta + delta*rho^2 on side a
  bool cost_bound_holds = true;       // union ops <= (4 + 4/phi + 2k) |S| on both orders
};

inline AdversarialReport run_adversarial(std::uint32_t delta, std::uint32_t rho,
                                         const ExperimentConfig& cfg) {
  if (cfg.store.kind != StoreSpec::Kind::Exact)
    throw std::invalid_argument("adversarial: exact stores only");
  if (cfg.phi <= 0.0) throw std::invalid_argument("adversarial: needs phi > 0");
  const AdversarialSpec spec{delta, rho};
  const auto side_a = spec.side_a();
  AdversarialReport report;
  report.delta = delta;
  report.rho = rho;

  BallOracle oracle;
  const double bound_factor = 4.0 + 4.0 / cfg.phi + 2.0 * cfg.k;

  // Fixed pathological order: bipartite core in place, pendants round-robin.
  for (std::uint32_t run = 0; run < cfg.runs; ++run) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, run);
    EdgeStream es = gen_adversarial(spec);
    LazyEngine<ExactBall> engine(std::move(es.initial), {cfg.phi, cfg.k, run_seed, false}, {});
    for (const Edge& e : es.stream) engine.insert(e.u, e.v);
    double total = 0.0;
    for (VertexId u : side_a) {
      const auto& truth = oracle.ball(engine.graph(), u, 2);
      if (truth.size() != 2ull * delta + spec.pendant_count()) report.ball_sizes_exact = false;
      total += static_cast<double>(engine.ball2(u).size()) / static_cast<double>(truth.size());
    }
    report.coverage_adversarial += total / side_a.size();
    report.union_ops_adversarial += static_cast<double>(engine.cost().union_ops());
    if (static_cast<double>(engine.cost().union_ops()) >
        bound_factor * static_cast<double>(engine.cost().insertions))
      report.cost_bound_holds = false;
  }

  // Same final edge set as a uniform permutation from an empty start.
  EdgeStream reference = gen_adversarial(spec);
  DynamicGraph final_graph(false);
  final_graph.ensure_vertex(
      static_cast<VertexId>(reference.initial.vertex_count() - 1));
  for (const Edge& e : reference.initial.edges()) final_graph.add_edge(e.u, e.v);
  for (const Edge& e : reference.stream) final_graph.add_edge(e.u, e.v);
  for (std::uint32_t run = 0; run < cfg.runs; ++run) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, run);
    EdgeStream es = gen_random_permutation(final_graph, run_seed, 0.0);
    LazyEngine<ExactBall> engine(std::move(es.initial), {cfg.phi, cfg.k, run_seed, false}, {});
    for (const Edge& e : es.stream) engine.insert(e.u, e.v);
    double total = 0.0;
    for (VertexId u : side_a) {
      const auto& truth = oracle.ball(engine.graph(), u, 2);
      total += static_cast<double>(engine.ball2(u).size()) / static_cast<double>(truth.size());
    }
    report.coverage_random += total / side_a.size();
    report.union_ops_random += static_cast<double>(engine.cost().union_ops());
    if (static_cast<double>(engine.cost().union_ops()) >
        bound_factor * static_cast<double>(engine.cost().insertions))
      report.cost_bound_holds = false;
  }

  report.coverage_adversarial /= cfg.runs;
  report.coverage_random /= cfg.runs;
  report.union_ops_adversarial /= cfg.runs;
  report.union_ops_random /= cfg.runs;
  return report;
}

// ---------------------------------------------------------------------------
// Local-sparsity check

struct GammaCheckReport {
  SparsityReport sparsity;
  double epsilon = 0.5;
  std::uint32_t k_used = 0;       // ceil(4 (gamma + 1) / epsilon)
  double coverage_mean = 0.0;     // all vertices, endpoint-sorted order
  double coverage_target = 0.5;   // 1 - epsilon
};

// Classifies the graph, then replays its edges in sorted (non-random) order
// with phi = 1 and the k suggested by the sparsity class, reporting mean
// final coverage against the 1 - epsilon target.
inline GammaCheckReport check_gamma(const DynamicGraph& g, double epsilon,
                                    const ExperimentConfig& cfg) {
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("gamma-check: epsilon must lie in (0, 1)");
  GammaCheckReport report;
  report.sparsity = gamma_sparsity(g);
  report.epsilon = epsilon;
  report.k_used = static_cast<std::uint32_t>(
      std::ceil(4.0 * (report.sparsity.gamma_min + 1) / epsilon));
  report.coverage_target = 1.0 - epsilon;

  std::vector<Edge> stream = g.edges();
  std::sort(stream.begin(), stream.end(), [](const Edge& a, const Edge& b) {
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });

  BallOracle oracle;
  for (std::uint32_t run = 0; run < cfg.runs; ++run) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, run);
    DynamicGraph empty(false);
    if (g.vertex_count() > 0) empty.ensure_vertex(static_cast<VertexId>(g.vertex_count() - 1));
    LazyEngine<ExactBall> engine(std::move(empty), {1.0, report.k_used, run_seed, false}, {});
    for (const Edge& e : stream) engine.insert(e.u, e.v);
    double total = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) total += coverage(engine, oracle, v);
    report.coverage_mean += total / static_cast<double>(g.vertex_count());
  }
  report.coverage_mean /= cfg.runs;
  return report;
}

}  // namespace twohop
