#pragma once
// Incremental maintenance of approximate 1- and 2-hop neighborhoods under a
// stream of edge insertions, generic over the ball representation.
//
// Each insertion always applies the two cheap updates at an endpoint x with
// new neighbor y: the singleton union b1(x) += {y} and the heavy union
// b2(x) += b1(y). The expensive per-neighbor light updates are deferred: a
// per-vertex red counter tracks edges arrived since the last flush, and once
// red >= phi * black the whole batch b2(z) += b1(x) for z in N(x) runs and
// the red edges turn black. Insertions that do not fire the batch instead
// refresh k neighbors chosen uniformly without replacement. phi = 0, k = 0
// degenerates to the eager baseline.
//
// Invariants kept in exact-store mode, for every phi and k:
//   b1(v) equals the true 1-ball of v, b2(v) is a subset of the true 2-ball,
//   red + black equals the degree, and after each completed insertion either
//   red == 0 or red < phi * black.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twohop/ball_store.hpp"
#include "twohop/graph.hpp"
#include "twohop/rng.hpp"

namespace twohop {

struct EngineConfig {
  double phi = 0.5;      // laziness threshold in [0, 1]; 0 flushes on every insertion
  std::uint32_t k = 0;   // random light updates per endpoint when the batch does not fire
  std::uint64_t seed = 0;
  bool directed = false;
};

// Union-operation counters. Every element insert or store merge performed by
// the four update kinds counts as one operation; initialization is free.
struct CostAccounting {
  std::uint64_t insertions = 0;
  std::uint64_t b1_ops = 0;
  std::uint64_t heavy_ops = 0;
  std::uint64_t light_batch_ops = 0;
  std::uint64_t random_light_ops = 0;

  std::uint64_t union_ops() const {
    return b1_ops + heavy_ops + light_batch_ops + random_light_ops;
  }
};

struct InsertReport {
  InsertOutcome outcome = InsertOutcome::Inserted;
  bool batch_fired[2] = {false, false};  // per endpoint, in stream order
  std::uint64_t unions_charged = 0;
};

template <BallStore Store>
class LazyEngine {
 public:
  using Factory = typename Store::Factory;

  // Takes ownership of the initial graph and seeds every vertex with its
  // exact 1- and 2-ball (two-level BFS). Initialization is not charged to
  // the union counters.
  LazyEngine(DynamicGraph initial, EngineConfig cfg, Factory factory)
      : graph_(std::move(initial)),
        cfg_(cfg),
        factory_(std::move(factory)),
        rng_(derive_seed(cfg.seed, 0x1a2b)) {
    if (cfg_.phi < 0.0 || cfg_.phi > 1.0)
      throw std::invalid_argument("engine: phi must lie in [0, 1]");
    if (graph_.directed() != cfg_.directed)
      throw std::invalid_argument("engine: directed flag does not match the initial graph");
    states_.reserve(graph_.vertex_count());
    for (VertexId u = 0; u < graph_.vertex_count(); ++u) {
      VertexState st{factory_.make(), factory_.make(), 0,
                     static_cast<std::uint64_t>(graph_.degree(u))};
      st.b1.insert(u);
      st.b2.insert(u);
      for (VertexId w : graph_.neighbors(u)) {
        st.b1.insert(w);
        st.b2.insert(w);
        for (VertexId z : graph_.neighbors(w)) st.b2.insert(z);
      }
      states_.push_back(std::move(st));
    }
  }

  InsertReport insert(VertexId u, VertexId v) {
    return insert(u, v, [](VertexId) {});
  }

  // `touched` is invoked once per vertex whose state was updated by this
  // insertion (endpoints and light-update recipients); continuous queries
  // hook score refreshes on it.
  template <typename TouchFn>
  InsertReport insert(VertexId u, VertexId v, TouchFn&& touched) {
    InsertReport report;
    report.outcome = graph_.add_edge(u, v);
    if (report.outcome != InsertOutcome::Inserted) return report;
    ensure_states();
    ++cost_.insertions;
    const std::uint64_t before = cost_.union_ops();
    process_endpoint(u, v, 0, report, touched);
    if (!graph_.directed()) process_endpoint(v, u, 1, report, touched);
    report.unions_charged = cost_.union_ops() - before;
    return report;
  }

  // Eager reference scheme: both heavy updates plus every light update
  // b2(w) += {y} for w in N(x) \ {y}. Observationally equivalent to the lazy
  // scheme at phi = 0, k = 0.
  InsertReport insert_baseline(VertexId u, VertexId v) {
    InsertReport report;
    report.outcome = graph_.add_edge(u, v);
    if (report.outcome != InsertOutcome::Inserted) return report;
    ensure_states();
    ++cost_.insertions;
    const std::uint64_t before = cost_.union_ops();
    baseline_endpoint(u, v, 0, report);
    if (!graph_.directed()) baseline_endpoint(v, u, 1, report);
    report.unions_charged = cost_.union_ops() - before;
    return report;
  }

  const Store& ball1(VertexId v) const { return state(v).b1; }
  const Store& ball2(VertexId v) const { return state(v).b2; }
  std::uint64_t red_degree(VertexId v) const { return state(v).red; }
  std::uint64_t black_degree(VertexId v) const { return state(v).black; }

  const CostAccounting& cost() const { return cost_; }
  const DynamicGraph& graph() const { return graph_; }
  const EngineConfig& config() const { return cfg_; }
  std::size_t vertex_count() const { return states_.size(); }

 private:
  struct VertexState {
    Store b1;
    Store b2;
    std::uint64_t red = 0;
    std::uint64_t black = 0;
  };

  const VertexState& state(VertexId v) const {
    if (v >= states_.size()) throw std::out_of_range("engine: unknown vertex");
    return states_[v];
  }

  // Vertices appearing mid-stream start with singleton balls and zero
  // counters, as if they had been present but isolated all along.
  void ensure_states() {
    while (states_.size() < graph_.vertex_count()) {
      const VertexId v = static_cast<VertexId>(states_.size());
      VertexState st{factory_.make(), factory_.make(), 0, 0};
      st.b1.insert(v);
      st.b2.insert(v);
      states_.push_back(std::move(st));
    }
  }

  // In directed mode only the tail endpoint is processed: its out-balls grow
  // and the vertices owing a refresh are its in-neighbors.
  std::span<const VertexId> light_recipients(VertexId x) const {
    return graph_.directed() ? graph_.in_neighbors(x) : graph_.neighbors(x);
  }

  template <typename TouchFn>
  void process_endpoint(VertexId x, VertexId y, int slot, InsertReport& report,
                        TouchFn&& touched) {
    VertexState& sx = states_[x];
    sx.b1.insert(y);
    ++cost_.b1_ops;
    sx.b2.merge(states_[y].b1);
    ++cost_.heavy_ops;
    touched(x);
    sx.red += 1;
    if (static_cast<double>(sx.red) >= cfg_.phi * static_cast<double>(sx.black)) {
      sx.black += sx.red;
      sx.red = 0;
      report.batch_fired[slot] = true;
      for (VertexId z : light_recipients(x)) {
        states_[z].b2.merge(sx.b1);
        ++cost_.light_batch_ops;
        touched(z);
      }
    } else if (cfg_.k > 0) {
      const auto recipients = light_recipients(x);
      const std::uint64_t take = std::min<std::uint64_t>(cfg_.k, recipients.size());
      if (take > 0) {
        pick_.clear();
        sample_index_subset(rng_, recipients.size(), take, pick_);
        for (std::uint32_t idx : pick_) {
          const VertexId z = recipients[idx];
          states_[z].b2.merge(sx.b1);
          ++cost_.random_light_ops;
          touched(z);
        }
      }
    }
  }

  void baseline_endpoint(VertexId x, VertexId y, int slot, InsertReport& report) {
    VertexState& sx = states_[x];
    sx.b1.insert(y);
    ++cost_.b1_ops;
    sx.b2.merge(states_[y].b1);
    ++cost_.heavy_ops;
    sx.red += 1;
    sx.black += sx.red;
    sx.red = 0;
    report.batch_fired[slot] = true;
    for (VertexId z : light_recipients(x)) {
      if (z == y) continue;
      states_[z].b2.insert(y);
      ++cost_.light_batch_ops;
    }
  }

  DynamicGraph graph_;
  EngineConfig cfg_;
  Factory factory_;
  SplitMix64 rng_;
  CostAccounting cost_;
  std::vector<VertexState> states_;
  std::vector<std::uint32_t> pick_;
};

}  // namespace twohop
