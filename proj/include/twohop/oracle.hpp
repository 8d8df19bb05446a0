#pragma once
// Ground-truth neighborhood computations by truncated BFS, kept independent
// of the engine's incremental bookkeeping so they can serve as its oracle.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "twohop/engine.hpp"
#include "twohop/graph.hpp"

namespace twohop {

// Stateless helper over a graph; the class only caches stamped scratch
// buffers so repeated queries avoid O(n) clears. The ball returned by
// ball() stays valid, and contains() queryable, until the next call.
class BallOracle {
 public:
  const std::vector<VertexId>& ball(const DynamicGraph& g, VertexId v, int hops) {
    grow(g.vertex_count());
    ++stamp_now_;
    result_.clear();
    visit(v);
    std::size_t level_begin = 0;
    for (int level = 0; level < hops; ++level) {
      const std::size_t level_end = result_.size();
      for (std::size_t i = level_begin; i < level_end; ++i)
        for (VertexId w : g.neighbors(result_[i]))
          if (stamp_[w] != stamp_now_) visit(w);
      level_begin = level_end;
    }
    return result_;
  }

  // Membership in the most recently computed ball.
  bool contains(VertexId u) const { return u < stamp_.size() && stamp_[u] == stamp_now_; }

  // Jaccard similarity of the exact 2-balls of u and v.
  double jaccard2(const DynamicGraph& g, VertexId u, VertexId v) {
    side_ = ball(g, u, 2);
    const auto& other = ball(g, v, 2);
    std::size_t common = 0;
    for (VertexId w : side_)
      if (contains(w)) ++common;
    const std::size_t unions = side_.size() + other.size() - common;
    return unions == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(unions);
  }

 private:
  void grow(std::size_t n) {
    if (stamp_.size() < n) stamp_.resize(n, 0);
  }

  void visit(VertexId w) {
    stamp_[w] = stamp_now_;
    result_.push_back(w);
  }

  std::uint64_t stamp_now_ = 0;
  std::vector<std::uint64_t> stamp_;
  std::vector<VertexId> result_;
  std::vector<VertexId> side_;
};

// Convenience one-shot form; returns the ball sorted ascending.
inline std::vector<VertexId> exact_ball(const DynamicGraph& g, VertexId v, int hops) {
  BallOracle oracle;
  std::vector<VertexId> out = oracle.ball(g, v, hops);
  std::sort(out.begin(), out.end());
  return out;
}

inline double exact_jaccard2(const DynamicGraph& g, VertexId u, VertexId v) {
  BallOracle oracle;
  return oracle.jaccard2(g, u, v);
}

// Fraction of the true 2-ball the engine currently holds. Meaningful for
// exact stores, where the held ball is a subset of the true one.
inline double coverage(const LazyEngine<ExactBall>& engine, BallOracle& oracle, VertexId v) {
  const auto& truth = oracle.ball(engine.graph(), v, 2);
  return static_cast<double>(engine.ball2(v).size()) / static_cast<double>(truth.size());
}

inline double coverage(const LazyEngine<ExactBall>& engine, VertexId v) {
  BallOracle oracle;
  return coverage(engine, oracle, v);
}

}  // namespace twohop
