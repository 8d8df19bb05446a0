#pragma once
// Harmonic centrality scoring (exact, 2-hop truncated, and the truncated
// form driven by estimated ball sizes), rank-quality metrics and a min-heap
// tracker for the continuously maintained top-h vertices.
//
// Ranking ties break deterministically: descending score, then ascending
// vertex id.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "twohop/graph.hpp"

namespace twohop {

enum class ScoreKind { Exact, Truncated, ApproxTruncated };

struct CentralityScores {
  ScoreKind kind = ScoreKind::Exact;
  std::vector<double> values;  // indexed by vertex id
};

// Sum over reachable u != v of 1 / dist(v, u); unreachable pairs contribute
// nothing. One full BFS per vertex.
inline CentralityScores harmonic_exact(const DynamicGraph& g) {
  const std::size_t n = g.vertex_count();
  CentralityScores out{ScoreKind::Exact, std::vector<double>(n, 0.0)};
  std::vector<std::uint32_t> dist(n);
  std::vector<VertexId> queue;
  queue.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    std::fill(dist.begin(), dist.end(), ~std::uint32_t{0});
    queue.clear();
    queue.push_back(v);
    dist[v] = 0;
    double score = 0.0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VertexId x = queue[head];
      if (x != v) score += 1.0 / static_cast<double>(dist[x]);
      for (VertexId w : g.neighbors(x))
        if (dist[w] == ~std::uint32_t{0}) {
          dist[w] = dist[x] + 1;
          queue.push_back(w);
        }
    }
    out.values[v] = score;
  }
  return out;
}

// |L1(v)| + |L2(v)| / 2 from a two-level BFS.
inline CentralityScores harmonic_truncated(const DynamicGraph& g) {
  const std::size_t n = g.vertex_count();
  CentralityScores out{ScoreKind::Truncated, std::vector<double>(n, 0.0)};
  std::vector<std::uint64_t> stamp(n, 0);
  std::uint64_t now = 0;
  for (VertexId v = 0; v < n; ++v) {
    ++now;
    stamp[v] = now;
    std::size_t l1 = 0, l2 = 0;
    for (VertexId w : g.neighbors(v))
      if (stamp[w] != now) {
        stamp[w] = now;
        ++l1;
      }
    for (VertexId w : g.neighbors(v))
      for (VertexId z : g.neighbors(w))
        if (stamp[z] != now) {
          stamp[z] = now;
          ++l2;
        }
    out.values[v] = static_cast<double>(l1) + static_cast<double>(l2) / 2.0;
  }
  return out;
}

// Truncated harmonic centrality from a single vertex's estimated ball sizes.
// Negative intermediate differences (possible under sketch noise) clamp to 0
// so scores never dip below what the 1-ball alone implies.
inline double approx_truncated_score(double ball1_size, double ball2_size) {
  const double l1 = std::max(0.0, ball1_size - 1.0);
  const double l2 = std::max(0.0, ball2_size - ball1_size);
  return l1 + l2 / 2.0;
}

// Scores every vertex of an engine via its estimated ball sizes. Works for
// any store exposing estimate_size (exact sets and KMV counters).
template <typename Engine>
CentralityScores harmonic_approx(const Engine& engine) {
  const std::size_t n = engine.vertex_count();
  CentralityScores out{ScoreKind::ApproxTruncated, std::vector<double>(n, 0.0)};
  for (VertexId v = 0; v < n; ++v)
    out.values[v] =
        approx_truncated_score(engine.ball1(v).estimate_size(), engine.ball2(v).estimate_size());
  return out;
}

// Vertex ids ordered by descending score, ascending id on ties.
inline std::vector<VertexId> rank_by_score(const std::vector<double>& scores) {
  std::vector<VertexId> order(scores.size());
  for (VertexId v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return order;
}

// The top ceil(alpha_pct% of n) ids of a ranking.
inline std::vector<VertexId> top_fraction(const std::vector<VertexId>& ranking, double alpha_pct) {
  const auto take = static_cast<std::size_t>(
      std::ceil(static_cast<double>(ranking.size()) * alpha_pct / 100.0));
  return {ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(std::min(take, ranking.size()))};
}

inline double recall_at(const std::vector<VertexId>& true_top,
                        const std::vector<VertexId>& estimated_top) {
  if (true_top.empty()) throw std::invalid_argument("recall_at: empty reference set");
  std::unordered_set<VertexId> reference(true_top.begin(), true_top.end());
  std::size_t hit = 0;
  for (VertexId v : estimated_top)
    if (reference.contains(v)) ++hit;
  return static_cast<double>(hit) / static_cast<double>(reference.size());
}

namespace detail {

// Average ranks (1-based), ties share the mean of their positions.
inline std::vector<double> average_ranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  if (va == 0.0 || vb == 0.0) return 0.0;
  return cov / std::sqrt(va * vb);
}

}  // namespace detail

// Spearman rank correlation of two paired score lists; ties handled with
// average ranks.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("spearman: need two equal lists of >= 2 scores");
  return detail::pearson(detail::average_ranks(x), detail::average_ranks(y));
}

// Kendall tau-b of two paired score lists.
inline double kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("kendall_tau: need two equal lists of >= 2 scores");
  const std::size_t n = x.size();
  std::int64_t concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) {
        ++ties_x;
        ++ties_y;
      } else if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  const double n0 = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  const double denom =
      std::sqrt((n0 - static_cast<double>(ties_x)) * (n0 - static_cast<double>(ties_y)));
  if (denom == 0.0) return 0.0;
  return static_cast<double>(concordant - discordant) / denom;
}

// Maintains the h best (score, id) pairs seen so far under the tie rule
// above. A binary min-heap ordered worst-first plus an id -> slot index give
// O(log h) updates and O(1) access to the current minimum.
class TopHTracker {
 public:
  explicit TopHTracker(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("tracker: capacity must be positive");
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return heap_.size(); }

  bool tracks(VertexId v) const { return slot_.contains(v); }

  // The worst tracked entry; only valid when size() > 0.
  std::pair<VertexId, double> min_entry() const { return {heap_[0].id, heap_[0].score}; }

  std::vector<VertexId> tracked() const {
    std::vector<VertexId> out;
    out.reserve(heap_.size());
    for (const auto& e : heap_) out.push_back(e.id);
    return out;
  }

  // Refreshes v's score. Scores are expected to be non-decreasing per vertex
  // (they are, under insertions with exact stores); decreases are still
  // handled so estimated scores cannot corrupt the heap.
  void update(VertexId v, double score) {
    if (auto it = slot_.find(v); it != slot_.end()) {
      heap_[it->second].score = score;
      sift_down(sift_up(it->second));
      return;
    }
    if (heap_.size() < capacity_) {
      heap_.push_back({score, v});
      slot_[v] = heap_.size() - 1;
      sift_up(heap_.size() - 1);
      return;
    }
    if (!worse(Entry{score, v}, heap_[0])) {
      slot_.erase(heap_[0].id);
      heap_[0] = {score, v};
      slot_[v] = 0;
      sift_down(0);
    }
  }

 private:
  struct Entry {
    double score;
    VertexId id;
  };

  // Strictly worse under (descending score, ascending id).
  static bool worse(const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.id > b.id;
  }

  std::size_t sift_up(std::size_t i) {
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!worse(heap_[i], heap_[parent])) break;
      swap_slots(i, parent);
      i = parent;
    }
    return i;
  }

  void sift_down(std::size_t i) {
    while (true) {
      std::size_t best = i;
      for (std::size_t c = 2 * i + 1; c <= 2 * i + 2 && c < heap_.size(); ++c)
        if (worse(heap_[c], heap_[best])) best = c;
      if (best == i) return;
      swap_slots(i, best);
      i = best;
    }
  }

  void swap_slots(std::size_t a, std::size_t b) {
    std::swap(heap_[a], heap_[b]);
    slot_[heap_[a].id] = a;
    slot_[heap_[b].id] = b;
  }

  std::size_t capacity_;
  std::vector<Entry> heap_;
  std::unordered_map<VertexId, std::size_t> slot_;
};

}  // namespace twohop
