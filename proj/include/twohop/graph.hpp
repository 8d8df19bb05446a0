#pragma once
// Mutable adjacency structure for incremental edge streams: dense vertex ids,
// duplicate and self-loop detection, amortized-doubling adjacency growth and
// optional directed mode. Directed graphs keep both out- and in-adjacency
// because deferred light updates have to reach in-neighbors.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace twohop {

using VertexId = std::uint32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class InsertOutcome { Inserted, Duplicate, SelfLoop };

class DynamicGraph {
 public:
  explicit DynamicGraph(bool directed = false) : directed_(directed) {}

  bool directed() const { return directed_; }
  std::size_t vertex_count() const { return out_.size(); }
  std::size_t edge_count() const { return m_; }

  // Vertices may appear mid-stream; ids 0..v exist afterwards.
  void ensure_vertex(VertexId v) {
    if (v >= out_.size()) {
      out_.resize(static_cast<std::size_t>(v) + 1);
      if (directed_) in_.resize(static_cast<std::size_t>(v) + 1);
    }
  }

  // Pre-allocation hints for streams whose size is known up front.
  void reserve_vertices(std::size_t n) {
    out_.reserve(n);
    if (directed_) in_.reserve(n);
  }
  void reserve_edges(std::size_t m) { edges_.reserve(m + m / 4); }

  InsertOutcome add_edge(VertexId u, VertexId v) {
    if (u == v) return InsertOutcome::SelfLoop;
    ensure_vertex(std::max(u, v));
    if (!edges_.insert(key(u, v)).second) return InsertOutcome::Duplicate;
    out_[u].push_back(v);
    if (directed_)
      in_[v].push_back(u);
    else
      out_[v].push_back(u);
    ++m_;
    return InsertOutcome::Inserted;
  }

  bool contains_edge(VertexId u, VertexId v) const {
    if (u == v || std::max(u, v) >= out_.size()) return false;
    return edges_.contains(key(u, v));
  }

  // Out-neighbors in directed mode, in insertion order.
  std::span<const VertexId> neighbors(VertexId u) const { return out_[u]; }
  std::span<const VertexId> in_neighbors(VertexId u) const {
    return directed_ ? std::span<const VertexId>(in_[u]) : std::span<const VertexId>(out_[u]);
  }

  // Out-degree in directed mode.
  std::size_t degree(VertexId u) const { return out_[u].size(); }
  std::size_t in_degree(VertexId u) const { return directed_ ? in_[u].size() : out_[u].size(); }

  // Edge list with u < v in undirected mode, in no particular order.
  std::vector<Edge> edges() const {
    std::vector<Edge> result;
    result.reserve(m_);
    for (VertexId u = 0; u < out_.size(); ++u)
      for (VertexId v : out_[u])
        if (directed_ || u < v) result.push_back({u, v});
    return result;
  }

 private:
  std::uint64_t key(VertexId u, VertexId v) const {
    if (!directed_ && u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  bool directed_;
  std::size_t m_ = 0;
  std::vector<std::vector<VertexId>> out_;
  std::vector<std::vector<VertexId>> in_;
  std::unordered_set<std::uint64_t> edges_;
};

// Dense interning of arbitrary string labels, in first-seen order.
class Interner {
 public:
  VertexId intern(const std::string& label) {
    auto [it, fresh] = ids_.try_emplace(label, static_cast<VertexId>(labels_.size()));
    if (fresh) labels_.push_back(label);
    return it->second;
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(VertexId v) const { return labels_.at(v); }

 private:
  std::unordered_map<std::string, VertexId> ids_;
  std::vector<std::string> labels_;
};

}  // namespace twohop
