#pragma once
// Stream and graph generators: random-permutation streams over a final edge
// set, the pathological bipartite-plus-pendants instance, and desk-scale
// synthetic graphs (uniform random, preferential attachment, and a few
// girth-5 constructions). Everything is deterministic per seed.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "twohop/graph.hpp"
#include "twohop/rng.hpp"

namespace twohop {

// An initial graph plus the ordered insertions to replay on top of it.
struct EdgeStream {
  DynamicGraph initial;
  std::vector<Edge> stream;
};

// Uniform shuffle of the final edge set; the first floor(init_fraction * m)
// edges become the initial graph, the rest the stream. Vertex ids (and the
// vertex count) of `final_graph` are preserved.
inline EdgeStream gen_random_permutation(const DynamicGraph& final_graph, std::uint64_t seed,
                                         double init_fraction) {
  if (init_fraction < 0.0 || init_fraction >= 1.0)
    throw std::invalid_argument("gen_random_permutation: init_fraction must lie in [0, 1)");
  std::vector<Edge> edges = final_graph.edges();
  SplitMix64 rng(derive_seed(seed, 0x70e5));
  for (std::size_t i = edges.size(); i > 1; --i)
    std::swap(edges[i - 1], edges[rng.next_below(i)]);

  EdgeStream out{DynamicGraph(final_graph.directed()), {}};
  if (final_graph.vertex_count() > 0)
    out.initial.ensure_vertex(static_cast<VertexId>(final_graph.vertex_count() - 1));
  const std::size_t cut = static_cast<std::size_t>(init_fraction * static_cast<double>(edges.size()));
  for (std::size_t i = 0; i < cut; ++i) out.initial.add_edge(edges[i].u, edges[i].v);
  out.stream.assign(edges.begin() + static_cast<std::ptrdiff_t>(cut), edges.end());
  return out;
}

// Complete bipartite core K_{delta,delta} plus delta * rho^2 isolated
// vertices; the stream then walks the second side round-robin, pairing each
// visit with a fresh pendant vertex. Vertex layout: side_a() then side_b()
// then pendants().
struct AdversarialSpec {
  std::uint32_t delta = 1;  // side size of the bipartite core
  std::uint32_t rho = 1;    // each side-b vertex gains rho^2 pendant edges

  std::uint32_t pendant_count() const { return delta * rho * rho; }
  std::vector<VertexId> side_a() const { return range(0, delta); }
  std::vector<VertexId> side_b() const { return range(delta, 2 * delta); }
  std::vector<VertexId> pendants() const { return range(2 * delta, 2 * delta + pendant_count()); }

 private:
  static std::vector<VertexId> range(std::uint32_t lo, std::uint32_t hi) {
    std::vector<VertexId> out;
    out.reserve(hi - lo);
    for (std::uint32_t v = lo; v < hi; ++v) out.push_back(v);
    return out;
  }
};

inline EdgeStream gen_adversarial(const AdversarialSpec& spec) {
  if (spec.delta < 1 || spec.rho < 1)
    throw std::invalid_argument("gen_adversarial: delta and rho must be >= 1");
  EdgeStream out{DynamicGraph(false), {}};
  const std::uint32_t n = 2 * spec.delta + spec.pendant_count();
  out.initial.ensure_vertex(n - 1);
  for (std::uint32_t i = 0; i < spec.delta; ++i)
    for (std::uint32_t j = 0; j < spec.delta; ++j) out.initial.add_edge(i, spec.delta + j);
  out.stream.reserve(spec.pendant_count());
  for (std::uint32_t t = 0; t < spec.pendant_count(); ++t)
    out.stream.push_back({spec.delta + (t % spec.delta), 2 * spec.delta + t});
  return out;
}

// Uniform simple graph with exactly m distinct edges.
inline DynamicGraph gen_er(std::uint32_t n, std::uint64_t m, std::uint64_t seed) {
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > max_edges) throw std::invalid_argument("gen_er: m exceeds n*(n-1)/2");
  DynamicGraph g(false);
  if (n > 0) g.ensure_vertex(n - 1);
  g.reserve_edges(m);
  SplitMix64 rng(derive_seed(seed, 0xe12));
  if (m * 2 > max_edges) {
    // Dense request: partial shuffle of the full pair list.
    std::vector<Edge> pairs;
    pairs.reserve(max_edges);
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) pairs.push_back({u, v});
    for (std::uint64_t i = 0; i < m; ++i) {
      std::swap(pairs[i], pairs[i + rng.next_below(pairs.size() - i)]);
      g.add_edge(pairs[i].u, pairs[i].v);
    }
  } else {
    std::uint64_t added = 0;
    while (added < m) {
      const VertexId u = static_cast<VertexId>(rng.next_below(n));
      const VertexId v = static_cast<VertexId>(rng.next_below(n));
      if (g.add_edge(u, v) == InsertOutcome::Inserted) ++added;
    }
  }
  return g;
}

// Preferential attachment: m0 seed vertices, then each new vertex attaches
// to `edges_per_step` distinct existing vertices sampled proportionally to
// degree (urn of edge endpoints, seeds start with one ticket each).
inline DynamicGraph gen_ba(std::uint32_t n, std::uint32_t m0, std::uint32_t edges_per_step,
                           std::uint64_t seed) {
  if (m0 == 0 || edges_per_step == 0 || edges_per_step > m0 || n < m0)
    throw std::invalid_argument("gen_ba: need n >= m0 >= edges_per_step >= 1");
  DynamicGraph g(false);
  g.ensure_vertex(n - 1);
  g.reserve_edges(static_cast<std::size_t>(n - m0) * edges_per_step);
  SplitMix64 rng(derive_seed(seed, 0xba));
  std::vector<VertexId> urn;
  urn.reserve(2 * static_cast<std::size_t>(n - m0) * edges_per_step + m0);
  for (VertexId v = 0; v < m0; ++v) urn.push_back(v);
  std::vector<VertexId> targets;
  for (VertexId v = m0; v < n; ++v) {
    targets.clear();
    while (targets.size() < edges_per_step) {
      const VertexId t = urn[rng.next_below(urn.size())];
      if (t != v && std::find(targets.begin(), targets.end(), t) == targets.end())
        targets.push_back(t);
    }
    for (VertexId t : targets) {
      g.add_edge(v, t);
      urn.push_back(t);
      urn.push_back(v);
    }
  }
  return g;
}

// The 10-vertex, girth-5 cubic graph: outer cycle 0..4, inner pentagram
// 5..9, spokes i -- i+5.
inline DynamicGraph petersen_graph() {
  DynamicGraph g(false);
  g.ensure_vertex(9);
  for (VertexId i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
    g.add_edge(i, 5 + i);
  }
  return g;
}

// Vertex-edge incidence graph of a simple undirected graph: one node per
// vertex of h, one per edge of h, joined when incident. Always bipartite
// with girth >= 6, hence locally 0-sparse.
inline DynamicGraph incidence_graph(const DynamicGraph& h) {
  if (h.directed()) throw std::invalid_argument("incidence_graph: undirected input only");
  const auto edges = h.edges();
  DynamicGraph g(false);
  if (h.vertex_count() + edges.size() > 0)
    g.ensure_vertex(static_cast<VertexId>(h.vertex_count() + edges.size() - 1));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const VertexId e = static_cast<VertexId>(h.vertex_count() + i);
    g.add_edge(edges[i].u, e);
    g.add_edge(edges[i].v, e);
  }
  return g;
}

// Equally spaced snapshot positions over a stream: count positions ending at
// stream_len (positions are "after this many insertions").
inline std::vector<std::size_t> snapshot_positions(std::size_t stream_len, std::size_t count) {
  std::vector<std::size_t> out;
  if (count == 0 || stream_len == 0) return out;
  count = std::min(count, stream_len);
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) out.push_back(stream_len * i / count);
  return out;
}

}  // namespace twohop
