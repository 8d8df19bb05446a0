#pragma once
// Local sparsity measure and short-cycle classification. A graph is locally
// gamma-sparse when, around every vertex u, each 1-hop neighbor has at most
// gamma neighbors inside L1(u) and each 2-hop vertex has at most gamma + 1
// neighbors inside L1(u). gamma_min = 0 coincides with girth >= 5; the cycle
// classifier below is computed independently (triangle and 4-cycle
// detection) so that equivalence stays testable.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "twohop/graph.hpp"

namespace twohop {

enum class GirthClass { Three, Four, AtLeastFive };

struct SparsityReport {
  std::uint32_t gamma_min = 0;
  GirthClass girth_class = GirthClass::AtLeastFive;
  // An offending (center, vertex, neighbor) triple achieving gamma_min > 0.
  std::array<VertexId, 3> witness{0, 0, 0};
};

inline bool has_triangle(const DynamicGraph& g) {
  std::vector<bool> mark(g.vertex_count(), false);
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (VertexId v : g.neighbors(u)) mark[v] = true;
    for (VertexId v : g.neighbors(u)) {
      if (v < u) continue;
      for (VertexId w : g.neighbors(v))
        if (w > v && mark[w]) {
          for (VertexId x : g.neighbors(u)) mark[x] = false;
          return true;
        }
    }
    for (VertexId v : g.neighbors(u)) mark[v] = false;
  }
  return false;
}

inline bool has_four_cycle(const DynamicGraph& g) {
  // Two distinct length-2 paths u-v1-w and u-v2-w close a 4-cycle; w is
  // never u, v1 or v2 because loops and parallel edges are excluded.
  std::vector<std::uint32_t> paths(g.vertex_count(), 0);
  std::vector<VertexId> touched;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    bool found = false;
    for (VertexId v : g.neighbors(u)) {
      for (VertexId w : g.neighbors(v)) {
        if (w == u) continue;
        if (++paths[w] == 2) {
          found = true;
          break;
        }
        touched.push_back(w);
      }
      if (found) break;
    }
    for (VertexId w : touched) paths[w] = 0;
    touched.clear();
    if (found) return true;
    // counters were reset via touched; nothing lingers when found is false
  }
  return false;
}

// Brute-force evaluation over every vertex's 2-hop neighborhood; quadratic
// in local volume and meant for desk-scale graphs only.
inline SparsityReport gamma_sparsity(const DynamicGraph& g) {
  if (g.directed()) throw std::invalid_argument("gamma_sparsity: undirected graphs only");
  SparsityReport report;
  report.girth_class = has_triangle(g)      ? GirthClass::Three
                       : has_four_cycle(g)  ? GirthClass::Four
                                            : GirthClass::AtLeastFive;

  std::vector<std::uint8_t> in_l1(g.vertex_count(), 0);
  std::vector<std::uint8_t> seen_l2(g.vertex_count(), 0);
  std::vector<VertexId> l2;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (VertexId v : g.neighbors(u)) in_l1[v] = 1;
    // (i) degree of each v in the subgraph induced by L1(u)
    for (VertexId v : g.neighbors(u)) {
      std::uint32_t inside = 0;
      VertexId last = v;
      for (VertexId w : g.neighbors(v))
        if (in_l1[w]) {
          ++inside;
          last = w;
        }
      if (inside > report.gamma_min) {
        report.gamma_min = inside;
        report.witness = {u, v, last};
      }
    }
    // (ii) neighbors of each w in L2(u) that land in L1(u), minus the one
    // edge that puts w at distance two
    l2.clear();
    for (VertexId v : g.neighbors(u))
      for (VertexId w : g.neighbors(v)) {
        if (w == u || in_l1[w] || seen_l2[w]) continue;
        seen_l2[w] = 1;
        l2.push_back(w);
      }
    for (VertexId w : l2) {
      std::uint32_t inside = 0;
      VertexId last = w;
      for (VertexId x : g.neighbors(w))
        if (in_l1[x]) {
          ++inside;
          last = x;
        }
      if (inside >= 1 && inside - 1 > report.gamma_min) {
        report.gamma_min = inside - 1;
        report.witness = {u, w, last};
      }
      seen_l2[w] = 0;
    }
    for (VertexId v : g.neighbors(u)) in_l1[v] = 0;
  }
  return report;
}

}  // namespace twohop
