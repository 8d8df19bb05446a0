#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "twohop/generators.hpp"
#include "twohop/oracle.hpp"
#include "twohop/sparsity.hpp"

using namespace twohop;

namespace {

std::vector<Edge> canonical(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  return edges;
}

}  // namespace

TEST(RandomPermutation, SplitsAndDeterminism) {
  const DynamicGraph g = gen_er(100, 400, 1);
  EdgeStream all = gen_random_permutation(g, 7, 0.0);
  EXPECT_EQ(all.initial.edge_count(), 0u);
  EXPECT_EQ(all.initial.vertex_count(), g.vertex_count());
  EXPECT_EQ(all.stream.size(), g.edge_count());

  EdgeStream split = gen_random_permutation(g, 7, 0.25);
  EXPECT_EQ(split.initial.edge_count(), 100u);
  EXPECT_EQ(split.stream.size(), 300u);

  EdgeStream again = gen_random_permutation(g, 7, 0.25);
  EXPECT_EQ(split.stream, again.stream);
  EdgeStream other = gen_random_permutation(g, 8, 0.25);
  EXPECT_NE(split.stream, other.stream);

  EXPECT_THROW(gen_random_permutation(g, 1, 1.0), std::invalid_argument);
}

TEST(RandomPermutation, ReplayReproducesFinalEdgeSet) {
  const DynamicGraph g = gen_ba(200, 3, 3, 9);
  EdgeStream es = gen_random_permutation(g, 3, 0.3);
  DynamicGraph replayed = es.initial;
  for (const Edge& e : es.stream)
    ASSERT_EQ(replayed.add_edge(e.u, e.v), InsertOutcome::Inserted);
  EXPECT_EQ(replayed.edge_count(), g.edge_count());
  EXPECT_EQ(canonical(replayed.edges()), canonical(g.edges()));
}

TEST(RandomPermutation, UniformOverOrderings) {
  // Four edges admit 24 orders; over 10^4 shuffles each order's frequency
  // stays within three binomial sigmas of 1/24.
  DynamicGraph g;
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(4, 5);
  g.add_edge(6, 7);
  std::map<std::vector<std::uint32_t>, int> counts;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    EdgeStream es = gen_random_permutation(g, 50000 + t, 0.0);
    std::vector<std::uint32_t> order;
    for (const Edge& e : es.stream) order.push_back(e.u);
    ++counts[order];
  }
  EXPECT_EQ(counts.size(), 24u);
  const double expected = trials / 24.0;
  const double sigma = std::sqrt(trials * (1.0 / 24.0) * (23.0 / 24.0));
  for (const auto& [order, count] : counts)
    EXPECT_NEAR(static_cast<double>(count), expected, 3.0 * sigma);
}

TEST(Adversarial, SmallestInstanceLayout) {
  const AdversarialSpec spec{2, 1};
  EdgeStream es = gen_adversarial(spec);
  EXPECT_EQ(es.initial.vertex_count(), 6u);       // K_{2,2} plus 2 isolated
  EXPECT_EQ(es.initial.edge_count(), 4u);
  EXPECT_EQ(es.stream.size(), 2u);
  EXPECT_EQ(es.stream[0].u, 2u);                  // one pendant per side-b vertex
  EXPECT_EQ(es.stream[1].u, 3u);
  for (VertexId v : spec.pendants()) EXPECT_EQ(es.initial.degree(v), 0u);
}

TEST(Adversarial, RoundRobinCountsAndDegrees) {
  const AdversarialSpec spec{4, 2};
  EXPECT_EQ(spec.pendant_count(), 16u);
  EdgeStream es = gen_adversarial(spec);
  EXPECT_EQ(es.stream.size(), 16u);
  std::map<VertexId, int> per_b;
  DynamicGraph g = es.initial;
  for (const Edge& e : es.stream) {
    ++per_b[e.u];
    ASSERT_EQ(g.add_edge(e.u, e.v), InsertOutcome::Inserted);
  }
  for (VertexId b : spec.side_b()) EXPECT_EQ(per_b[b], 4);  // rho^2 each
  for (VertexId p : spec.pendants()) EXPECT_EQ(g.degree(p), 1u);
  // Every side-a vertex sees both sides plus all pendants at distance two.
  for (VertexId a : spec.side_a())
    EXPECT_EQ(exact_ball(g, a, 2).size(), 2u * spec.delta + spec.pendant_count());
}

TEST(ErGenerator, ExactCountsAndDensity) {
  const DynamicGraph full = gen_er(10, 45, 3);
  EXPECT_EQ(full.edge_count(), 45u);  // the complete graph on 10 vertices
  for (VertexId v = 0; v < 10; ++v) EXPECT_EQ(full.degree(v), 9u);

  const DynamicGraph sparse = gen_er(100, 200, 3);
  EXPECT_EQ(sparse.edge_count(), 200u);
  EXPECT_EQ(sparse.vertex_count(), 100u);

  const DynamicGraph a = gen_er(100, 200, 5);
  const DynamicGraph b = gen_er(100, 200, 5);
  EXPECT_EQ(canonical(a.edges()), canonical(b.edges()));

  EXPECT_THROW(gen_er(10, 46, 1), std::invalid_argument);
}

TEST(BaGenerator, SizeAndRightSkew) {
  const DynamicGraph g = gen_ba(2000, 3, 3, 11);
  EXPECT_EQ(g.vertex_count(), 2000u);
  EXPECT_EQ(g.edge_count(), (2000u - 3u) * 3u);
  // Preferential attachment produces a heavy right tail: the maximum degree
  // dwarfs the median across seeds.
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const DynamicGraph h = gen_ba(2000, 3, 3, seed);
    std::vector<std::size_t> degs;
    for (VertexId v = 0; v < h.vertex_count(); ++v) degs.push_back(h.degree(v));
    std::sort(degs.begin(), degs.end());
    const std::size_t median = degs[degs.size() / 2];
    EXPECT_GT(degs.back(), 4 * median) << "seed=" << seed;
  }
  EXPECT_THROW(gen_ba(10, 0, 1, 1), std::invalid_argument);
  EXPECT_THROW(gen_ba(10, 2, 3, 1), std::invalid_argument);
}

TEST(Petersen, ThreeRegularTenVertices) {
  const DynamicGraph g = petersen_graph();
  EXPECT_EQ(g.vertex_count(), 10u);
  EXPECT_EQ(g.edge_count(), 15u);
  for (VertexId v = 0; v < 10; ++v) EXPECT_EQ(g.degree(v), 3u);
}

TEST(IncidenceGraph, BipartiteAndLocallyZeroSparse) {
  const DynamicGraph h = gen_er(12, 20, 21);
  const DynamicGraph g = incidence_graph(h);
  EXPECT_EQ(g.vertex_count(), h.vertex_count() + h.edge_count());
  EXPECT_EQ(g.edge_count(), 2 * h.edge_count());
  // Edge-side vertices have degree exactly two.
  for (VertexId e = 12; e < g.vertex_count(); ++e) EXPECT_EQ(g.degree(e), 2u);
  const auto report = gamma_sparsity(g);
  EXPECT_EQ(report.gamma_min, 0u);
  EXPECT_EQ(report.girth_class, GirthClass::AtLeastFive);
}

TEST(SnapshotPositions, EquallySpacedEndingAtStreamLength) {
  EXPECT_EQ(snapshot_positions(100, 4), (std::vector<std::size_t>{25, 50, 75, 100}));
  EXPECT_EQ(snapshot_positions(5, 10), (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  EXPECT_TRUE(snapshot_positions(0, 5).empty());
  const auto pos = snapshot_positions(977, 20);
  EXPECT_EQ(pos.size(), 20u);
  EXPECT_EQ(pos.back(), 977u);
  EXPECT_TRUE(std::is_sorted(pos.begin(), pos.end()));
}
