#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "twohop/engine.hpp"
#include "twohop/generators.hpp"
#include "twohop/oracle.hpp"

using namespace twohop;

namespace {

LazyEngine<ExactBall> exact_engine(DynamicGraph g0, double phi, std::uint32_t k,
                                   std::uint64_t seed = 1) {
  const bool directed = g0.directed();
  return LazyEngine<ExactBall>(std::move(g0), {phi, k, seed, directed}, {});
}

std::vector<VertexId> sorted_members(const ExactBall& ball) {
  std::vector<VertexId> out(ball.members().begin(), ball.members().end());
  std::sort(out.begin(), out.end());
  return out;
}

// True-ball equality for one vertex against the BFS oracle.
bool matches_oracle(const LazyEngine<ExactBall>& eng, BallOracle& oracle, VertexId v) {
  const auto& truth = oracle.ball(eng.graph(), v, 2);
  const ExactBall& held = eng.ball2(v);
  if (held.size() != truth.size()) return false;
  for (VertexId w : truth)
    if (!held.contains(w)) return false;
  return true;
}

bool subset_of_oracle(const LazyEngine<ExactBall>& eng, BallOracle& oracle, VertexId v) {
  oracle.ball(eng.graph(), v, 2);
  for (VertexId w : eng.ball2(v).members())
    if (!oracle.contains(w)) return false;
  return true;
}

bool ball1_exact(const LazyEngine<ExactBall>& eng, VertexId v) {
  const auto& b1 = eng.ball1(v);
  if (b1.size() != eng.graph().degree(v) + 1) return false;
  if (!b1.contains(v)) return false;
  for (VertexId w : eng.graph().neighbors(v))
    if (!b1.contains(w)) return false;
  return true;
}

void check_counters(const LazyEngine<ExactBall>& eng) {
  const double phi = eng.config().phi;
  for (VertexId v = 0; v < eng.vertex_count(); ++v) {
    ASSERT_EQ(eng.red_degree(v) + eng.black_degree(v), eng.graph().degree(v));
    if (phi == 0.0) {
      ASSERT_EQ(eng.red_degree(v), 0u);
    } else {
      ASSERT_TRUE(eng.red_degree(v) == 0 ||
                  static_cast<double>(eng.red_degree(v)) <
                      phi * static_cast<double>(eng.black_degree(v)));
    }
  }
}

}  // namespace

TEST(EngineInit, PathAndCompleteGraph) {
  DynamicGraph path;
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  auto eng = exact_engine(std::move(path), 1.0, 0);
  EXPECT_EQ(sorted_members(eng.ball2(0)), (std::vector<VertexId>{0, 1, 2}));
  EXPECT_EQ(sorted_members(eng.ball1(0)), (std::vector<VertexId>{0, 1}));
  EXPECT_EQ(eng.black_degree(1), 2u);
  EXPECT_EQ(eng.red_degree(1), 0u);

  DynamicGraph k4;
  for (VertexId u = 0; u < 4; ++u)
    for (VertexId v = u + 1; v < 4; ++v) k4.add_edge(u, v);
  auto eng4 = exact_engine(std::move(k4), 1.0, 0);
  for (VertexId u = 0; u < 4; ++u) EXPECT_EQ(eng4.ball2(u).size(), 4u);
}

TEST(EngineInit, VerticesAppearingMidStreamStartSingleton) {
  auto eng = exact_engine(DynamicGraph{}, 1.0, 0);
  EXPECT_EQ(eng.vertex_count(), 0u);
  eng.insert(0, 1);
  eng.insert(4, 1);
  EXPECT_EQ(eng.vertex_count(), 5u);
  EXPECT_EQ(sorted_members(eng.ball2(3)), (std::vector<VertexId>{3}));
  EXPECT_EQ(eng.black_degree(3) + eng.red_degree(3), 0u);
}

TEST(EngineInsert, HandTraceTwoEdges) {
  // phi = 1, k = 0, empty start, insert (0,1) then (1,2). Both insertions
  // fire the batch at every endpoint (red reaches the threshold at black 0
  // and at black 1), leaving every 2-ball complete.
  auto eng = exact_engine(DynamicGraph{}, 1.0, 0);
  InsertReport r1 = eng.insert(0, 1);
  EXPECT_TRUE(r1.batch_fired[0]);
  EXPECT_TRUE(r1.batch_fired[1]);
  EXPECT_EQ(r1.unions_charged, 6u);  // 2 singleton + 2 heavy + 1 light per side
  InsertReport r2 = eng.insert(1, 2);
  EXPECT_TRUE(r2.batch_fired[0]);
  EXPECT_TRUE(r2.batch_fired[1]);
  for (VertexId v = 0; v < 3; ++v)
    EXPECT_EQ(sorted_members(eng.ball2(v)), (std::vector<VertexId>{0, 1, 2})) << "v=" << v;
  check_counters(eng);
}

TEST(EngineInsert, StarTraceFiringSchedule) {
  // phi = 1, k = 0, leaves 1..8 attached to center 0 one at a time. The
  // center's batch fires after insertions 1, 2, 4 and 8 (red catches up with
  // black exactly when the degree doubles). After 7 insertions leaf 1 misses
  // the three leaves added since the batch at degree 4; the 8th insertion
  // fires again and completes every leaf. Traced by hand and cross-checked
  // against the BFS oracle.
  auto eng = exact_engine(DynamicGraph{}, 1.0, 0);
  BallOracle oracle;
  bool fired_at[9] = {};
  for (VertexId leaf = 1; leaf <= 8; ++leaf) {
    InsertReport r = eng.insert(0, leaf);
    fired_at[leaf] = r.batch_fired[0];
    // the center's 2-ball is always complete: it receives a heavy update on
    // every insertion and each leaf flushes toward it immediately
    ASSERT_TRUE(matches_oracle(eng, oracle, 0));
    if (leaf == 7) {
      EXPECT_EQ(eng.ball2(1).size(), 5u);  // {center, leaves 1..4}
      EXPECT_DOUBLE_EQ(coverage(eng, oracle, 1), 5.0 / 9.0);
    }
  }
  EXPECT_TRUE(fired_at[1]);
  EXPECT_TRUE(fired_at[2]);
  EXPECT_FALSE(fired_at[3]);
  EXPECT_TRUE(fired_at[4]);
  EXPECT_FALSE(fired_at[5]);
  EXPECT_FALSE(fired_at[6]);
  EXPECT_FALSE(fired_at[7]);
  EXPECT_TRUE(fired_at[8]);
  for (VertexId v = 0; v <= 8; ++v) EXPECT_TRUE(matches_oracle(eng, oracle, v));
  EXPECT_EQ(eng.red_degree(0), 0u);
  EXPECT_EQ(eng.black_degree(0), 8u);
}

TEST(EngineInsert, PhiZeroTracksOracleAtEveryPrefix) {
  const DynamicGraph final_graph = gen_er(60, 300, 5);
  EdgeStream es = gen_random_permutation(final_graph, 5, 0.0);
  auto eng = exact_engine(std::move(es.initial), 0.0, 0);
  BallOracle oracle;
  for (const Edge& e : es.stream) {
    eng.insert(e.u, e.v);
    for (VertexId v = 0; v < eng.vertex_count(); ++v) {
      ASSERT_TRUE(matches_oracle(eng, oracle, v));
      ASSERT_TRUE(ball1_exact(eng, v));
    }
  }
  check_counters(eng);
}

TEST(EngineInsert, DuplicatesAndLoopsLeaveStateUntouched) {
  auto eng = exact_engine(DynamicGraph{}, 0.5, 2);
  eng.insert(0, 1);
  const auto before_ops = eng.cost().union_ops();
  EXPECT_EQ(eng.insert(0, 1).outcome, InsertOutcome::Duplicate);
  EXPECT_EQ(eng.insert(1, 0).outcome, InsertOutcome::Duplicate);
  EXPECT_EQ(eng.insert(1, 1).outcome, InsertOutcome::SelfLoop);
  EXPECT_EQ(eng.cost().union_ops(), before_ops);
  EXPECT_EQ(eng.cost().insertions, 1u);
}

TEST(EngineBaseline, SingleEdgeAndUnionCount) {
  auto eng = exact_engine(DynamicGraph{}, 0.0, 0);
  eng.insert_baseline(0, 1);
  EXPECT_EQ(sorted_members(eng.ball2(0)), (std::vector<VertexId>{0, 1}));
  EXPECT_EQ(sorted_members(eng.ball2(1)), (std::vector<VertexId>{0, 1}));

  // Union count of an insertion is 4 + (deg_u - 1) + (deg_v - 1) with the
  // degrees taken after the insertion.
  auto path = exact_engine(DynamicGraph{}, 0.0, 0);
  path.insert_baseline(0, 1);
  path.insert_baseline(1, 2);
  const InsertReport r = path.insert_baseline(2, 0);  // closes the triangle
  EXPECT_EQ(r.unions_charged, 4u + (2u - 1u) + (2u - 1u));
}

TEST(EngineBaseline, StateEquivalentToPhiZeroEngine) {
  const DynamicGraph final_graph = gen_er(80, 400, 9);
  EdgeStream es = gen_random_permutation(final_graph, 9, 0.2);
  DynamicGraph g0_copy = es.initial;
  auto lazy = exact_engine(std::move(es.initial), 0.0, 0);
  auto base = exact_engine(std::move(g0_copy), 0.0, 0);
  for (const Edge& e : es.stream) {
    lazy.insert(e.u, e.v);
    base.insert_baseline(e.u, e.v);
    for (VertexId v = 0; v < lazy.vertex_count(); ++v) {
      ASSERT_EQ(lazy.ball1(v), base.ball1(v));
      ASSERT_EQ(lazy.ball2(v), base.ball2(v));
      ASSERT_EQ(lazy.red_degree(v), base.red_degree(v));
      ASSERT_EQ(lazy.black_degree(v), base.black_degree(v));
    }
  }
}

TEST(EngineSoundness, GridOverRandomAndPathologicalStreams) {
  BallOracle oracle;
  for (double phi : {0.1, 0.5, 1.0}) {
    for (std::uint32_t k : {0u, 2u, 8u}) {
      {
        const DynamicGraph final_graph = gen_er(80, 400, 13);
        EdgeStream es = gen_random_permutation(final_graph, 13, 0.2);
        auto eng = exact_engine(std::move(es.initial), phi, k, 13);
        for (const Edge& e : es.stream) {
          eng.insert(e.u, e.v);
          for (VertexId v = 0; v < eng.vertex_count(); ++v) {
            ASSERT_TRUE(subset_of_oracle(eng, oracle, v));
            ASSERT_TRUE(ball1_exact(eng, v));
          }
        }
        check_counters(eng);
      }
      {
        EdgeStream es = gen_adversarial({8, 2});
        auto eng = exact_engine(std::move(es.initial), phi, k, 13);
        for (const Edge& e : es.stream) {
          eng.insert(e.u, e.v);
          for (VertexId v = 0; v < eng.vertex_count(); ++v)
            ASSERT_TRUE(subset_of_oracle(eng, oracle, v));
        }
        check_counters(eng);
      }
    }
  }
}

TEST(EngineCost, AmortizedBoundHolds) {
  // union_ops <= (4 + 4/phi + 2k) * insertions, as an exact inequality.
  for (double phi : {0.25, 1.0}) {
    for (std::uint32_t k : {0u, 2u, 8u}) {
      const DynamicGraph final_graph = gen_ba(500, 4, 4, 21);
      EdgeStream es = gen_random_permutation(final_graph, 21, 0.2);
      auto eng = exact_engine(std::move(es.initial), phi, k, 21);
      for (const Edge& e : es.stream) eng.insert(e.u, e.v);
      const double bound = (4.0 + 4.0 / phi + 2.0 * k) *
                           static_cast<double>(eng.cost().insertions);
      EXPECT_LE(static_cast<double>(eng.cost().union_ops()), bound)
          << "phi=" << phi << " k=" << k;
      EXPECT_EQ(eng.cost().union_ops(),
                eng.cost().b1_ops + eng.cost().heavy_ops + eng.cost().light_batch_ops +
                    eng.cost().random_light_ops);
    }
  }
}

TEST(EngineCost, InsertionCounterIgnoresRejectedEdges) {
  auto eng = exact_engine(DynamicGraph{}, 0.5, 0);
  eng.insert(0, 1);
  eng.insert(0, 1);
  eng.insert(2, 2);
  eng.insert(1, 2);
  EXPECT_EQ(eng.cost().insertions, 2u);
}

TEST(EngineCoverage, MonotoneInParameters) {
  // Mean final coverage should not increase with phi (lazier) and not
  // decrease with k (more refreshes), up to 0.02 statistical slack over ten
  // replays of one fixed stream.
  const DynamicGraph final_graph = gen_er(300, 1500, 31);
  auto mean_coverage = [&](double phi, std::uint32_t k) {
    BallOracle oracle;
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      EdgeStream es = gen_random_permutation(final_graph, 31, 0.2);  // same stream each run
      auto eng = exact_engine(std::move(es.initial), phi, k, seed);
      for (const Edge& e : es.stream) eng.insert(e.u, e.v);
      double sum = 0.0;
      for (VertexId v = 0; v < eng.vertex_count(); ++v) sum += coverage(eng, oracle, v);
      total += sum / static_cast<double>(eng.vertex_count());
    }
    return total / 10.0;
  };
  const double c_phi01 = mean_coverage(0.1, 0);
  const double c_phi05 = mean_coverage(0.5, 0);
  const double c_phi10 = mean_coverage(1.0, 0);
  EXPECT_LE(c_phi05, c_phi01 + 0.02);
  EXPECT_LE(c_phi10, c_phi05 + 0.02);
  const double c_k0 = c_phi10;
  const double c_k2 = mean_coverage(1.0, 2);
  const double c_k8 = mean_coverage(1.0, 8);
  EXPECT_GE(c_k2, c_k0 - 0.02);
  EXPECT_GE(c_k8, c_k2 - 0.02);
}

TEST(EngineReplay, SameSeedSameTrajectory) {
  const DynamicGraph final_graph = gen_er(120, 600, 77);
  auto run_once = [&](std::uint64_t seed) {
    EdgeStream es = gen_random_permutation(final_graph, 4, 0.2);
    auto eng = exact_engine(std::move(es.initial), 1.0, 3, seed);
    for (const Edge& e : es.stream) eng.insert(e.u, e.v);
    return eng;
  };
  auto a = run_once(42);
  auto b = run_once(42);
  auto c = run_once(43);
  EXPECT_EQ(a.cost().union_ops(), b.cost().union_ops());
  for (VertexId v = 0; v < a.vertex_count(); ++v) ASSERT_EQ(a.ball2(v), b.ball2(v));
  EXPECT_NE(c.cost().random_light_ops, a.cost().random_light_ops);
}

TEST(EngineAccessors, UnknownVertexThrows) {
  auto eng = exact_engine(DynamicGraph{}, 0.5, 0);
  eng.insert(0, 1);
  EXPECT_THROW((void)eng.ball2(99), std::out_of_range);
  EXPECT_THROW((void)eng.ball1(99), std::out_of_range);
}

TEST(EngineConfigChecks, RejectsBadPhiAndMismatchedMode) {
  EXPECT_THROW(exact_engine(DynamicGraph{}, -0.1, 0), std::invalid_argument);
  EXPECT_THROW(exact_engine(DynamicGraph{}, 1.5, 0), std::invalid_argument);
  DynamicGraph directed(true);
  EXPECT_THROW(LazyEngine<ExactBall>(std::move(directed), {0.5, 0, 1, false}, {}),
               std::invalid_argument);
}

TEST(EngineDirected, BallsFollowOutEdgesAndStaySound) {
  // Directed insertions update the tail's out-balls; in-neighbors receive
  // the deferred refreshes. phi = 0 must match the directed BFS oracle.
  SplitMix64 rng(3);
  DynamicGraph empty(true);
  LazyEngine<ExactBall> eager(std::move(empty), {0.0, 0, 1, true}, {});
  BallOracle oracle;
  for (int i = 0; i < 300; ++i) {
    const VertexId u = static_cast<VertexId>(rng.next_below(40));
    const VertexId v = static_cast<VertexId>(rng.next_below(40));
    eager.insert(u, v);
    for (VertexId x = 0; x < eager.vertex_count(); ++x)
      ASSERT_TRUE(matches_oracle(eager, oracle, x));
  }

  SplitMix64 rng2(3);
  DynamicGraph empty2(true);
  LazyEngine<ExactBall> lazy(std::move(empty2), {1.0, 1, 1, true}, {});
  for (int i = 0; i < 300; ++i) {
    const VertexId u = static_cast<VertexId>(rng2.next_below(40));
    const VertexId v = static_cast<VertexId>(rng2.next_below(40));
    lazy.insert(u, v);
    for (VertexId x = 0; x < lazy.vertex_count(); ++x) {
      ASSERT_TRUE(subset_of_oracle(lazy, oracle, x));
      // out-1-balls stay exact: self plus out-neighbors
      ASSERT_EQ(lazy.ball1(x).size(), lazy.graph().degree(x) + 1);
    }
  }
}

TEST(EngineKmv, EstimatesTrackTruthLoosely) {
  const DynamicGraph final_graph = gen_er(400, 3000, 51);
  EdgeStream es = gen_random_permutation(final_graph, 51, 0.2);
  KmvSketch::Factory factory(32, 99);
  LazyEngine<KmvSketch> eng(std::move(es.initial), {0.25, 2, 51, false}, factory);
  for (const Edge& e : es.stream) eng.insert(e.u, e.v);
  BallOracle oracle;
  double ape = 0.0;
  for (VertexId v = 0; v < eng.vertex_count(); ++v) {
    const double truth = static_cast<double>(oracle.ball(eng.graph(), v, 2).size());
    ape += std::abs(eng.ball2(v).estimate_size() - truth) / truth;
  }
  EXPECT_LE(ape / static_cast<double>(eng.vertex_count()), 0.5);
}
