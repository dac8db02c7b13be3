// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "rescap/error.hpp"
#include "rescap/intervention.hpp"
#include "support/fixtures.hpp"

namespace rescap {
namespace {

using testing::make_graph;

InterventionConfig config(Strategy s, std::size_t budget, std::uint64_t seed = 0) {
  InterventionConfig cfg;
  cfg.strategy = s;
  cfg.budget = budget;
  cfg.seed = seed;
  return cfg;
}

// All non-edges touching `group`, enumerated directly from the graph.
std::vector<Edge> brute_candidates(const AttributedGraph& g, const Group& group) {
  std::set<NodeIndex> in(group.members.begin(), group.members.end());
  std::vector<Edge> out;
  for (NodeIndex u = 0; u < g.node_count(); ++u)
    for (NodeIndex v = u + 1; v < g.node_count(); ++v)
      if (!g.has_edge(u, v) && (in.count(u) || in.count(v))) out.emplace_back(u, v);
  return out;
}

TEST(StrategyNames, RoundTrip) {
  for (auto s : {Strategy::Erg, Strategy::Random, Strategy::Cos, Strategy::StrongErg,
                 Strategy::StrongCos, Strategy::StrongRandom}) {
    EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  }
  EXPECT_EQ(parse_strategy("S-ERG"), Strategy::StrongErg);
  EXPECT_FALSE(parse_strategy("deepwalk"));
}

TEST(ErgLink, StarPicksFirstLeafPair) {
  auto g = make_graph(5, testing::star_edges(4), {"m", "f", "f", "f", "f"});
  auto trace = erg_link(g, partition_by_attribute(g), config(Strategy::Erg, 1));
  EXPECT_EQ(trace.disadvantaged_group, "f");
  ASSERT_EQ(trace.added_edges.size(), 1u);
  EXPECT_EQ(trace.added_edges[0].u, 1u);
  EXPECT_EQ(trace.added_edges[0].v, 2u);
  EXPECT_NEAR(trace.added_edges[0].score, 2.0, 1e-12);
  EXPECT_EQ(trace.added_edges[0].step, 1u);
  EXPECT_TRUE(trace.final_graph.has_edge(1, 2));
  EXPECT_FALSE(trace.exhausted);
}

TEST(ErgLink, GreedyOptimalAtBudgetOne) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> size(5, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size(rng);
    auto g = make_graph(n, testing::connected_er_edges(n, 0.35, rng), testing::random_labels(n, rng));
    auto p = partition_by_attribute(g);
    auto trace = erg_link(g, p, config(Strategy::Erg, 1));
    auto cands = brute_candidates(g, *p.find(trace.disadvantaged_group));
    if (cands.empty()) {
      EXPECT_TRUE(trace.exhausted);
      continue;
    }
    double best = -1.0;
    for (auto [u, v] : cands) best = std::max(best, oracle_resistance(g, u, v));
    ASSERT_EQ(trace.added_edges.size(), 1u);
    const auto& e = trace.added_edges[0];
    EXPECT_NEAR(oracle_resistance(g, e.u, e.v), best, 1e-9) << "trial " << trial;
  }
}

TEST(ErgLink, NaiveAndWoodburyAgree) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    std::mt19937_64 rng(200 + seed);
    auto g = make_graph(50, testing::connected_er_edges(50, 0.08, rng), testing::random_labels(50, rng));
    auto p = partition_by_attribute(g);
    auto fast = config(Strategy::Erg, 20);
    auto slow = fast;
    slow.update = PinvUpdate::Recompute;
    auto a = run_intervention(g, p, fast);
    auto b = run_intervention(g, p, slow);
    ASSERT_EQ(a.added_edges.size(), b.added_edges.size());
    for (std::size_t i = 0; i < a.added_edges.size(); ++i) {
      EXPECT_EQ(a.added_edges[i].u, b.added_edges[i].u);
      EXPECT_EQ(a.added_edges[i].v, b.added_edges[i].v);
      EXPECT_NEAR(a.added_edges[i].score, b.added_edges[i].score, 1e-9);
    }
  }
}

TEST(ErgLink, TotalResistanceStrictlyDecreases) {
  std::mt19937_64 rng(107);
  auto g = make_graph(40, testing::connected_er_edges(40, 0.1, rng), testing::random_labels(40, rng));
  auto trace = erg_link(g, partition_by_attribute(g), config(Strategy::Erg, 15));
  ASSERT_EQ(trace.snapshots.size(), 16u);
  for (std::size_t i = 1; i < trace.snapshots.size(); ++i) {
    EXPECT_LT(trace.snapshots[i].summary.total_resistance,
              trace.snapshots[i - 1].summary.total_resistance);
  }
}

TEST(ErgLink, CandidateSoundness) {
  std::mt19937_64 rng(109);
  auto g = make_graph(30, testing::connected_er_edges(30, 0.12, rng), testing::random_labels(30, rng));
  auto p = partition_by_attribute(g);
  for (auto s : {Strategy::Erg, Strategy::Random, Strategy::Cos, Strategy::StrongErg,
                 Strategy::StrongCos, Strategy::StrongRandom}) {
    auto trace = run_intervention(g, p, config(s, 25, 3));
    const auto* target = p.find(trace.disadvantaged_group);
    ASSERT_NE(target, nullptr);
    std::set<NodeIndex> in(target->members.begin(), target->members.end());
    auto current = g;
    for (const auto& e : trace.added_edges) {
      EXPECT_LT(e.u, e.v);
      EXPECT_TRUE(in.count(e.u) || in.count(e.v)) << strategy_name(s);
      EXPECT_FALSE(current.has_edge(e.u, e.v)) << strategy_name(s);
      current.add_edge(e.u, e.v);
    }
    EXPECT_EQ(current.edges(), trace.final_graph.edges());
  }
}

TEST(ErgLink, SnapshotGrid) {
  std::mt19937_64 rng(113);
  auto g = make_graph(25, testing::connected_er_edges(25, 0.15, rng), testing::random_labels(25, rng));
  auto cfg = config(Strategy::Erg, 10);
  cfg.snapshot_every = 4;
  auto trace = erg_link(g, partition_by_attribute(g), cfg);
  std::vector<std::size_t> steps;
  for (const auto& s : trace.snapshots) steps.push_back(s.step);
  EXPECT_EQ(steps, (std::vector<std::size_t>{0, 4, 8, 10}));
  EXPECT_TRUE(trace.snapshots.front().summary.spectral_gap);
  EXPECT_FALSE(trace.snapshots[1].summary.spectral_gap);
  EXPECT_TRUE(trace.snapshots.back().summary.spectral_gap);

  cfg.snapshot_every = 0;
  EXPECT_THROW(erg_link(g, partition_by_attribute(g), cfg), ValidationError);
  cfg.snapshot_every = 11;
  EXPECT_THROW(erg_link(g, partition_by_attribute(g), cfg), ValidationError);
}

TEST(ErgLink, ZeroBudgetIsANoOp) {
  auto g = make_graph(4, testing::path_edges(4), {"a", "b", "a", "b"});
  auto trace = erg_link(g, partition_by_attribute(g), config(Strategy::Erg, 0));
  EXPECT_TRUE(trace.added_edges.empty());
  ASSERT_EQ(trace.snapshots.size(), 1u);
  EXPECT_EQ(trace.final_graph.edges(), g.edges());
  EXPECT_FALSE(trace.exhausted);
}

TEST(ErgLink, ExhaustionFlagged) {
  // Target group {0}: on P3 with labels f,m,m the only candidate is (0, 2).
  auto g = make_graph(3, testing::path_edges(3), {"f", "m", "m"});
  auto trace = erg_link(g, partition_by_attribute(g), config(Strategy::Erg, 5));
  EXPECT_EQ(trace.disadvantaged_group, "f");
  EXPECT_TRUE(trace.exhausted);
  ASSERT_EQ(trace.added_edges.size(), 1u);
  EXPECT_EQ(trace.snapshots.back().step, 1u);
}

// Dense core "b" with a periphery "a" of low-degree nodes hanging off it.
AttributedGraph core_with_periphery(std::size_t core, std::size_t periphery, std::mt19937_64& rng) {
  auto edges = testing::connected_er_edges(core, 0.3, rng);
  std::uniform_int_distribution<NodeIndex> anchor(0, core - 1);
  std::bernoulli_distribution second(0.3);
  for (NodeIndex x = core; x < core + periphery; ++x) {
    const NodeIndex a = anchor(rng);
    edges.emplace_back(a, x);
    NodeIndex b = anchor(rng);
    if (second(rng) && b != a) edges.emplace_back(b, x);
  }
  std::vector<std::string> labels(core + periphery, "b");
  for (NodeIndex x = core; x < core + periphery; ++x) labels[x] = "a";
  return make_graph(core + periphery, edges, labels);
}

TEST(ErgLink, ControlConservedAndRedistributed) {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = core_with_periphery(30, 10, rng);
    auto p = partition_by_attribute(g);
    auto trace = erg_link(g, p, config(Strategy::Erg, 20));
    ASSERT_EQ(trace.disadvantaged_group, "a");
    const double optimum = 2.0 - 2.0 / 40.0;
    for (const auto& snap : trace.snapshots) {
      double total = 0.0;
      for (const auto& s : snap.groups.groups) total += s.control * static_cast<double>(s.size);
      EXPECT_NEAR(total, 78.0, 1e-8);
    }
    const auto& first = *trace.snapshots.front().groups.find("a");
    const auto& last = *trace.snapshots.back().groups.find("a");
    ASSERT_LT(first.control, optimum);
    EXPECT_GT(last.control, first.control);
  }
}

TEST(ErgLink, ReidentificationCanSwitchTarget) {
  std::mt19937_64 rng(131);
  auto g = testing::connected_sbm(30, 8, 0.4, 0.3, 0.03, rng);
  auto p = partition_by_attribute(g);
  auto cfg = config(Strategy::Erg, 30);
  cfg.reidentify_disadvantaged = true;
  auto trace = erg_link(g, p, cfg);
  // Each step must touch the group that was most isolated right before it.
  auto current = g;
  for (const auto& e : trace.added_edges) {
    auto gm = group_metrics(node_metrics(resistance_matrix(pseudo_inverse(current)), current), p);
    auto target = disparity_report(gm).disadvantaged_group;
    const auto& members = p.find(target)->members;
    const bool touches = std::count(members.begin(), members.end(), e.u) ||
                         std::count(members.begin(), members.end(), e.v);
    EXPECT_TRUE(touches) << "step " << e.step;
    current.add_edge(e.u, e.v);
  }
}

TEST(Random, DeterministicGivenSeed) {
  std::mt19937_64 rng(137);
  auto g = make_graph(30, testing::connected_er_edges(30, 0.1, rng), testing::random_labels(30, rng));
  auto p = partition_by_attribute(g);
  auto a = baseline_random(g, p, config(Strategy::Random, 20, 42));
  auto b = baseline_random(g, p, config(Strategy::Random, 20, 42));
  auto c = baseline_random(g, p, config(Strategy::Random, 20, 43));
  auto pairs = [](const InterventionTrace& t) {
    std::vector<Edge> e;
    for (const auto& x : t.added_edges) e.emplace_back(x.u, x.v);
    return e;
  };
  EXPECT_EQ(pairs(a), pairs(b));
  EXPECT_NE(pairs(a), pairs(c));
}

TEST(Random, FullBudgetAddsEveryCandidate) {
  std::mt19937_64 rng(139);
  auto g = make_graph(12, testing::connected_er_edges(12, 0.25, rng), testing::random_labels(12, rng));
  auto p = partition_by_attribute(g);
  auto probe = erg_link(g, p, config(Strategy::Erg, 0));
  auto cands = brute_candidates(g, *p.find(probe.disadvantaged_group));
  auto trace = baseline_random(g, p, config(Strategy::Random, cands.size(), 7));
  EXPECT_FALSE(trace.exhausted);
  std::vector<Edge> added;
  for (const auto& e : trace.added_edges) added.emplace_back(e.u, e.v);
  EXPECT_NE(added, cands);  // a permutation, not the enumeration order
  std::sort(added.begin(), added.end());
  EXPECT_EQ(added, cands);
}

TEST(Random, StrongRandomMatchesRandom) {
  std::mt19937_64 rng(149);
  auto g = make_graph(20, testing::connected_er_edges(20, 0.2, rng), testing::random_labels(20, rng));
  auto p = partition_by_attribute(g);
  auto a = baseline_random(g, p, config(Strategy::Random, 10, 5));
  auto b = strong_variant(Strategy::Random, g, p, config(Strategy::Random, 10, 5));
  EXPECT_EQ(b.strategy, Strategy::StrongRandom);
  ASSERT_EQ(a.added_edges.size(), b.added_edges.size());
  for (std::size_t i = 0; i < a.added_edges.size(); ++i) {
    EXPECT_EQ(a.added_edges[i].u, b.added_edges[i].u);
    EXPECT_EQ(a.added_edges[i].v, b.added_edges[i].v);
  }
}

TEST(Cosine, DirectCounts) {
  auto star = make_graph(4, testing::star_edges(3));
  EXPECT_DOUBLE_EQ(adjacency_cosine(star, 1, 2), 1.0);
  EXPECT_DOUBLE_EQ(adjacency_cosine(star, 0, 1), 0.0);
  auto c4 = make_graph(4, testing::cycle_edges(4));
  EXPECT_DOUBLE_EQ(adjacency_cosine(c4, 0, 2), 1.0);
  auto p4 = make_graph(4, testing::path_edges(4));
  EXPECT_DOUBLE_EQ(adjacency_cosine(p4, 0, 3), 0.0);
  EXPECT_THROW(adjacency_cosine(p4, 1, 1), PreconditionError);
}

// Brute-force cosine over candidate sets, recomputed from the graph at every step.
std::vector<Edge> brute_cos_sequence(AttributedGraph g, const Group& target, std::size_t budget,
                                     bool maximize) {
  std::vector<Edge> seq;
  for (std::size_t step = 0; step < budget; ++step) {
    auto cands = brute_candidates(g, target);
    if (cands.empty()) break;
    double best = maximize ? -1.0 : 2.0;
    for (auto [u, v] : cands) {
      const double c = adjacency_cosine(g, u, v);
      best = maximize ? std::max(best, c) : std::min(best, c);
    }
    for (auto [u, v] : cands) {
      if (std::abs(adjacency_cosine(g, u, v) - best) <= 1e-9) {
        seq.emplace_back(u, v);
        g.add_edge(u, v);
        break;
      }
    }
  }
  return seq;
}

TEST(Cos, IncrementalSimilarityMatchesBruteForce) {
  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 5; ++trial) {
    auto g = make_graph(25, testing::connected_er_edges(25, 0.15, rng), testing::random_labels(25, rng));
    auto p = partition_by_attribute(g);
    for (bool strong : {false, true}) {
      auto trace = strong ? strong_variant(Strategy::Cos, g, p, config(Strategy::Cos, 15))
                          : baseline_cos(g, p, config(Strategy::Cos, 15));
      auto expected = brute_cos_sequence(g, *p.find(trace.disadvantaged_group), 15, strong);
      std::vector<Edge> got;
      for (const auto& e : trace.added_edges) got.emplace_back(e.u, e.v);
      EXPECT_EQ(got, expected) << (strong ? "s-cos" : "cos");
    }
  }
}

TEST(Cos, StarWithAppendagePicksDisjointNeighborhoods) {
  // Star 0-{1,2,3} with a tail 3-4; all labelled f except the centre.
  auto g = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}}, {"m", "f", "f", "f", "f"});
  auto trace = baseline_cos(g, partition_by_attribute(g), config(Strategy::Cos, 1));
  ASSERT_EQ(trace.added_edges.size(), 1u);
  // (0, 4) shares neighbor 3; (1, 3) shares 0; (1, 4) shares nothing.
  EXPECT_EQ(trace.added_edges[0].u, 1u);
  EXPECT_EQ(trace.added_edges[0].v, 4u);
  EXPECT_DOUBLE_EQ(trace.added_edges[0].score, 0.0);
}

TEST(StrongErg, FirstPickIsMinimumResistance) {
  std::mt19937_64 rng(157);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = make_graph(12, testing::connected_er_edges(12, 0.3, rng), testing::random_labels(12, rng));
    auto p = partition_by_attribute(g);
    auto trace = strong_variant(Strategy::Erg, g, p, config(Strategy::Erg, 1));
    EXPECT_EQ(trace.strategy, Strategy::StrongErg);
    auto cands = brute_candidates(g, *p.find(trace.disadvantaged_group));
    if (cands.empty()) continue;
    double best = 1e300;
    for (auto [u, v] : cands) best = std::min(best, oracle_resistance(g, u, v));
    ASSERT_EQ(trace.added_edges.size(), 1u);
    EXPECT_NEAR(trace.added_edges[0].score, best, 1e-9);
  }
}

TEST(Pareto, RowCountsAndSums) {
  std::mt19937_64 rng(163);
  auto g = make_graph(20, testing::connected_er_edges(20, 0.2, rng), testing::random_labels(20, rng));
  auto p = partition_by_attribute(g);
  std::vector<InterventionTrace> traces;
  traces.push_back(erg_link(g, p, config(Strategy::Erg, 6)));
  traces.push_back(baseline_random(g, p, config(Strategy::Random, 6, 1)));
  auto rows = pareto_points(traces);
  EXPECT_EQ(rows.size(), traces[0].snapshots.size() + traces[1].snapshots.size());
  EXPECT_EQ(rows.front().strategy, "erg");
  EXPECT_EQ(rows.back().strategy, "random");
  const auto& snap = traces[0].snapshots[2];
  double iso = 0.0, diam = 0.0;
  for (const auto& s : snap.groups.groups) {
    iso += s.isolation;
    diam += s.diameter;
  }
  EXPECT_EQ(rows[2].step, snap.step);
  EXPECT_DOUBLE_EQ(rows[2].isolation_sum, iso);
  EXPECT_DOUBLE_EQ(rows[2].diameter_sum, diam);
  EXPECT_DOUBLE_EQ(rows[2].isolation_disparity, snap.disparity.isolation.value);

  std::vector<InterventionTrace> single;
  single.push_back(erg_link(g, p, config(Strategy::Erg, 0)));
  EXPECT_EQ(pareto_points(single).size(), 1u);
}

}  // namespace
}  // namespace rescap
