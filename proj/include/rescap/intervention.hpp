// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rescap/graph.hpp"
#include "rescap/metrics.hpp"
#include "rescap/spectral.hpp"

namespace rescap {

/// Edge-selection rule. The S- variants invert the objective (strong ties).
enum class Strategy { Erg, Random, Cos, StrongErg, StrongCos, StrongRandom };

/// "erg", "random", "cos", "s-erg", "s-cos", "s-random".
std::string_view strategy_name(Strategy s);
/// Case-insensitive inverse of strategy_name.
std::optional<Strategy> parse_strategy(std::string_view name);

/// How the pseudo-inverse follows each inserted edge.
enum class PinvUpdate {
  Woodbury,   ///< rank-one update with periodic refresh
  Recompute,  ///< full pseudo-inverse after every edge
};

struct InterventionConfig {
  std::size_t budget = 0;
  Strategy strategy = Strategy::Erg;
  std::size_t snapshot_every = 1;
  std::uint64_t seed = 0;
  std::size_t refresh_interval = kDefaultRefreshInterval;
  PinvUpdate update = PinvUpdate::Woodbury;
  /// Re-pick the most isolated group before every step instead of fixing it
  /// once at the start.
  bool reidentify_disadvantaged = false;
  /// Compute lambda_2 at every snapshot. The first and last snapshots always
  /// carry it; intermediate ones only when this is set (O(n^3) each).
  bool spectral_gap_every_snapshot = false;
  /// Scores within tie_tolerance * max(1, |best|) of the best count as tied;
  /// ties go to the lexicographically smallest (min(u,v), max(u,v)).
  double tie_tolerance = 1e-9;
};

struct AddedEdge {
  std::size_t step = 0;
  /// Normalized so that u < v.
  NodeIndex u = 0;
  NodeIndex v = 0;
  /// Objective value that selected the edge: R_uv for erg / s-erg / random /
  /// s-random, adjacency cosine similarity for cos / s-cos.
  double score = 0.0;
};

struct Snapshot {
  /// Number of edges added so far; 0 is the input graph.
  std::size_t step = 0;
  GroupMetrics groups;
  DisparityReport disparity;
  GraphSummary summary;
};

struct InterventionTrace {
  Strategy strategy = Strategy::Erg;
  std::string disadvantaged_group;
  std::vector<AddedEdge> added_edges;
  /// Strictly increasing in step; includes step 0 and the last step taken.
  std::vector<Snapshot> snapshots;
  AttributedGraph final_graph;
  /// The candidate set ran out before the budget was spent.
  bool exhausted = false;
};

/// Greedy budgeted edge augmentation.
///
/// The disadvantaged group S_d (largest group isolation) is fixed before the
/// first step unless `reidentify_disadvantaged` is set. Candidates at each
/// step are the non-edges with at least one endpoint in S_d; every strategy
/// uses this same set. The graph must be connected and carry at least two
/// groups.
///
/// `initial` may supply an already computed pseudo-inverse for `g`.
InterventionTrace run_intervention(const AttributedGraph& g, const GroupPartition& p,
                                   const InterventionConfig& cfg,
                                   std::optional<LaplacianState> initial = std::nullopt);

/// Adds, per step, the candidate with the largest current effective resistance.
InterventionTrace erg_link(const AttributedGraph& g, const GroupPartition& p,
                           InterventionConfig cfg);
/// Uniformly random candidate per step, reproducible from cfg.seed.
InterventionTrace baseline_random(const AttributedGraph& g, const GroupPartition& p,
                                  InterventionConfig cfg);
/// Candidate with the least adjacency cosine similarity per step.
InterventionTrace baseline_cos(const AttributedGraph& g, const GroupPartition& p,
                               InterventionConfig cfg);
/// Strong-tie counterpart of `weak` (Erg, Cos or Random).
InterventionTrace strong_variant(Strategy weak, const AttributedGraph& g,
                                 const GroupPartition& p, InterventionConfig cfg);

/// |N(u) & N(v)| / sqrt(d_u d_v); 0 when either degree is 0.
double adjacency_cosine(const AttributedGraph& g, NodeIndex u, NodeIndex v);

/// One row per strategy and snapshot.
struct ParetoRow {
  std::string strategy;
  std::size_t step = 0;
  double isolation_disparity = 0.0;
  double isolation_sum = 0.0;
  double diameter_disparity = 0.0;
  double diameter_sum = 0.0;
};

std::vector<ParetoRow> pareto_points(std::span<const InterventionTrace> traces);

}  // namespace rescap
