// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rescap/graph.hpp"
#include "rescap/spectral.hpp"

namespace rescap {

/// Per-node social capital measured by effective resistance.
struct NodeMetrics {
  /// Total resistance to every node, sum_v R_uv. Lower is better.
  std::vector<double> isolation;
  /// Largest resistance to any node, max_v R_uv. Lower is better.
  std::vector<double> diameter;
  /// Resistance summed over incident edges only; lies in [1, degree].
  std::vector<double> control;
};

NodeMetrics node_metrics(const ResistanceMatrix& r, const AttributedGraph& g);

/// Arithmetic means of the node metrics over one group.
struct GroupStat {
  std::string label;
  std::size_t size = 0;
  double isolation = 0.0;
  double diameter = 0.0;
  double control = 0.0;
};

struct GroupMetrics {
  /// Sorted by label, mirroring the partition.
  std::vector<GroupStat> groups;

  const GroupStat* find(std::string_view label) const;
};

/// Throws ValidationError for an empty group. Excluded nodes are ignored.
GroupMetrics group_metrics(const NodeMetrics& nm, const GroupPartition& p);

/// One max-minus-min gap across groups.
struct Disparity {
  double value = 0.0;
  /// Group attaining the maximum and the minimum (first label wins ties).
  std::string max_group;
  std::string min_group;
};

struct DisparityReport {
  Disparity isolation;
  Disparity diameter;
  Disparity control;
  /// Group with the largest isolation; ties go to the smallest label.
  std::string disadvantaged_group;
  /// True when more than one group shares the largest isolation.
  bool disadvantaged_tie = false;
};

/// Throws TooFewGroupsError with fewer than two groups.
DisparityReport disparity_report(const GroupMetrics& gm);

/// Graph-level aggregates reported next to the group metrics.
struct GraphSummary {
  /// Half the sum of all entries of R, i.e. the sum over unordered pairs.
  double total_resistance = 0.0;
  /// Largest pairwise resistance.
  double resistance_diameter = 0.0;
  /// Diagnostic only; omitted when not requested.
  std::optional<double> spectral_gap;
  std::size_t volume = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
};

GraphSummary graph_summary(const LaplacianState& state, const ResistanceMatrix& r,
                           const AttributedGraph& g, bool with_spectral_gap = true);

}  // namespace rescap
