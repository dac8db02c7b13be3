// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rescap/graph.hpp"
#include "rescap/intervention.hpp"
#include "rescap/metrics.hpp"

namespace rescap {

/// Everything `analyze` reports about one graph.
struct MetricsRecord {
  GroupMetrics groups;
  DisparityReport disparity;
  GraphSummary summary;
  /// Means over every node, excluded ones included.
  GroupStat overall;
  std::size_t excluded_nodes = 0;
};

MetricsRecord analyze_graph(const AttributedGraph& g, const GroupPartition& p,
                            const LaplacianState& state);

nlohmann::json to_json(const MetricsRecord& record);

/// Header `group,size,isolation,diameter,control,d_isolation,d_diameter,d_control`.
/// One row per group (disparity columns empty) and a final `__graph__` row
/// with node-weighted graph means and the disparities.
void write_metrics_csv(std::ostream& out, const MetricsRecord& record);

/// `step,u,v,score` with external identifiers.
void write_edges_csv(std::ostream& out, const InterventionTrace& trace,
                     const AttributedGraph& g);

/// One row per snapshot: step, `<group>_isolation|_diameter|_control` for
/// every group, the three disparities, `total_resistance`,
/// `resistance_diameter` and `spectral_gap` (empty when not computed).
void write_evolution_csv(std::ostream& out, const InterventionTrace& trace);

/// `strategy,step,d_isolation,sum_isolation,d_diameter,sum_diameter`.
void write_pareto_csv(std::ostream& out, std::span<const ParetoRow> rows);

/// Fixed-width group table (one line per group) for terminals.
void print_group_table(std::ostream& out, const MetricsRecord& record);
/// Before/after disparity rows for a finished intervention.
void print_disparity_table(std::ostream& out, const InterventionTrace& trace);

/// Writes `contents` to `path` via a temporary sibling and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace rescap
