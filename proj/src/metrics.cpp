// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rescap/metrics.hpp"

#include <algorithm>

#include "rescap/error.hpp"

namespace rescap {

NodeMetrics node_metrics(const ResistanceMatrix& r, const AttributedGraph& g) {
  const std::size_t n = g.node_count();
  if (r.size() != n) throw PreconditionError("resistance matrix does not match the graph");
  NodeMetrics nm;
  nm.isolation.resize(n);
  nm.diameter.resize(n);
  nm.control.resize(n);
  for (NodeIndex u = 0; u < n; ++u) {
    // R is symmetric; column access is contiguous.
    const auto column = r.values().col(static_cast<Eigen::Index>(u));
    nm.isolation[u] = column.sum();
    nm.diameter[u] = column.maxCoeff();
    double control = 0.0;
    for (NodeIndex w : g.neighbors(u)) control += r(w, u);
    nm.control[u] = control;
  }
  return nm;
}

const GroupStat* GroupMetrics::find(std::string_view label) const {
  for (const auto& group : groups) {
    if (group.label == label) return &group;
  }
  return nullptr;
}

GroupMetrics group_metrics(const NodeMetrics& nm, const GroupPartition& p) {
  GroupMetrics gm;
  gm.groups.reserve(p.groups.size());
  for (const auto& group : p.groups) {
    if (group.members.empty()) throw ValidationError("group '" + group.label + "' is empty");
    GroupStat stat;
    stat.label = group.label;
    stat.size = group.members.size();
    for (NodeIndex u : group.members) {
      stat.isolation += nm.isolation.at(u);
      stat.diameter += nm.diameter.at(u);
      stat.control += nm.control.at(u);
    }
    const auto size = static_cast<double>(stat.size);
    stat.isolation /= size;
    stat.diameter /= size;
    stat.control /= size;
    gm.groups.push_back(std::move(stat));
  }
  return gm;
}

namespace {

template <typename Field>
Disparity max_min_gap(const std::vector<GroupStat>& groups, Field field) {
  std::size_t hi = 0;
  std::size_t lo = 0;
  for (std::size_t i = 1; i < groups.size(); ++i) {
    if (field(groups[i]) > field(groups[hi])) hi = i;
    if (field(groups[i]) < field(groups[lo])) lo = i;
  }
  return {field(groups[hi]) - field(groups[lo]), groups[hi].label, groups[lo].label};
}

}  // namespace

DisparityReport disparity_report(const GroupMetrics& gm) {
  if (gm.groups.size() < 2) {
    throw TooFewGroupsError("disparities need at least two groups, found " +
                            std::to_string(gm.groups.size()));
  }
  // Labels drive tie-breaking, so work on a label-sorted copy.
  auto groups = gm.groups;
  std::sort(groups.begin(), groups.end(),
            [](const GroupStat& a, const GroupStat& b) { return a.label < b.label; });

  DisparityReport report;
  report.isolation = max_min_gap(groups, [](const GroupStat& s) { return s.isolation; });
  report.diameter = max_min_gap(groups, [](const GroupStat& s) { return s.diameter; });
  report.control = max_min_gap(groups, [](const GroupStat& s) { return s.control; });

  report.disadvantaged_group = report.isolation.max_group;
  const double worst = gm.find(report.disadvantaged_group)->isolation;
  report.disadvantaged_tie =
      std::count_if(groups.begin(), groups.end(),
                    [worst](const GroupStat& s) { return s.isolation == worst; }) > 1;
  return report;
}

GraphSummary graph_summary(const LaplacianState& state, const ResistanceMatrix& r,
                           const AttributedGraph& g, bool with_spectral_gap) {
  GraphSummary s;
  s.total_resistance = 0.5 * r.values().sum();
  s.resistance_diameter = r.size() == 0 ? 0.0 : r.values().maxCoeff();
  if (with_spectral_gap) s.spectral_gap = spectral_gap(state);
  s.volume = g.volume();
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  return s;
}

}  // namespace rescap
