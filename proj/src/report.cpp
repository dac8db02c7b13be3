// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rescap/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <system_error>

#include "rescap/error.hpp"
#include "rescap/io.hpp"

namespace rescap {

namespace {

using csv::escape;
using csv::format_double;

nlohmann::json disparity_json(const Disparity& d) {
  return {{"value", d.value}, {"max_group", d.max_group}, {"min_group", d.min_group}};
}

std::string line(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

}  // namespace

MetricsRecord analyze_graph(const AttributedGraph& g, const GroupPartition& p,
                            const LaplacianState& state) {
  const auto r = resistance_matrix(state);
  const auto nm = node_metrics(r, g);
  MetricsRecord record;
  record.groups = group_metrics(nm, p);
  record.disparity = disparity_report(record.groups);
  record.summary = graph_summary(state, r, g);
  record.excluded_nodes = p.excluded.size();

  GroupPartition everyone;
  everyone.groups.push_back({"__graph__", {}});
  for (NodeIndex u = 0; u < g.node_count(); ++u) everyone.groups.front().members.push_back(u);
  record.overall = group_metrics(nm, everyone).groups.front();
  return record;
}

nlohmann::json to_json(const MetricsRecord& record) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : record.groups.groups) {
    groups.push_back({{"group", g.label},
                      {"size", g.size},
                      {"isolation", g.isolation},
                      {"diameter", g.diameter},
                      {"control", g.control}});
  }
  const auto& s = record.summary;
  nlohmann::json graph = {{"nodes", s.nodes},
                          {"edges", s.edges},
                          {"volume", s.volume},
                          {"excluded_nodes", record.excluded_nodes},
                          {"total_resistance", s.total_resistance},
                          {"resistance_diameter", s.resistance_diameter},
                          {"mean_isolation", record.overall.isolation},
                          {"mean_diameter", record.overall.diameter},
                          {"mean_control", record.overall.control}};
  graph["spectral_gap"] = s.spectral_gap ? nlohmann::json(*s.spectral_gap) : nlohmann::json();
  const auto& d = record.disparity;
  return {{"graph", graph},
          {"groups", groups},
          {"disparity",
           {{"d_isolation", disparity_json(d.isolation)},
            {"d_diameter", disparity_json(d.diameter)},
            {"d_control", disparity_json(d.control)},
            {"disadvantaged_group", d.disadvantaged_group},
            {"disadvantaged_tie", d.disadvantaged_tie}}}};
}

void write_metrics_csv(std::ostream& out, const MetricsRecord& record) {
  out << "group,size,isolation,diameter,control,d_isolation,d_diameter,d_control\n";
  for (const auto& g : record.groups.groups) {
    out << escape(g.label) << ',' << g.size << ',' << format_double(g.isolation) << ','
        << format_double(g.diameter) << ',' << format_double(g.control) << ",,,\n";
  }
  const auto& all = record.overall;
  const auto& d = record.disparity;
  out << "__graph__," << all.size << ',' << format_double(all.isolation) << ','
      << format_double(all.diameter) << ',' << format_double(all.control) << ','
      << format_double(d.isolation.value) << ',' << format_double(d.diameter.value) << ','
      << format_double(d.control.value) << '\n';
}

void write_edges_csv(std::ostream& out, const InterventionTrace& trace,
                     const AttributedGraph& g) {
  out << "step,u,v,score\n";
  for (const auto& e : trace.added_edges) {
    out << e.step << ',' << escape(g.external_id(e.u)) << ',' << escape(g.external_id(e.v))
        << ',' << format_double(e.score) << '\n';
  }
}

void write_evolution_csv(std::ostream& out, const InterventionTrace& trace) {
  out << "step";
  if (!trace.snapshots.empty()) {
    for (const auto& g : trace.snapshots.front().groups.groups) {
      for (const char* metric : {"isolation", "diameter", "control"}) {
        out << ',' << escape(g.label + "_" + metric);
      }
    }
  }
  out << ",d_isolation,d_diameter,d_control,total_resistance,resistance_diameter,spectral_gap\n";
  for (const auto& snap : trace.snapshots) {
    out << snap.step;
    for (const auto& g : snap.groups.groups) {
      out << ',' << format_double(g.isolation) << ',' << format_double(g.diameter) << ','
          << format_double(g.control);
    }
    const auto& d = snap.disparity;
    out << ',' << format_double(d.isolation.value) << ',' << format_double(d.diameter.value)
        << ',' << format_double(d.control.value) << ','
        << format_double(snap.summary.total_resistance) << ','
        << format_double(snap.summary.resistance_diameter) << ',';
    if (snap.summary.spectral_gap) out << format_double(*snap.summary.spectral_gap);
    out << '\n';
  }
}

void write_pareto_csv(std::ostream& out, std::span<const ParetoRow> rows) {
  out << "strategy,step,d_isolation,sum_isolation,d_diameter,sum_diameter\n";
  for (const auto& row : rows) {
    out << escape(row.strategy) << ',' << row.step << ',' << format_double(row.isolation_disparity)
        << ',' << format_double(row.isolation_sum) << ','
        << format_double(row.diameter_disparity) << ',' << format_double(row.diameter_sum)
        << '\n';
  }
}

void print_group_table(std::ostream& out, const MetricsRecord& record) {
  out << line("%-20s %8s %12s %10s %10s\n", "group", "size", "isolation", "diameter",
              "control");
  for (const auto& g : record.groups.groups) {
    out << line("%-20s %8zu %12.2f %10.3f %10.3f\n", g.label.c_str(), g.size, g.isolation,
                g.diameter, g.control);
  }
  const auto& d = record.disparity;
  out << line("%-20s %8s %12.2f %10.3f %10.3f\n", "disparity", "", d.isolation.value,
              d.diameter.value, d.control.value);
  out << "disadvantaged group: " << d.disadvantaged_group << '\n';
}

void print_disparity_table(std::ostream& out, const InterventionTrace& trace) {
  if (trace.snapshots.empty()) return;
  out << line("%-12s %8s %12s %10s %10s\n", "", "edges", "d_isolation", "d_diameter",
              "d_control");
  const auto row = [&](const std::string& name, const Snapshot& s) {
    out << line("%-12s %8zu %12.2f %10.3f %10.3f\n", name.c_str(), s.step,
                s.disparity.isolation.value, s.disparity.diameter.value,
                s.disparity.control.value);
  };
  row("original", trace.snapshots.front());
  row(std::string(strategy_name(trace.strategy)), trace.snapshots.back());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

}  // namespace rescap
