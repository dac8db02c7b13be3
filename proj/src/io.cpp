// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rescap/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <tuple>

#include "rescap/error.hpp"

namespace rescap {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

std::vector<std::string> split_edge_row(std::string_view line) {
  std::vector<std::string> fields;
  if (line.find(',') != std::string_view::npos) {
    for (auto& field : csv::split_row(line)) fields.emplace_back(trim(field));
    return fields;
  }
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) fields.emplace_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

std::optional<std::pair<std::size_t, std::size_t>> header_columns(
    const std::vector<std::string>& fields) {
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    auto it = std::find(fields.begin(), fields.end(), name);
    if (it == fields.end()) return std::nullopt;
    return static_cast<std::size_t>(it - fields.begin());
  };
  for (auto [a, b] : {std::pair{"u", "v"}, std::pair{"source", "target"}}) {
    auto ca = column(a);
    auto cb = column(b);
    if (ca && cb) return std::pair{*ca, *cb};
  }
  return std::nullopt;
}

}  // namespace

LoadedGraph load_graph(std::istream& edges, std::istream& attributes,
                       std::string_view attribute_name, std::string_view edge_source,
                       std::string_view attribute_source) {
  const std::string edge_src(edge_source);
  const std::string attr_src(attribute_source);
  GraphBuilder builder;
  LoadReport report;

  std::string line;
  std::size_t line_no = 0;
  std::size_t first_col = 0;
  std::size_t second_col = 1;
  bool first_row = true;
  while (std::getline(edges, line)) {
    ++line_no;
    const auto content = strip_comment(line);
    if (content.empty()) continue;
    const auto fields = split_edge_row(content);
    if (first_row) {
      first_row = false;
      if (auto cols = header_columns(fields)) {
        std::tie(first_col, second_col) = *cols;
        continue;
      }
    }
    if (fields.size() <= std::max(first_col, second_col)) {
      throw ParseError(edge_src, line_no, "expected two node identifiers");
    }
    const auto& a = fields[first_col];
    const auto& b = fields[second_col];
    if (a.empty() || b.empty()) throw ParseError(edge_src, line_no, "empty node identifier");
    ++report.edge_rows;
    if (a == b) {
      ++report.self_loops;
      report.warnings.push_back(edge_src + ":" + std::to_string(line_no) +
                                ": dropped self-loop on " + a);
      continue;
    }
    if (builder.add_edge(a, b) == GraphBuilder::EdgeOutcome::Duplicate) ++report.duplicate_edges;
  }
  if (edges.bad()) throw IoError("failed reading " + edge_src);
  if (report.edge_rows == report.self_loops) {
    throw ValidationError(edge_src + ": graph has no edges");
  }

  line_no = 0;
  std::optional<std::size_t> node_col;
  std::optional<std::size_t> attr_col;
  while (std::getline(attributes, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty()) continue;
    auto fields = csv::split_row(content);
    for (auto& f : fields) f = std::string(trim(f));
    if (!node_col) {
      auto find = [&](std::string_view name) -> std::optional<std::size_t> {
        auto it = std::find(fields.begin(), fields.end(), name);
        if (it == fields.end()) return std::nullopt;
        return static_cast<std::size_t>(it - fields.begin());
      };
      node_col = find("node");
      attr_col = find(attribute_name);
      if (!node_col) throw ParseError(attr_src, line_no, "header lacks a 'node' column");
      if (!attr_col) {
        throw ParseError(attr_src, line_no,
                         "header lacks attribute column '" + std::string(attribute_name) + "'");
      }
      continue;
    }
    if (fields.size() <= *node_col || fields[*node_col].empty()) {
      throw ParseError(attr_src, line_no, "missing node identifier");
    }
    const auto u = builder.find(fields[*node_col]);
    if (!u) {
      ++report.attribute_rows_without_edges;
      continue;
    }
    const std::string_view value =
        fields.size() > *attr_col ? std::string_view(fields[*attr_col]) : std::string_view{};
    if (builder.set_attribute(*u, value)) {
      ++report.duplicate_attribute_rows;
      report.warnings.push_back(attr_src + ":" + std::to_string(line_no) +
                                ": duplicate row for node " + fields[*node_col] +
                                ", keeping the later value");
    }
  }
  if (attributes.bad()) throw IoError("failed reading " + attr_src);
  if (!node_col) throw ParseError(attr_src, 0, "attribute table is empty (no header)");

  LoadedGraph out{std::move(builder).build(), std::move(report)};
  for (NodeIndex u = 0; u < out.graph.node_count(); ++u) {
    if (out.graph.attribute_code(u) == kUnknownAttribute) ++out.report.unknown_attribute_nodes;
  }
  if (out.report.duplicate_edges > 0) {
    out.report.warnings.push_back(edge_src + ": collapsed " +
                                  std::to_string(out.report.duplicate_edges) +
                                  " duplicate edge rows");
  }
  if (out.report.unknown_attribute_nodes > 0) {
    out.report.warnings.push_back(std::to_string(out.report.unknown_attribute_nodes) +
                                  " nodes have an unknown '" + std::string(attribute_name) +
                                  "' value and join no group");
  }
  return out;
}

LoadedGraph load_graph(const std::filesystem::path& edges,
                       const std::filesystem::path& attributes,
                       std::string_view attribute_name) {
  std::ifstream edge_in(edges);
  if (!edge_in) throw IoError("cannot open edge list " + edges.string());
  std::ifstream attr_in(attributes);
  if (!attr_in) throw IoError("cannot open attribute table " + attributes.string());
  return load_graph(edge_in, attr_in, attribute_name, edges.string(), attributes.string());
}

void write_edge_list(std::ostream& out, const AttributedGraph& g) {
  out << "u,v\n";
  for (auto [u, v] : g.edges()) {
    out << csv::escape(g.external_id(u)) << ',' << csv::escape(g.external_id(v)) << '\n';
  }
}

void write_attribute_table(std::ostream& out, const AttributedGraph& g,
                           std::string_view attribute_name) {
  out << "node," << csv::escape(attribute_name) << '\n';
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    out << csv::escape(g.external_id(u)) << ',';
    if (auto label = g.attribute(u)) out << csv::escape(*label);
    out << '\n';
  }
}

namespace csv {

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back().push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back().push_back(c);
    }
  }
  return fields;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

}  // namespace csv

}  // namespace rescap
