// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rescap/graph.hpp"

namespace rescap {

/// Counters for input rows the loader repaired or ignored.
struct LoadReport {
  std::size_t edge_rows = 0;
  std::size_t self_loops = 0;
  std::size_t duplicate_edges = 0;
  std::size_t duplicate_attribute_rows = 0;
  std::size_t attribute_rows_without_edges = 0;
  std::size_t unknown_attribute_nodes = 0;
  /// Human-readable lines, one per repaired condition.
  std::vector<std::string> warnings;
};

struct LoadedGraph {
  AttributedGraph graph;
  LoadReport report;
};

/// Reads an edge list and an attribute table into a simple undirected graph.
///
/// Edge list: one edge per line, identifiers separated by whitespace or
/// commas, `#` starts a comment, extra columns are ignored. A first row naming
/// columns `u` and `v` (or `source` and `target`) is a header selecting the
/// endpoint columns, which lets `edges.csv` outputs be read back.
///
/// Attribute table: CSV with a header containing `node` and `attribute_name`.
/// Empty or missing values are unknown; for duplicate rows the last one wins.
/// Nodes seen only in the attribute table are ignored.
///
/// Node indices follow first appearance in the edge list.
LoadedGraph load_graph(std::istream& edges, std::istream& attributes,
                       std::string_view attribute_name,
                       std::string_view edge_source = "edges",
                       std::string_view attribute_source = "attributes");

/// File-path overload. Throws IoError when a file cannot be opened.
LoadedGraph load_graph(const std::filesystem::path& edges,
                       const std::filesystem::path& attributes,
                       std::string_view attribute_name);

/// Writes `u,v` rows (external ids) in lexicographic index order.
void write_edge_list(std::ostream& out, const AttributedGraph& g);
/// Writes the `node,<attribute_name>` table for every node.
void write_attribute_table(std::ostream& out, const AttributedGraph& g,
                           std::string_view attribute_name);

namespace csv {

/// Splits one CSV record. Handles double-quoted fields with `""` escapes.
std::vector<std::string> split_row(std::string_view line);
/// Quotes `field` when it contains a comma, quote or line break.
std::string escape(std::string_view field);
/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace csv

}  // namespace rescap
