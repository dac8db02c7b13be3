// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rescap {

using NodeIndex = std::size_t;
using Edge = std::pair<NodeIndex, NodeIndex>;

/// Attribute code carried by nodes whose protected attribute is not known.
inline constexpr int kUnknownAttribute = -1;

/// Undirected simple graph with one categorical protected attribute per node.
///
/// Nodes are dense indices 0..n-1, each mapped to exactly one external string
/// identifier. Neighbor lists are kept sorted. Attribute values are interned:
/// `attribute_domain()` is sorted lexicographically and `attribute_code(u)`
/// indexes into it, or is `kUnknownAttribute`.
class AttributedGraph {
 public:
  AttributedGraph() = default;

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  /// Sum of degrees, 2|E|.
  std::size_t volume() const noexcept { return 2 * edge_count_; }

  std::size_t degree(NodeIndex u) const { return adjacency_.at(u).size(); }
  std::span<const NodeIndex> neighbors(NodeIndex u) const { return adjacency_.at(u); }
  bool has_edge(NodeIndex u, NodeIndex v) const;

  /// All edges as (min, max) pairs in lexicographic order.
  std::vector<Edge> edges() const;

  const std::string& external_id(NodeIndex u) const { return ids_.at(u); }
  std::optional<NodeIndex> index_of(std::string_view id) const;

  int attribute_code(NodeIndex u) const { return attributes_.at(u); }
  /// Attribute label of `u`, or nullopt when unknown.
  std::optional<std::string_view> attribute(NodeIndex u) const;
  const std::vector<std::string>& attribute_domain() const noexcept { return domain_; }

  /// Inserts edge (u, v) in place. Throws PreconditionError on a self-loop,
  /// an existing edge or an out-of-range index.
  void add_edge(NodeIndex u, NodeIndex v);

 private:
  friend class GraphBuilder;
  friend AttributedGraph induced_subgraph(const AttributedGraph& g,
                                          std::span<const NodeIndex> nodes);

  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<NodeIndex>> adjacency_;
  std::vector<int> attributes_;
  std::vector<std::string> domain_;
  std::size_t edge_count_ = 0;
};

/// Incremental construction of an AttributedGraph from external identifiers.
class GraphBuilder {
 public:
  enum class EdgeOutcome { Added, Duplicate, SelfLoop };

  /// Returns the index of `id`, creating the node on first sight.
  NodeIndex add_node(std::string_view id);
  std::optional<NodeIndex> find(std::string_view id) const;

  EdgeOutcome add_edge(std::string_view a, std::string_view b);
  EdgeOutcome add_edge(NodeIndex a, NodeIndex b);

  /// Sets the attribute of an existing node. Returns true when an earlier value
  /// was replaced. An empty `value` means unknown.
  bool set_attribute(NodeIndex u, std::string_view value);

  std::size_t node_count() const noexcept { return ids_.size(); }

  AttributedGraph build() &&;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<NodeIndex>> adjacency_;
  std::vector<std::optional<std::string>> labels_;
  std::vector<bool> labelled_;
};

/// Groups of nodes sharing an attribute value; `groups` is sorted by label.
struct Group {
  std::string label;
  std::vector<NodeIndex> members;
};

struct GroupPartition {
  std::vector<Group> groups;
  /// Nodes with an unknown attribute. They stay in the graph but join no group.
  std::vector<NodeIndex> excluded;

  const Group* find(std::string_view label) const;
};

/// Graph induced on `nodes` (kept in the given order as the new indices).
AttributedGraph induced_subgraph(const AttributedGraph& g, std::span<const NodeIndex> nodes);

/// Component label per node (labels ordered by smallest member index).
std::vector<std::size_t> connected_components(const AttributedGraph& g);
bool is_connected(const AttributedGraph& g);

/// Induced subgraph on the largest connected component; ties go to the
/// component holding the smallest index. Relative node order is preserved.
AttributedGraph largest_connected_component(const AttributedGraph& g);

/// Throws ValidationError when every node has an unknown attribute.
GroupPartition partition_by_attribute(const AttributedGraph& g);

/// Copy of `g` with edge (u, v) added.
AttributedGraph add_edge(const AttributedGraph& g, NodeIndex u, NodeIndex v);

}  // namespace rescap
