// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rescap/graph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

#include "rescap/error.hpp"

namespace rescap {

namespace {

void check_index(std::size_t n, NodeIndex u) {
  if (u >= n) {
    throw PreconditionError("node index " + std::to_string(u) + " out of range (n=" +
                            std::to_string(n) + ")");
  }
}

// Inserts `v` into sorted `list`; returns false when already present.
bool sorted_insert(std::vector<NodeIndex>& list, NodeIndex v) {
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it != list.end() && *it == v) return false;
  list.insert(it, v);
  return true;
}

}  // namespace

bool AttributedGraph::has_edge(NodeIndex u, NodeIndex v) const {
  if (u >= node_count() || v >= node_count()) return false;
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  const NodeIndex target = &a == &adjacency_[u] ? v : u;
  return std::binary_search(a.begin(), a.end(), target);
}

std::vector<Edge> AttributedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeIndex u = 0; u < node_count(); ++u) {
    for (NodeIndex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::optional<NodeIndex> AttributedGraph::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string_view> AttributedGraph::attribute(NodeIndex u) const {
  const int code = attributes_.at(u);
  if (code == kUnknownAttribute) return std::nullopt;
  return std::string_view(domain_[static_cast<std::size_t>(code)]);
}

void AttributedGraph::add_edge(NodeIndex u, NodeIndex v) {
  check_index(node_count(), u);
  check_index(node_count(), v);
  if (u == v) throw PreconditionError("self-loop on node " + ids_[u]);
  if (has_edge(u, v)) {
    throw PreconditionError("edge (" + ids_[u] + ", " + ids_[v] + ") already exists");
  }
  sorted_insert(adjacency_[u], v);
  sorted_insert(adjacency_[v], u);
  ++edge_count_;
}

NodeIndex GraphBuilder::add_node(std::string_view id) {
  auto [it, inserted] = index_.try_emplace(std::string(id), ids_.size());
  if (inserted) {
    ids_.emplace_back(id);
    adjacency_.emplace_back();
    labels_.emplace_back();
    labelled_.push_back(false);
  }
  return it->second;
}

std::optional<NodeIndex> GraphBuilder::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GraphBuilder::EdgeOutcome GraphBuilder::add_edge(std::string_view a, std::string_view b) {
  const NodeIndex u = add_node(a);
  const NodeIndex v = add_node(b);
  return add_edge(u, v);
}

GraphBuilder::EdgeOutcome GraphBuilder::add_edge(NodeIndex a, NodeIndex b) {
  check_index(ids_.size(), a);
  check_index(ids_.size(), b);
  if (a == b) return EdgeOutcome::SelfLoop;
  if (!sorted_insert(adjacency_[a], b)) return EdgeOutcome::Duplicate;
  sorted_insert(adjacency_[b], a);
  return EdgeOutcome::Added;
}

bool GraphBuilder::set_attribute(NodeIndex u, std::string_view value) {
  check_index(ids_.size(), u);
  const bool replaced = labelled_[u];
  labelled_[u] = true;
  if (value.empty()) {
    labels_[u].reset();
  } else {
    labels_[u] = std::string(value);
  }
  return replaced;
}

AttributedGraph GraphBuilder::build() && {
  AttributedGraph g;
  std::map<std::string, int> codes;
  for (const auto& label : labels_) {
    if (label) codes.emplace(*label, 0);
  }
  for (auto& [label, code] : codes) {
    code = static_cast<int>(g.domain_.size());
    g.domain_.push_back(label);
  }
  g.attributes_.reserve(labels_.size());
  for (const auto& label : labels_) {
    g.attributes_.push_back(label ? codes.at(*label) : kUnknownAttribute);
  }
  std::size_t degree_sum = 0;
  for (const auto& list : adjacency_) degree_sum += list.size();
  g.edge_count_ = degree_sum / 2;
  g.ids_ = std::move(ids_);
  g.index_ = std::move(index_);
  g.adjacency_ = std::move(adjacency_);
  return g;
}

const Group* GroupPartition::find(std::string_view label) const {
  for (const auto& group : groups) {
    if (group.label == label) return &group;
  }
  return nullptr;
}

AttributedGraph induced_subgraph(const AttributedGraph& g, std::span<const NodeIndex> nodes) {
  constexpr auto kAbsent = std::numeric_limits<NodeIndex>::max();
  std::vector<NodeIndex> remap(g.node_count(), kAbsent);
  for (NodeIndex i = 0; i < nodes.size(); ++i) {
    check_index(g.node_count(), nodes[i]);
    if (remap[nodes[i]] != kAbsent) throw PreconditionError("duplicate node in subgraph selection");
    remap[nodes[i]] = i;
  }

  AttributedGraph out;
  out.ids_.reserve(nodes.size());
  out.adjacency_.resize(nodes.size());
  out.attributes_.reserve(nodes.size());
  std::vector<bool> used_codes(g.domain_.size(), false);
  std::size_t degree_sum = 0;
  for (NodeIndex i = 0; i < nodes.size(); ++i) {
    const NodeIndex old = nodes[i];
    out.ids_.push_back(g.ids_[old]);
    out.index_.emplace(g.ids_[old], i);
    out.attributes_.push_back(g.attributes_[old]);
    if (g.attributes_[old] != kUnknownAttribute) {
      used_codes[static_cast<std::size_t>(g.attributes_[old])] = true;
    }
    auto& list = out.adjacency_[i];
    for (NodeIndex w : g.adjacency_[old]) {
      if (remap[w] != kAbsent) list.push_back(remap[w]);
    }
    std::sort(list.begin(), list.end());
    degree_sum += list.size();
  }
  out.edge_count_ = degree_sum / 2;

  // Drop attribute values that no longer occur; codes stay sorted by label.
  std::vector<int> recode(g.domain_.size(), kUnknownAttribute);
  for (std::size_t c = 0; c < g.domain_.size(); ++c) {
    if (!used_codes[c]) continue;
    recode[c] = static_cast<int>(out.domain_.size());
    out.domain_.push_back(g.domain_[c]);
  }
  for (int& code : out.attributes_) {
    if (code != kUnknownAttribute) code = recode[static_cast<std::size_t>(code)];
  }
  return out;
}

std::vector<std::size_t> connected_components(const AttributedGraph& g) {
  constexpr auto kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(g.node_count(), kUnvisited);
  std::size_t next = 0;
  std::queue<NodeIndex> frontier;
  for (NodeIndex root = 0; root < g.node_count(); ++root) {
    if (label[root] != kUnvisited) continue;
    label[root] = next;
    frontier.push(root);
    while (!frontier.empty()) {
      const NodeIndex u = frontier.front();
      frontier.pop();
      for (NodeIndex w : g.neighbors(u)) {
        if (label[w] == kUnvisited) {
          label[w] = next;
          frontier.push(w);
        }
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(const AttributedGraph& g) {
  if (g.node_count() == 0) return false;
  const auto label = connected_components(g);
  return std::all_of(label.begin(), label.end(), [](std::size_t c) { return c == 0; });
}

AttributedGraph largest_connected_component(const AttributedGraph& g) {
  if (g.node_count() == 0) throw ValidationError("largest_connected_component: empty graph");
  const auto label = connected_components(g);
  const std::size_t count = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::size_t> sizes(count, 0);
  for (std::size_t c : label) ++sizes[c];
  // Components are numbered by their smallest member, so the first maximum wins ties.
  const auto best = static_cast<std::size_t>(
      std::distance(sizes.begin(), std::max_element(sizes.begin(), sizes.end())));
  if (sizes[best] == g.node_count()) return g;

  std::vector<NodeIndex> keep;
  keep.reserve(sizes[best]);
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    if (label[u] == best) keep.push_back(u);
  }
  return induced_subgraph(g, keep);
}

GroupPartition partition_by_attribute(const AttributedGraph& g) {
  GroupPartition p;
  p.groups.resize(g.attribute_domain().size());
  for (std::size_t c = 0; c < p.groups.size(); ++c) p.groups[c].label = g.attribute_domain()[c];
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    const int code = g.attribute_code(u);
    if (code == kUnknownAttribute) {
      p.excluded.push_back(u);
    } else {
      p.groups[static_cast<std::size_t>(code)].members.push_back(u);
    }
  }
  std::erase_if(p.groups, [](const Group& group) { return group.members.empty(); });
  if (p.groups.empty()) {
    throw ValidationError("partition_by_attribute: every node has an unknown attribute");
  }
  return p;
}

AttributedGraph add_edge(const AttributedGraph& g, NodeIndex u, NodeIndex v) {
  AttributedGraph out = g;
  out.add_edge(u, v);
  return out;
}

}  // namespace rescap
