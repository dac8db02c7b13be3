// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

// Graph generators and independent reference computations shared by the
// unit and acceptance suites. Nothing here calls into the pseudo-inverse path.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rescap/graph.hpp"

namespace rescap::testing {

/// Labels are given per node; an empty string means unknown.
inline AttributedGraph make_graph(std::size_t n, const std::vector<Edge>& edges,
                                  const std::vector<std::string>& labels = {}) {
  GraphBuilder b;
  for (std::size_t u = 0; u < n; ++u) b.add_node(std::to_string(u));
  for (auto [u, v] : edges) b.add_edge(u, v);
  for (std::size_t u = 0; u < labels.size(); ++u) b.set_attribute(u, labels[u]);
  return std::move(b).build();
}

inline std::vector<Edge> complete_edges(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return e;
}

inline std::vector<Edge> path_edges(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return e;
}

inline std::vector<Edge> cycle_edges(std::size_t n) {
  auto e = path_edges(n);
  e.emplace_back(0, n - 1);
  return e;
}

inline std::vector<Edge> star_edges(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return e;
}

/// Uniform random labelled tree (random attachment).
inline std::vector<Edge> random_tree_edges(std::size_t n, std::mt19937_64& rng) {
  std::vector<Edge> e;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    e.emplace_back(pick(rng), v);
  }
  return e;
}

inline bool edges_connected(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    auto u = q.front();
    q.pop();
    for (auto w : adj[u])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push(w);
      }
  }
  return count == n;
}

/// G(n, p) conditioned on connectivity (rejection sampling).
inline std::vector<Edge> connected_er_edges(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  for (;;) {
    std::vector<Edge> e;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (coin(rng)) e.emplace_back(u, v);
    if (edges_connected(n, e)) return e;
  }
}

/// Two-block stochastic block model conditioned on connectivity. The first
/// `minority` nodes form block "a"; the rest form block "b".
inline AttributedGraph connected_sbm(std::size_t n, std::size_t minority, double p_aa,
                                     double p_bb, double p_ab, std::mt19937_64& rng) {
  for (;;) {
    std::vector<Edge> e;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v) {
        const bool ua = u < minority;
        const bool va = v < minority;
        const double p = ua && va ? p_aa : (!ua && !va ? p_bb : p_ab);
        if (std::bernoulli_distribution(p)(rng)) e.emplace_back(u, v);
      }
    if (!edges_connected(n, e)) continue;
    std::vector<std::string> labels(n);
    for (std::size_t u = 0; u < n; ++u) labels[u] = u < minority ? "a" : "b";
    return make_graph(n, e, labels);
  }
}

/// Random binary labels with both values present.
inline std::vector<std::string> random_labels(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  for (;;) {
    std::vector<std::string> labels(n);
    for (auto& l : labels) l = coin(rng) ? "f" : "m";
    if (std::count(labels.begin(), labels.end(), "f") > 0 &&
        std::count(labels.begin(), labels.end(), "m") > 0)
      return labels;
  }
}

/// Hop distances from every node (BFS); used as the tree oracle.
inline std::vector<std::vector<std::size_t>> hop_distances(const AttributedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::size_t>> dist(
      n, std::vector<std::size_t>(n, std::numeric_limits<std::size_t>::max()));
  for (std::size_t s = 0; s < n; ++s) {
    std::queue<std::size_t> q;
    dist[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto w : g.neighbors(u))
        if (dist[s][w] == std::numeric_limits<std::size_t>::max()) {
          dist[s][w] = dist[s][u] + 1;
          q.push(w);
        }
    }
  }
  return dist;
}

}  // namespace rescap::testing
