// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rescap/intervention.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>

#include "rescap/error.hpp"

namespace rescap {

namespace {

constexpr std::array<std::pair<Strategy, std::string_view>, 6> kStrategyNames = {{
    {Strategy::Erg, "erg"},
    {Strategy::Random, "random"},
    {Strategy::Cos, "cos"},
    {Strategy::StrongErg, "s-erg"},
    {Strategy::StrongCos, "s-cos"},
    {Strategy::StrongRandom, "s-random"},
}};

enum class Objective { Resistance, Cosine, Uniform };

Objective objective_of(Strategy s) {
  switch (s) {
    case Strategy::Erg:
    case Strategy::StrongErg:
      return Objective::Resistance;
    case Strategy::Cos:
    case Strategy::StrongCos:
      return Objective::Cosine;
    case Strategy::Random:
    case Strategy::StrongRandom:
      return Objective::Uniform;
  }
  return Objective::Uniform;
}

// Weak-tie strategies pick the most distant pair: largest resistance, or
// smallest neighborhood similarity. Strong-tie strategies invert that.
bool maximizes(Strategy s) { return s == Strategy::Erg || s == Strategy::StrongCos; }

// Uniform integer in [0, bound) from raw engine output, identical on every
// platform (std::uniform_int_distribution is implementation-defined).
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine();
  while (x >= limit) x = engine();
  return x % bound;
}

struct Choice {
  NodeIndex u = 0;
  NodeIndex v = 0;
  double score = 0.0;
};

class Intervention {
 public:
  Intervention(const AttributedGraph& g, const GroupPartition& p, const InterventionConfig& cfg,
               std::optional<LaplacianState> initial)
      : cfg_(cfg),
        partition_(p),
        graph_(g),
        n_(g.node_count()),
        adjacent_(n_ * n_, 0),
        in_target_(n_, 0),
        engine_(cfg.seed) {
    if (cfg.snapshot_every == 0) throw ValidationError("snapshot_every must be positive");
    if (cfg.budget > 0 && cfg.snapshot_every > cfg.budget) {
      throw ValidationError("snapshot_every must not exceed the budget");
    }
    if (initial && initial->node_count() != n_) {
      throw PreconditionError("initial pseudo-inverse does not match the graph");
    }
    state_ = initial ? std::move(*initial) : pseudo_inverse(graph_, cfg.refresh_interval);
    for (auto [u, v] : graph_.edges()) {
      adjacent_[u * n_ + v] = 1;
      adjacent_[v * n_ + u] = 1;
    }
    if (objective_of(cfg.strategy) == Objective::Cosine) init_common_neighbors();
  }

  InterventionTrace run() {
    InterventionTrace trace;
    trace.strategy = cfg_.strategy;
    trace.snapshots.push_back(snapshot(0, true));
    trace.disadvantaged_group = trace.snapshots.front().disparity.disadvantaged_group;
    set_target(trace.disadvantaged_group);

    std::size_t step = 0;
    while (step < cfg_.budget) {
      if (cfg_.reidentify_disadvantaged && step > 0) set_target(most_isolated_group());
      const auto choice = select();
      if (!choice) {
        trace.exhausted = true;
        break;
      }
      ++step;
      insert(choice->u, choice->v);
      trace.added_edges.push_back({step, choice->u, choice->v, choice->score});
      if (step % cfg_.snapshot_every == 0 || step == cfg_.budget) {
        trace.snapshots.push_back(
            snapshot(step, cfg_.spectral_gap_every_snapshot || step == cfg_.budget));
      }
    }
    if (trace.snapshots.back().step != step) trace.snapshots.push_back(snapshot(step, true));
    trace.final_graph = std::move(graph_);
    return trace;
  }

 private:
  Snapshot snapshot(std::size_t step, bool with_gap) const {
    Snapshot s;
    s.step = step;
    const auto r = resistance_matrix(state_);
    s.groups = group_metrics(node_metrics(r, graph_), partition_);
    s.disparity = disparity_report(s.groups);
    s.summary = graph_summary(state_, r, graph_, with_gap);
    return s;
  }

  void set_target(const std::string& label) {
    std::fill(in_target_.begin(), in_target_.end(), 0);
    target_.clear();
    const Group* group = partition_.find(label);
    if (group == nullptr) throw PreconditionError("unknown group '" + label + "'");
    target_ = group->members;
    std::sort(target_.begin(), target_.end());
    for (NodeIndex u : target_) in_target_[u] = 1;
  }

  // Node isolation straight from the pseudo-inverse: since its rows sum to
  // zero, sum_v R_uv = n Ldag_uu + tr(Ldag).
  std::string most_isolated_group() const {
    const auto& pinv = state_.pinv();
    const double trace = pinv.trace();
    const std::string* best = nullptr;
    double best_value = -std::numeric_limits<double>::infinity();
    for (const auto& group : partition_.groups) {
      double total = 0.0;
      for (NodeIndex u : group.members) {
        const auto i = static_cast<Eigen::Index>(u);
        total += static_cast<double>(n_) * pinv(i, i) + trace;
      }
      const double mean = total / static_cast<double>(group.members.size());
      if (mean > best_value) {
        best_value = mean;
        best = &group.label;
      }
    }
    return *best;
  }

  // Visits candidate pairs (a < b, non-adjacent, touching the target group)
  // in lexicographic order.
  template <typename Visit>
  void for_each_candidate(Visit&& visit) const {
    for (NodeIndex a = 0; a < n_; ++a) {
      const std::uint8_t* row = adjacent_.data() + a * n_;
      if (in_target_[a]) {
        for (NodeIndex b = a + 1; b < n_; ++b) {
          if (!row[b]) visit(a, b);
        }
      } else {
        auto it = std::upper_bound(target_.begin(), target_.end(), a);
        for (; it != target_.end(); ++it) {
          if (!row[*it]) visit(a, *it);
        }
      }
    }
  }

  // Candidate loops fix `a` and sweep `b`, so read column a of the symmetric
  // pseudo-inverse rather than row a.
  double resistance(NodeIndex a, NodeIndex b) const {
    const auto& p = state_.pinv();
    return diag_[a] + diag_[b] - 2.0 * p(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a));
  }

  double cosine(NodeIndex a, NodeIndex b) const {
    const double da = static_cast<double>(graph_.degree(a));
    const double db = static_cast<double>(graph_.degree(b));
    if (da == 0.0 || db == 0.0) return 0.0;
    return static_cast<double>(common_[a * n_ + b]) / std::sqrt(da * db);
  }

  std::optional<Choice> select() {
    const Eigen::VectorXd d = state_.pinv().diagonal();
    diag_.assign(d.data(), d.data() + d.size());
    switch (objective_of(cfg_.strategy)) {
      case Objective::Resistance:
        return select_extreme([this](NodeIndex a, NodeIndex b) { return resistance(a, b); });
      case Objective::Cosine:
        return select_extreme([this](NodeIndex a, NodeIndex b) { return cosine(a, b); });
      case Objective::Uniform:
        return select_uniform();
    }
    return std::nullopt;
  }

  template <typename Score>
  std::optional<Choice> select_extreme(Score score) const {
    const bool maximize = maximizes(cfg_.strategy);
    bool any = false;
    double best = 0.0;
    for_each_candidate([&](NodeIndex a, NodeIndex b) {
      const double s = score(a, b);
      if (!any || (maximize ? s > best : s < best)) best = s;
      any = true;
    });
    if (!any) return std::nullopt;

    const double tol = cfg_.tie_tolerance * std::max(1.0, std::abs(best));
    std::optional<Choice> chosen;
    for_each_candidate([&](NodeIndex a, NodeIndex b) {
      if (chosen) return;
      const double s = score(a, b);
      if (std::abs(s - best) <= tol) chosen = Choice{a, b, s};
    });
    return chosen;
  }

  std::optional<Choice> select_uniform() {
    std::uint64_t count = 0;
    for_each_candidate([&](NodeIndex, NodeIndex) { ++count; });
    if (count == 0) return std::nullopt;
    std::uint64_t k = uniform_below(engine_, count);
    std::optional<Choice> chosen;
    for_each_candidate([&](NodeIndex a, NodeIndex b) {
      if (!chosen && k-- == 0) chosen = Choice{a, b, resistance(a, b)};
    });
    return chosen;
  }

  void insert(NodeIndex u, NodeIndex v) {
    const double r = effective_resistance(state_, u, v);
    if (cfg_.update == PinvUpdate::Woodbury) {
      woodbury_update(state_, u, v, r);
    } else {
      Eigen::MatrixXd laplacian = state_.laplacian();
      const auto iu = static_cast<Eigen::Index>(u);
      const auto iv = static_cast<Eigen::Index>(v);
      laplacian(iu, iu) += 1.0;
      laplacian(iv, iv) += 1.0;
      laplacian(iu, iv) -= 1.0;
      laplacian(iv, iu) -= 1.0;
      state_ = pseudo_inverse(std::move(laplacian), cfg_.refresh_interval);
    }
    if (!common_.empty()) {
      // v becomes a common neighbor of u and every old neighbor of v, and
      // symmetrically for u.
      for (NodeIndex x : graph_.neighbors(v)) {
        ++common_[u * n_ + x];
        ++common_[x * n_ + u];
      }
      for (NodeIndex x : graph_.neighbors(u)) {
        ++common_[v * n_ + x];
        ++common_[x * n_ + v];
      }
    }
    graph_.add_edge(u, v);
    adjacent_[u * n_ + v] = 1;
    adjacent_[v * n_ + u] = 1;
  }

  void init_common_neighbors() {
    common_.assign(n_ * n_, 0);
    for (NodeIndex w = 0; w < n_; ++w) {
      const auto nbrs = graph_.neighbors(w);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
          ++common_[nbrs[i] * n_ + nbrs[j]];
          ++common_[nbrs[j] * n_ + nbrs[i]];
        }
      }
    }
  }

  const InterventionConfig& cfg_;
  const GroupPartition& partition_;
  AttributedGraph graph_;
  std::size_t n_;
  LaplacianState state_;
  std::vector<std::uint8_t> adjacent_;
  std::vector<std::uint8_t> in_target_;
  std::vector<NodeIndex> target_;
  std::vector<double> diag_;
  std::vector<std::uint32_t> common_;
  std::mt19937_64 engine_;
};

}  // namespace

std::string_view strategy_name(Strategy s) {
  for (auto [value, name] : kStrategyNames) {
    if (value == s) return name;
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto [value, known] : kStrategyNames) {
    if (known == lower) return value;
  }
  return std::nullopt;
}

InterventionTrace run_intervention(const AttributedGraph& g, const GroupPartition& p,
                                   const InterventionConfig& cfg,
                                   std::optional<LaplacianState> initial) {
  return Intervention(g, p, cfg, std::move(initial)).run();
}

InterventionTrace erg_link(const AttributedGraph& g, const GroupPartition& p,
                           InterventionConfig cfg) {
  cfg.strategy = Strategy::Erg;
  return run_intervention(g, p, cfg);
}

InterventionTrace baseline_random(const AttributedGraph& g, const GroupPartition& p,
                                  InterventionConfig cfg) {
  cfg.strategy = Strategy::Random;
  return run_intervention(g, p, cfg);
}

InterventionTrace baseline_cos(const AttributedGraph& g, const GroupPartition& p,
                               InterventionConfig cfg) {
  cfg.strategy = Strategy::Cos;
  return run_intervention(g, p, cfg);
}

InterventionTrace strong_variant(Strategy weak, const AttributedGraph& g,
                                 const GroupPartition& p, InterventionConfig cfg) {
  switch (weak) {
    case Strategy::Erg:
    case Strategy::StrongErg:
      cfg.strategy = Strategy::StrongErg;
      break;
    case Strategy::Cos:
    case Strategy::StrongCos:
      cfg.strategy = Strategy::StrongCos;
      break;
    case Strategy::Random:
    case Strategy::StrongRandom:
      cfg.strategy = Strategy::StrongRandom;
      break;
  }
  return run_intervention(g, p, cfg);
}

double adjacency_cosine(const AttributedGraph& g, NodeIndex u, NodeIndex v) {
  if (u == v) throw PreconditionError("adjacency_cosine: u == v");
  const auto nu = g.neighbors(u);
  const auto nv = g.neighbors(v);
  if (nu.empty() || nv.empty()) return 0.0;
  std::size_t shared = 0;
  auto a = nu.begin();
  auto b = nv.begin();
  while (a != nu.end() && b != nv.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++shared;
      ++a;
      ++b;
    }
  }
  return static_cast<double>(shared) /
         std::sqrt(static_cast<double>(nu.size()) * static_cast<double>(nv.size()));
}

std::vector<ParetoRow> pareto_points(std::span<const InterventionTrace> traces) {
  std::vector<ParetoRow> rows;
  for (const auto& trace : traces) {
    for (const auto& snap : trace.snapshots) {
      ParetoRow row;
      row.strategy = std::string(strategy_name(trace.strategy));
      row.step = snap.step;
      row.isolation_disparity = snap.disparity.isolation.value;
      row.diameter_disparity = snap.disparity.diameter.value;
      for (const auto& group : snap.groups.groups) {
        row.isolation_sum += group.isolation;
        row.diameter_sum += group.diameter;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace rescap
