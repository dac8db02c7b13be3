// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "rescap/graph.hpp"

namespace rescap {

inline constexpr std::size_t kDefaultRefreshInterval = 100;

/// Combinatorial Laplacian D - A as a dense matrix.
Eigen::MatrixXd laplacian_matrix(const AttributedGraph& g);

/// Laplacian of a connected graph together with its Moore-Penrose
/// pseudo-inverse.
///
/// The pseudo-inverse is kept current under edge insertions by rank-one
/// updates (see woodbury_update). Every `refresh_interval` updates it is
/// recomputed from scratch so floating-point drift cannot accumulate.
class LaplacianState {
 public:
  std::size_t node_count() const noexcept { return static_cast<std::size_t>(laplacian_.rows()); }
  const Eigen::MatrixXd& laplacian() const noexcept { return laplacian_; }
  const Eigen::MatrixXd& pinv() const noexcept { return pinv_; }
  std::size_t updates_since_refresh() const noexcept { return updates_since_refresh_; }
  std::size_t refresh_interval() const noexcept { return refresh_interval_; }

  /// Adopts a precomputed pseudo-inverse (e.g. from the on-disk cache).
  /// Only dimensions are checked.
  static LaplacianState from_parts(Eigen::MatrixXd laplacian, Eigen::MatrixXd pinv,
                                   std::size_t refresh_interval = kDefaultRefreshInterval);

 private:
  friend LaplacianState pseudo_inverse(Eigen::MatrixXd laplacian, std::size_t refresh_interval);
  friend void woodbury_update(LaplacianState& state, NodeIndex u, NodeIndex v,
                              std::optional<double> resistance);

  Eigen::MatrixXd laplacian_;
  Eigen::MatrixXd pinv_;
  std::size_t updates_since_refresh_ = 0;
  std::size_t refresh_interval_ = kDefaultRefreshInterval;
};

/// Pseudo-inverse as (L + J/n)^{-1} - J/n with J the all-ones matrix.
///
/// Throws SingularityError when the graph is disconnected (checked by BFS on
/// the off-diagonal pattern) or when n < 2.
LaplacianState pseudo_inverse(Eigen::MatrixXd laplacian,
                              std::size_t refresh_interval = kDefaultRefreshInterval);
LaplacianState pseudo_inverse(const AttributedGraph& g,
                              std::size_t refresh_interval = kDefaultRefreshInterval);

/// R_uv = Ldag_uu + Ldag_vv - 2 Ldag_uv.
double effective_resistance(const LaplacianState& state, NodeIndex u, NodeIndex v);

/// Dense symmetric matrix of all pairwise effective resistances.
class ResistanceMatrix {
 public:
  ResistanceMatrix() = default;
  explicit ResistanceMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  double operator()(NodeIndex u, NodeIndex v) const {
    return values_(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
  }
  const Eigen::MatrixXd& values() const noexcept { return values_; }

 private:
  Eigen::MatrixXd values_;
};

/// R = 1 diag(Ldag)^T + diag(Ldag) 1^T - 2 Ldag, with an exact zero diagonal.
ResistanceMatrix resistance_matrix(const LaplacianState& state);

/// Inserts edge (u, v) into the Laplacian and applies the rank-one update
///   Ldag <- Ldag - (Ldag_u - Ldag_v)(Ldag_u - Ldag_v)^T / (1 + R_uv).
/// `resistance` is the pre-update R_uv; it is read from the state when absent.
/// Performs a full recompute once `refresh_interval` updates have accumulated.
void woodbury_update(LaplacianState& state, NodeIndex u, NodeIndex v,
                     std::optional<double> resistance = std::nullopt);

/// Rows are nodes: Z = sqrt(vol) Phi Lambda^{-1/2} over the n-1 nonzero
/// eigenpairs, so that |z_u - z_v|^2 = vol * R_uv.
Eigen::MatrixXd commute_time_embedding(const LaplacianState& state, double volume);

/// Smallest nonzero Laplacian eigenvalue (algebraic connectivity).
double spectral_gap(const LaplacianState& state);

/// Effective resistance by a grounded linear solve on `g`: the row and column
/// of one node are removed from L, a unit current is injected at u and
/// extracted at v, and the potential difference is returned. Independent of
/// the pseudo-inverse code path.
double oracle_resistance(const AttributedGraph& g, NodeIndex u, NodeIndex v);

}  // namespace rescap
