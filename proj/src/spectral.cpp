// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rescap/spectral.hpp"

#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "rescap/error.hpp"

namespace rescap {

namespace {

// Eigenvalues below this are treated as zero when deciding connectivity.
constexpr double kZeroEigenvalue = 1e-8;

Eigen::Index idx(NodeIndex u) { return static_cast<Eigen::Index>(u); }

void check_pair(std::size_t n, NodeIndex u, NodeIndex v) {
  if (u >= n || v >= n) {
    throw PreconditionError("node index out of range (n=" + std::to_string(n) + ")");
  }
}

bool laplacian_connected(const Eigen::MatrixXd& laplacian) {
  const Eigen::Index n = laplacian.rows();
  if (n == 0) return false;
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  std::queue<Eigen::Index> frontier;
  visited[0] = true;
  frontier.push(0);
  Eigen::Index reached = 1;
  while (!frontier.empty()) {
    const Eigen::Index u = frontier.front();
    frontier.pop();
    for (Eigen::Index w = 0; w < n; ++w) {
      if (w != u && laplacian(w, u) != 0.0 && !visited[static_cast<std::size_t>(w)]) {
        visited[static_cast<std::size_t>(w)] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> connected_eigensystem(
    const LaplacianState& state) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(state.laplacian());
  if (solver.info() != Eigen::Success) throw SingularityError("Laplacian eigensolver failed");
  if (state.node_count() < 2 || solver.eigenvalues()(1) <= kZeroEigenvalue) {
    throw SingularityError(
        "graph is disconnected (lambda_2 ~ 0); extract the largest connected component first");
  }
  return solver;
}

}  // namespace

Eigen::MatrixXd laplacian_matrix(const AttributedGraph& g) {
  const auto n = idx(g.node_count());
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    laplacian(idx(u), idx(u)) = static_cast<double>(g.degree(u));
    for (NodeIndex w : g.neighbors(u)) laplacian(idx(w), idx(u)) = -1.0;
  }
  return laplacian;
}

LaplacianState LaplacianState::from_parts(Eigen::MatrixXd laplacian, Eigen::MatrixXd pinv,
                                          std::size_t refresh_interval) {
  if (laplacian.rows() != laplacian.cols() || pinv.rows() != laplacian.rows() ||
      pinv.cols() != laplacian.cols()) {
    throw PreconditionError("Laplacian and pseudo-inverse dimensions disagree");
  }
  LaplacianState state;
  state.laplacian_ = std::move(laplacian);
  state.pinv_ = std::move(pinv);
  state.refresh_interval_ = refresh_interval == 0 ? 1 : refresh_interval;
  return state;
}

LaplacianState pseudo_inverse(Eigen::MatrixXd laplacian, std::size_t refresh_interval) {
  const Eigen::Index n = laplacian.rows();
  if (n < 2) throw SingularityError("pseudo-inverse needs at least two nodes");
  if (laplacian.cols() != n) throw PreconditionError("Laplacian must be square");
  if (!laplacian_connected(laplacian)) {
    throw SingularityError(
        "graph is disconnected; extract the largest connected component first");
  }

  const double shift = 1.0 / static_cast<double>(n);
  Eigen::MatrixXd shifted = laplacian.array() + shift;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw SingularityError("L + J/n is not positive definite; is the graph connected?");
  }
  Eigen::MatrixXd pinv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  pinv.array() -= shift;
  // The solve leaves O(eps) asymmetry; symmetrize explicitly.
  Eigen::MatrixXd sym = 0.5 * (pinv + pinv.transpose());

  LaplacianState state;
  state.laplacian_ = std::move(laplacian);
  state.pinv_ = std::move(sym);
  state.refresh_interval_ = refresh_interval == 0 ? 1 : refresh_interval;
  return state;
}

LaplacianState pseudo_inverse(const AttributedGraph& g, std::size_t refresh_interval) {
  return pseudo_inverse(laplacian_matrix(g), refresh_interval);
}

double effective_resistance(const LaplacianState& state, NodeIndex u, NodeIndex v) {
  check_pair(state.node_count(), u, v);
  if (u == v) return 0.0;
  const auto& p = state.pinv();
  return p(idx(u), idx(u)) + p(idx(v), idx(v)) - 2.0 * p(idx(u), idx(v));
}

ResistanceMatrix resistance_matrix(const LaplacianState& state) {
  const auto& p = state.pinv();
  const Eigen::VectorXd diag = p.diagonal();
  const Eigen::Index n = p.rows();
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    r.col(col) = (diag.array() + diag(col)) - 2.0 * p.col(col).array();
    r(col, col) = 0.0;
  }
  return ResistanceMatrix(std::move(r));
}

void woodbury_update(LaplacianState& state, NodeIndex u, NodeIndex v,
                     std::optional<double> resistance) {
  check_pair(state.node_count(), u, v);
  if (u == v) throw PreconditionError("woodbury_update: self-loop");
  auto& laplacian = state.laplacian_;
  if (laplacian(idx(u), idx(v)) != 0.0) {
    throw PreconditionError("woodbury_update: edge already present");
  }

  const double r = resistance.value_or(effective_resistance(state, u, v));
  const Eigen::VectorXd diff = state.pinv_.col(idx(u)) - state.pinv_.col(idx(v));
  state.pinv_.noalias() -= (diff / (1.0 + r)) * diff.transpose();

  laplacian(idx(u), idx(u)) += 1.0;
  laplacian(idx(v), idx(v)) += 1.0;
  laplacian(idx(u), idx(v)) -= 1.0;
  laplacian(idx(v), idx(u)) -= 1.0;

  if (++state.updates_since_refresh_ >= state.refresh_interval_) {
    state = pseudo_inverse(std::move(laplacian), state.refresh_interval_);
  }
}

Eigen::MatrixXd commute_time_embedding(const LaplacianState& state, double volume) {
  if (!(volume > 0.0)) throw PreconditionError("commute_time_embedding: volume must be positive");
  const auto solver = connected_eigensystem(state);
  const Eigen::Index n = state.laplacian().rows();
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  Eigen::MatrixXd z(n, n - 1);
  for (Eigen::Index i = 1; i < n; ++i) {
    z.col(i - 1) = std::sqrt(volume / lambda(i)) * solver.eigenvectors().col(i);
  }
  return z;
}

double spectral_gap(const LaplacianState& state) {
  if (state.node_count() < 2) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(state.laplacian(),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw SingularityError("Laplacian eigensolver failed");
  return solver.eigenvalues()(1);
}

double oracle_resistance(const AttributedGraph& g, NodeIndex u, NodeIndex v) {
  const std::size_t n = g.node_count();
  check_pair(n, u, v);
  if (u == v) return 0.0;
  const NodeIndex ground = n - 1;
  // Reduced index: nodes after the ground shift down by one (ground is last).
  const auto reduced_size = static_cast<Eigen::Index>(n - 1);

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(n + g.volume());
  for (NodeIndex a = 0; a < n; ++a) {
    if (a == ground) continue;
    entries.emplace_back(idx(a), idx(a), static_cast<double>(g.degree(a)));
    for (NodeIndex b : g.neighbors(a)) {
      if (b != ground) entries.emplace_back(idx(a), idx(b), -1.0);
    }
  }
  Eigen::SparseMatrix<double> grounded(reduced_size, reduced_size);
  grounded.setFromTriplets(entries.begin(), entries.end());

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(grounded);
  if (solver.info() != Eigen::Success) {
    throw SingularityError("grounded Laplacian is singular; graph is disconnected");
  }
  Eigen::VectorXd current = Eigen::VectorXd::Zero(reduced_size);
  if (u != ground) current(idx(u)) += 1.0;
  if (v != ground) current(idx(v)) -= 1.0;
  const Eigen::VectorXd potential = solver.solve(current);
  if (solver.info() != Eigen::Success || !potential.allFinite()) {
    throw SingularityError("grounded Laplacian is singular; graph is disconnected");
  }
  // Reject solutions of a singular system that LDLT did not flag.
  const double residual = (grounded * potential - current).norm();
  if (residual > 1e-6) {
    throw SingularityError("grounded Laplacian is singular; graph is disconnected");
  }
  const double pu = u == ground ? 0.0 : potential(idx(u));
  const double pv = v == ground ? 0.0 : potential(idx(v));
  return pu - pv;
}

}  // namespace rescap
