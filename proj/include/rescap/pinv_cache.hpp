// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include <Eigen/Dense>

#include "rescap/graph.hpp"

namespace rescap {

/// On-disk cache of Laplacian pseudo-inverses.
///
/// File layout (little-endian): 8-byte magic "RESCAPL1", uint64 n, uint64
/// content hash, then n*n float64 values in row-major order.
namespace pinv_cache {

/// FNV-1a over the external ids in index order and the sorted edge set.
/// Any change to the node order, the ids or the edges changes the key.
std::uint64_t content_hash(const AttributedGraph& g);

/// `<dir>/<hash as 16 hex digits>.ldag`
std::filesystem::path entry_path(const std::filesystem::path& dir, std::uint64_t hash);

/// Writes atomically (temp file + rename). Throws IoError on failure.
void save(const std::filesystem::path& file, std::uint64_t hash, const Eigen::MatrixXd& pinv);

/// Returns nullopt when the file is absent, truncated, or its header does not
/// match `n` and `hash`.
std::optional<Eigen::MatrixXd> load(const std::filesystem::path& file, std::size_t n,
                                    std::uint64_t hash);

}  // namespace pinv_cache

}  // namespace rescap
