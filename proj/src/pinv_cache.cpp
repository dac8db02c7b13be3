// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rescap/pinv_cache.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <fstream>
#include <string_view>
#include <system_error>
#include <vector>

#include "rescap/error.hpp"

namespace rescap::pinv_cache {

namespace {

constexpr std::array<char, 8> kMagic = {'R', 'E', 'S', 'C', 'A', 'P', 'L', '1'};
constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

static_assert(std::endian::native == std::endian::little,
              "cache format is written in native order and assumes little-endian");

struct Fnv1a {
  std::uint64_t state = kFnvOffset;

  void bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      state ^= p[i];
      state *= kFnvPrime;
    }
  }
  void u64(std::uint64_t value) { bytes(&value, sizeof value); }
  void text(std::string_view s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
};

}  // namespace

std::uint64_t content_hash(const AttributedGraph& g) {
  Fnv1a h;
  h.u64(g.node_count());
  for (NodeIndex u = 0; u < g.node_count(); ++u) h.text(g.external_id(u));
  h.u64(g.edge_count());
  for (auto [u, v] : g.edges()) {
    h.u64(u);
    h.u64(v);
  }
  return h.state;
}

std::filesystem::path entry_path(const std::filesystem::path& dir, std::uint64_t hash) {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.ldag", static_cast<unsigned long long>(hash));
  return dir / name;
}

void save(const std::filesystem::path& file, std::uint64_t hash, const Eigen::MatrixXd& pinv) {
  std::error_code ec;
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path(), ec);
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write cache file " + tmp.string());
    const std::uint64_t n = static_cast<std::uint64_t>(pinv.rows());
    out.write(kMagic.data(), kMagic.size());
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&hash), sizeof hash);
    // Row-major on disk; Eigen's default storage is column-major.
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = pinv;
    out.write(reinterpret_cast<const char*>(rows.data()),
              static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(rows.size())));
    if (!out) throw IoError("short write to cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw IoError("cannot move cache file into place: " + ec.message());
}

std::optional<Eigen::MatrixXd> load(const std::filesystem::path& file, std::size_t n,
                                    std::uint64_t hash) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::array<char, 8> magic{};
  std::uint64_t stored_n = 0;
  std::uint64_t stored_hash = 0;
  in.read(magic.data(), magic.size());
  in.read(reinterpret_cast<char*>(&stored_n), sizeof stored_n);
  in.read(reinterpret_cast<char*>(&stored_hash), sizeof stored_hash);
  if (!in || magic != kMagic || stored_n != n || stored_hash != hash) return std::nullopt;

  const auto size = static_cast<Eigen::Index>(n);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(size, size);
  in.read(reinterpret_cast<char*>(rows.data()),
          static_cast<std::streamsize>(sizeof(double) * n * n));
  if (!in) return std::nullopt;
  return Eigen::MatrixXd(rows);
}

}  // namespace rescap::pinv_cache
