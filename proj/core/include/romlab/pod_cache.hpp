#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "romlab/pod.hpp"

namespace romlab {

/// Identifies a POD ensemble: mesh resolution, snapshot spacing and count.
struct PODCacheKey {
  std::uint64_t mesh_n = 0;
  double snapshot_dt = 0.0;
  std::uint64_t snapshot_steps = 0;
  double rank_tol = 0.0;
  double nu = 0.0;  // not used by the basis; kept so keys are self-describing
};

/// Binary cache layout (all little-endian):
///
///   char[8]  magic "ROMLABPC"
///   u32      version (= 1)
///   u32      reserved (= 0)
///   u64      mesh_n
///   f64      snapshot_dt
///   u64      snapshot_steps
///   f64      rank_tol
///   u64      N     (FE dofs)
///   u64      S     (snapshot count)
///   u64      d     (rank)
///   f64[d]       eigenvalues
///   f64[S * d]   eigenvectors, column-major
///   f64[N * d]   modes, column-major
///   f64[d * d]   gradient Gram matrix, column-major
///
/// The H1 convention is not stored; it is applied after loading.
inline constexpr std::uint32_t kPodCacheVersion = 1;

std::filesystem::path pod_cache_path(const std::filesystem::path& dir, const PODCacheKey& key);

void save_pod_cache(const std::filesystem::path& file, const PODCacheKey& key,
                    const PODBasis& basis);

/// Returns nullopt when the file does not exist. Throws CacheError on a
/// malformed file or a key/dimension mismatch.
std::optional<PODBasis> load_pod_cache(const std::filesystem::path& file, const PODCacheKey& key,
                                       std::size_t expected_dofs, std::size_t expected_snapshots);

}  // namespace romlab
