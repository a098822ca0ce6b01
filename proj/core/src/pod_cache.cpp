#include "romlab/pod_cache.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "romlab/errors.hpp"

namespace romlab {

static_assert(std::endian::native == std::endian::little,
              "POD cache I/O assumes a little-endian host");

namespace {

constexpr std::array<char, 8> kMagic = {'R', 'O', 'M', 'L', 'A', 'B', 'P', 'C'};

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

void put_block(std::ostream& out, const double* data, std::size_t count) {
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) {
    throw CacheError("POD cache: truncated header");
  }
  return value;
}

void get_block(std::istream& in, double* data, std::size_t count) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) {
    throw CacheError("POD cache: truncated payload");
  }
}

}  // namespace

std::filesystem::path pod_cache_path(const std::filesystem::path& dir, const PODCacheKey& key) {
  char name[160];
  std::snprintf(name, sizeof(name), "pod_n%llu_dt%.6e_m%llu_tol%.1e.bin",
                static_cast<unsigned long long>(key.mesh_n), key.snapshot_dt,
                static_cast<unsigned long long>(key.snapshot_steps), key.rank_tol);
  return dir / name;
}

void save_pod_cache(const std::filesystem::path& file, const PODCacheKey& key,
                    const PODBasis& basis) {
  if (file.has_parent_path()) {
    std::filesystem::create_directories(file.parent_path());
  }
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw CacheError("POD cache: cannot open " + tmp.string() + " for writing");
    }
    out.write(kMagic.data(), kMagic.size());
    put<std::uint32_t>(out, kPodCacheVersion);
    put<std::uint32_t>(out, 0);
    put<std::uint64_t>(out, key.mesh_n);
    put<double>(out, key.snapshot_dt);
    put<std::uint64_t>(out, key.snapshot_steps);
    put<double>(out, key.rank_tol);
    const auto n = static_cast<std::uint64_t>(basis.modes.rows());
    const auto s = static_cast<std::uint64_t>(basis.eigenvectors.rows());
    const auto d = static_cast<std::uint64_t>(basis.rank());
    put(out, n);
    put(out, s);
    put(out, d);
    put_block(out, basis.eigenvalues.data(), d);
    put_block(out, basis.eigenvectors.data(), s * d);
    put_block(out, basis.modes.data(), n * d);
    put_block(out, basis.gradient_gram.data(), d * d);
    if (!out) {
      throw CacheError("POD cache: write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, file);
}

std::optional<PODBasis> load_pod_cache(const std::filesystem::path& file, const PODCacheKey& key,
                                       std::size_t expected_dofs, std::size_t expected_snapshots) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) {
    throw CacheError("POD cache: bad magic in " + file.string());
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kPodCacheVersion) {
    throw CacheError("POD cache: unsupported version " + std::to_string(version));
  }
  (void)get<std::uint32_t>(in);
  const auto mesh_n = get<std::uint64_t>(in);
  const auto dt = get<double>(in);
  const auto steps = get<std::uint64_t>(in);
  const auto tol = get<double>(in);
  if (mesh_n != key.mesh_n || dt != key.snapshot_dt || steps != key.snapshot_steps ||
      tol != key.rank_tol) {
    throw CacheError("POD cache: key mismatch in " + file.string());
  }
  const auto n = get<std::uint64_t>(in);
  const auto s = get<std::uint64_t>(in);
  const auto d = get<std::uint64_t>(in);
  if (n != expected_dofs || s != expected_snapshots || d == 0 || d > s) {
    throw CacheError("POD cache: dimension mismatch in " + file.string());
  }
  PODBasis basis;
  const auto ni = static_cast<Eigen::Index>(n);
  const auto si = static_cast<Eigen::Index>(s);
  const auto di = static_cast<Eigen::Index>(d);
  basis.eigenvalues.resize(di);
  basis.eigenvectors.resize(si, di);
  basis.modes.resize(ni, di);
  basis.gradient_gram.resize(di, di);
  get_block(in, basis.eigenvalues.data(), d);
  get_block(in, basis.eigenvectors.data(), s * d);
  get_block(in, basis.modes.data(), n * d);
  get_block(in, basis.gradient_gram.data(), d * d);
  return basis;
}

}  // namespace romlab
