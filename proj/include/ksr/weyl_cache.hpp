#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ksr/rootdata.hpp"

namespace ksr::rootdata {

/// Memoized Weyl group element lists, optionally persisted as JSON files in a
/// directory. Files are validated on load (chamber closure, word lengths) and
/// silently rebuilt when stale or corrupt.
class WeylCache {
 public:
  static constexpr int kSchemaVersion = 1;
  static constexpr std::size_t kMaxOrder = 1'000'000;
  static constexpr const char* kEnvVar = "KSPRINGER_CACHE_DIR";

  /// Memory-only cache.
  WeylCache() = default;
  explicit WeylCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}
  /// $KSPRINGER_CACHE_DIR when set and `enabled`.
  static std::optional<std::filesystem::path> directory_from_environment(bool enabled);

  const std::optional<std::filesystem::path>& directory() const noexcept { return dir_; }

  /// Elements of the subsystem's Weyl group, identity first.
  std::vector<WeylElement> elements(const Subsystem& sub);

  struct Stats {
    std::size_t memory_hits = 0;
    std::size_t disk_hits = 0;
    std::size_t rebuilt = 0;
    std::size_t rejected_files = 0;
  };
  Stats stats() const;

  std::filesystem::path file_for(const Subsystem& sub) const;

 private:
  std::optional<std::vector<WeylElement>> load(const Subsystem& sub) const;
  void store(const Subsystem& sub, const std::vector<WeylElement>& elems) const;

  std::optional<std::filesystem::path> dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::vector<WeylElement>> memory_;
  mutable std::mutex stats_mutex_;
  mutable Stats stats_;
};

/// True when `elems` is exactly the Weyl group of `sub` with reduced words.
bool validate_elements(const Subsystem& sub, const std::vector<WeylElement>& elems);

}  // namespace ksr::rootdata
