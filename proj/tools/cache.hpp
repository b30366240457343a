#pragma once

// On-disk cache of DimensionReports, one JSON file per key. Reads take a
// shared flock, writes an exclusive one; unreadable or stale files count as
// misses.

#include <filesystem>
#include <optional>
#include <string>

#include "birsym/quotients.hpp"

namespace birsym::cli {

struct CacheKey {
  std::string group;  // canonical literal
  int n = 2;
  Variant variant = Variant::Plain;
  Method method = Method::Brute;
  bool torsion = false;
  bool grading = false;

  std::string stem() const;
};

class ReportCache {
 public:
  // Empty directory disables the cache.
  explicit ReportCache(std::filesystem::path dir, std::string version = kCodeVersion);

  bool enabled() const { return !dir_.empty(); }
  std::filesystem::path path_for(const CacheKey& key) const;

  std::optional<DimensionReport> load(const CacheKey& key) const;
  void store(const CacheKey& key, const DimensionReport& report) const;

 private:
  std::filesystem::path dir_;
  std::string version_;
};

// BIRSYM_CACHE_DIR, else $XDG_CACHE_HOME/birsym, else $HOME/.cache/birsym.
std::filesystem::path default_cache_dir();

}  // namespace birsym::cli
