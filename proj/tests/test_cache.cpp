#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "cache.hpp"

using namespace birsym;
using birsym::cli::CacheKey;
using birsym::cli::ReportCache;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("birsym-cache-test-" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

DimensionReport sample() {
  DimensionReport r;
  r.group = "9";
  r.n = 2;
  r.variant = Variant::Minus;
  r.dim = 1;
  r.torsion = {2, 2, 2, 2, 2};
  r.torsion_computed = true;
  r.generators = 39;
  r.ms = 1.5;
  return r;
}

}  // namespace

TEST_SUITE("cache") {
  TEST_CASE("store then load") {
    TempDir dir;
    const ReportCache cache(dir.path);
    const CacheKey key{"9", 2, Variant::Minus, Method::Brute, true, false};
    CHECK_FALSE(cache.load(key).has_value());
    cache.store(key, sample());
    const auto hit = cache.load(key);
    REQUIRE(hit.has_value());
    CHECK(hit->to_json() == sample().to_json());
    const CacheKey other{"9", 2, Variant::Minus, Method::Brute, false, false};
    CHECK_FALSE(cache.load(other).has_value());
  }

  TEST_CASE("version bump invalidates") {
    TempDir dir;
    const CacheKey key{"9", 2, Variant::Minus, Method::Brute, true, false};
    ReportCache(dir.path, "0.9").store(key, sample());
    CHECK_FALSE(ReportCache(dir.path, "1.0").load(key).has_value());
    CHECK(ReportCache(dir.path, "0.9").load(key).has_value());
  }

  TEST_CASE("corrupt files are misses") {
    TempDir dir;
    const ReportCache cache(dir.path);
    const CacheKey key{"5", 2, Variant::Plain, Method::Brute, false, false};
    cache.store(key, sample());
    std::ofstream(cache.path_for(key), std::ios::trunc) << "{\"version\": ";
    CHECK_FALSE(cache.load(key).has_value());
    cache.store(key, sample());
    CHECK(cache.load(key).has_value());
  }

  TEST_CASE("empty directory disables the cache") {
    const ReportCache cache{std::filesystem::path{}};
    CHECK_FALSE(cache.enabled());
    const CacheKey key{"5", 2, Variant::Plain, Method::Brute, false, false};
    cache.store(key, sample());
    CHECK_FALSE(cache.load(key).has_value());
  }
}
