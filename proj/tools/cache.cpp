#include "cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <string_view>
#include <system_error>

namespace birsym::cli {

namespace {

class LockedFd {
 public:
  LockedFd(const std::filesystem::path& p, int flags, int lock) {
    fd_ = ::open(p.c_str(), flags | O_CLOEXEC, 0644);
    if (fd_ >= 0 && ::flock(fd_, lock) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~LockedFd() {
    if (fd_ >= 0) ::close(fd_);  // releases the lock
  }
  LockedFd(const LockedFd&) = delete;
  LockedFd& operator=(const LockedFd&) = delete;

  int fd() const { return fd_; }
  explicit operator bool() const { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

bool write_all(int fd, std::string_view s) {
  while (!s.empty()) {
    const auto w = ::write(fd, s.data(), s.size());
    if (w < 0) return false;
    s.remove_prefix(static_cast<std::size_t>(w));
  }
  return true;
}

}  // namespace

std::string CacheKey::stem() const {
  std::string s = group + "_n" + std::to_string(n) + "_" + std::string(to_string(variant)) + "_" +
                  std::string(to_string(method));
  if (torsion) s += "_torsion";
  if (grading) s += "_graded";
  return s;
}

ReportCache::ReportCache(std::filesystem::path dir, std::string version)
    : dir_(std::move(dir)), version_(std::move(version)) {}

std::filesystem::path ReportCache::path_for(const CacheKey& key) const { return dir_ / (key.stem() + ".json"); }

std::optional<DimensionReport> ReportCache::load(const CacheKey& key) const {
  if (!enabled()) return std::nullopt;
  const auto p = path_for(key);
  LockedFd f(p, O_RDONLY, LOCK_SH);
  if (!f) return std::nullopt;
  std::string text;
  char buf[4096];
  for (;;) {
    const auto r = ::read(f.fd(), buf, sizeof buf);
    if (r < 0) return std::nullopt;
    if (r == 0) break;
    text.append(buf, static_cast<std::size_t>(r));
  }
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("version").get<std::string>() != version_) return std::nullopt;
    if (j.at("key").get<std::string>() != key.stem()) return std::nullopt;
    return DimensionReport::from_json(j.at("report"));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ReportCache::store(const CacheKey& key, const DimensionReport& report) const {
  if (!enabled()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;
  nlohmann::json j;
  j["version"] = version_;
  j["key"] = key.stem();
  j["report"] = report.to_json();
  const std::string text = j.dump(2) + "\n";
  LockedFd f(path_for(key), O_WRONLY | O_CREAT, LOCK_EX);
  if (!f) return;
  // Truncate under the lock; readers hold LOCK_SH.
  if (::ftruncate(f.fd(), 0) != 0) return;
  write_all(f.fd(), text);
}

std::filesystem::path default_cache_dir() {
  if (const char* e = std::getenv("BIRSYM_CACHE_DIR"); e && *e) return e;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "birsym";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "birsym";
  return {};
}

}  // namespace birsym::cli
