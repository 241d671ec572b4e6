#include "cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sumfree_cli {
namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

class FileLock {
 public:
  FileLock(const std::filesystem::path& path, int op) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ >= 0 && ::flock(fd_, op) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  bool held() const { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

}  // namespace

std::string cache_key(std::uint32_t p, std::uint32_t n, std::uint32_t k, const std::string& solver) {
  std::ostringstream out;
  out << "sf;p=" << p << ";n=" << n << ";k=" << k << ";solver=" << solver;
  return out.str();
}

CertificateCache::CertificateCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path CertificateCache::default_dir() {
  if (const char* d = std::getenv("SUMFREE_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "sumfree";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "sumfree";
  return std::filesystem::temp_directory_path() / "sumfree-cache";
}

std::filesystem::path CertificateCache::path_for(const std::string& key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a(key)));
  return dir_ / name;
}

std::optional<std::string> CertificateCache::load(const std::string& key) const {
  std::error_code ec;
  if (!std::filesystem::exists(dir_, ec)) return std::nullopt;
  FileLock lock(dir_ / ".lock", LOCK_SH);
  if (!lock.held()) return std::nullopt;
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void CertificateCache::store(const std::string& key, const std::string& document) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;
  FileLock lock(dir_ / ".lock", LOCK_EX);
  if (!lock.held()) return;
  const auto target = path_for(key);
  auto tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << document;
    if (!out) return;
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace sumfree_cli
