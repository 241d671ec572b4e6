#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace sumfree_cli {

/// Content-addressed store of certificate JSON documents. Entries are named by
/// a hash of their key; reads take a shared flock, writes an exclusive one and
/// land through a rename.
class CertificateCache {
 public:
  explicit CertificateCache(std::filesystem::path dir);

  /// $SUMFREE_CACHE_DIR, else $XDG_CACHE_HOME/sumfree, else ~/.cache/sumfree.
  static std::filesystem::path default_dir();

  std::optional<std::string> load(const std::string& key) const;
  void store(const std::string& key, const std::string& document) const;
  std::filesystem::path path_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
};

std::string cache_key(std::uint32_t p, std::uint32_t n, std::uint32_t k, const std::string& solver);

}  // namespace sumfree_cli
