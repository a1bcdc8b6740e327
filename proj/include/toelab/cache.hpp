#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace toe {

// Small on-disk memo for expensive query results. Keys are free-form strings
// (they should embed the machine version tag and every budget parameter);
// values are text payloads. Files are named by the key's hash and store the
// key verbatim, so collisions degrade to misses, never to wrong answers.
class KvCache {
 public:
  explicit KvCache(std::filesystem::path dir);

  // Reads TOELAB_CACHE_DIR; nullopt when unset or empty.
  static std::optional<KvCache> from_env();

  std::optional<std::string> get(std::string_view key) const;
  void put(std::string_view key, std::string_view value) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(std::string_view key) const;
  std::filesystem::path dir_;
};

}  // namespace toe
