#include "toelab/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "toelab/report_io.hpp"

namespace toe {

KvCache::KvCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<KvCache> KvCache::from_env() {
  const char* dir = std::getenv("TOELAB_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return KvCache(dir);
}

std::filesystem::path KvCache::path_for(std::string_view key) const {
  return dir_ / (fnv1a64_hex(key) + ".kv");
}

std::optional<std::string> KvCache::get(std::string_view key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::string stored_key;
  if (!std::getline(in, stored_key) || stored_key != key) return std::nullopt;
  std::ostringstream value;
  value << in.rdbuf();
  return value.str();
}

void KvCache::put(std::string_view key, std::string_view value) const {
  // Write-then-rename so a concurrent reader never sees a torn entry.
  std::filesystem::path final_path = path_for(key);
  std::filesystem::path tmp = final_path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return;  // caching is best-effort
    out << key << '\n' << value;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, final_path, ec);
}

}  // namespace toe
