#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace toe {

std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

// Writes one artifact and remembers (name, size, hash) for the manifest.
// The manifest isolates the timestamp in its own field so everything else is
// byte-identical across reruns of the same config.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir);

  void write(const std::string& name, std::string_view content);
  void write_csv(const std::string& name,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);
  // config keys land in the manifest verbatim.
  void write_manifest(const std::map<std::string, std::string>& config);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  struct Entry {
    std::string name;
    std::size_t bytes;
    std::string hash;
  };
  std::filesystem::path dir_;
  std::vector<Entry> entries_;
};

}  // namespace toe
