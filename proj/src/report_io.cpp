#include "toelab/report_io.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "toelab/machine.hpp"

namespace toe {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void ArtifactWriter::write(const std::string& name, std::string_view content) {
  std::ofstream out(dir_ / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  entries_.push_back({name, content.size(), fnv1a64_hex(content)});
}

void ArtifactWriter::write_csv(const std::string& name,
                               const std::vector<std::string>& header,
                               const std::vector<std::vector<std::string>>& rows) {
  std::string content;
  auto append_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) content += ',';
      content += row[i];
    }
    content += '\n';
  };
  append_row(header);
  for (const auto& row : rows) append_row(row);
  write(name, content);
}

void ArtifactWriter::write_manifest(
    const std::map<std::string, std::string>& config) {
  nlohmann::ordered_json manifest;
  manifest["schema"] = "toelab-manifest-v1";
  manifest["machine"] = std::string(kMachineVersion);
  manifest["config"] = config;
  nlohmann::ordered_json artifacts = nlohmann::ordered_json::array();
  for (const auto& e : entries_)
    artifacts.push_back(
        {{"name", e.name}, {"bytes", e.bytes}, {"fnv1a64", e.hash}});
  manifest["artifacts"] = artifacts;
  manifest["timestamp"] = static_cast<std::int64_t>(
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
  std::ofstream out(dir_ / "manifest.json", std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + (dir_ / "manifest.json").string());
  out << manifest.dump(2) << '\n';
}

}  // namespace toe
