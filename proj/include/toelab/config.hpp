#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace toe {

// Flat key=value experiment configuration; '#' starts a comment. Unknown keys
// are rejected. Keys (all optional unless a subcommand requires them):
//   subcommand  max_len  steps  max_output_bits  seed  trials  horizon
//   targets (comma-separated bit strings)  out  cache (0/1)  shards
inline constexpr unsigned kMaxLenCap = 26;

struct ExperimentConfig {
  std::string subcommand;
  unsigned max_len = 8;
  std::uint64_t steps = 0;            // 0: use the default budget
  std::uint64_t max_output_bits = 0;  // 0: use the default budget
  std::uint64_t seed = 1;
  std::uint64_t trials = 10000;
  unsigned horizon = 1;
  std::vector<std::string> targets;
  std::string out_dir = "out";
  bool cache = true;
  unsigned shards = 0;  // 0: let the runtime decide

  // The manifest's view of the config, in key order.
  std::map<std::string, std::string> as_map() const;
};

ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Throws std::invalid_argument with a field-level message on a bad value.
void validate_config(const ExperimentConfig& cfg);

}  // namespace toe
