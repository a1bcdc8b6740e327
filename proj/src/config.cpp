#include "toelab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "toelab/bits.hpp"

namespace toe {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": not a nonnegative integer: " + value);
  }
}

}  // namespace

std::map<std::string, std::string> ExperimentConfig::as_map() const {
  std::string joined;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (i) joined += ',';
    joined += targets[i];
  }
  return {
      {"subcommand", subcommand},
      {"max_len", std::to_string(max_len)},
      {"steps", std::to_string(steps)},
      {"max_output_bits", std::to_string(max_output_bits)},
      {"seed", std::to_string(seed)},
      {"trials", std::to_string(trials)},
      {"horizon", std::to_string(horizon)},
      {"targets", joined},
      {"out", out_dir},
      {"cache", cache ? "1" : "0"},
      {"shards", std::to_string(shards)},
  };
}

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected key=value");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key == "subcommand") {
      cfg.subcommand = value;
    } else if (key == "max_len") {
      cfg.max_len = static_cast<unsigned>(parse_u64(key, value));
    } else if (key == "steps") {
      cfg.steps = parse_u64(key, value);
    } else if (key == "max_output_bits") {
      cfg.max_output_bits = parse_u64(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, value);
    } else if (key == "trials") {
      cfg.trials = parse_u64(key, value);
    } else if (key == "horizon") {
      cfg.horizon = static_cast<unsigned>(parse_u64(key, value));
    } else if (key == "targets") {
      cfg.targets.clear();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        cfg.targets.push_back(item);
      }
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "cache") {
      if (value != "0" && value != "1")
        throw std::invalid_argument("cache: expected 0 or 1, got " + value);
      cfg.cache = value == "1";
    } else if (key == "shards") {
      cfg.shards = static_cast<unsigned>(parse_u64(key, value));
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open config: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.max_len > kMaxLenCap)
    throw std::invalid_argument("max_len: " + std::to_string(cfg.max_len) +
                                " exceeds the safety cap of " +
                                std::to_string(kMaxLenCap));
  if (cfg.horizon > 20)
    throw std::invalid_argument("horizon: caps at 20");
  for (const std::string& t : cfg.targets)
    bits_from_string(t);  // throws with the offending string
}

}  // namespace toe
