#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rht/simulator.hpp"

namespace rht {

/// Missing, ill-typed or unknown keys in an experiment config.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ParsedConfig {
  ExperimentConfig experiment;
  /// FNV-1a of the key-sorted JSON, independent of key order and whitespace.
  std::string digest;
};

/// Parses the flat JSON experiment format (see README). Unknown keys are errors.
ParsedConfig parse_config_text(std::string_view text);
ParsedConfig parse_config(const std::filesystem::path& path);

/// Sets the root seed and re-places the malicious robots with the placement
/// stream of that seed, keeping their count.
void set_seed(ExperimentConfig& config, std::uint64_t seed);
void set_seed(ExperimentConfig& config, std::uint64_t seed, std::size_t malicious);

/// Required top-level keys, in documentation order.
const std::vector<std::string>& required_config_keys();

}  // namespace rht
