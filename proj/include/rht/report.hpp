#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "rht/simulator.hpp"

namespace rht {

inline constexpr const char* kToolVersion = "0.1.0";

class OutputError : public std::runtime_error {
 public:
  explicit OutputError(const std::string& what) : std::runtime_error(what) {}
};

/// CSV with columns method, malicious_fraction, trials, error_rate, fa_rate,
/// md_rate, seed. Rows sorted by method name, then fraction; 6 significant digits.
std::string format_csv(const std::vector<ExperimentResult>& results);
void emit_csv(const std::vector<ExperimentResult>& results, const std::filesystem::path& path);

/// Self-contained SVG: percent error vs malicious fraction, one polyline per method.
std::string format_plot(const std::vector<ExperimentResult>& results);
void emit_plot(const std::vector<ExperimentResult>& results, const std::filesystem::path& path);

/// Fixed-width percent-error table for the terminal.
std::string format_table(const std::vector<ExperimentResult>& results);

struct RunManifest {
  std::string config_digest;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::string tool_version;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
};

std::string format_manifest(const RunManifest& manifest);
void emit_manifest(const RunManifest& manifest, const std::filesystem::path& path);

/// UTC timestamp in ISO 8601.
std::string utc_timestamp();

}  // namespace rht
