#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfi/experiments.hpp"

namespace qfi::report {

inline constexpr const char* kToolName = "qfi-lab";
inline constexpr const char* kToolVersion = "0.1.0";

// Raised for anything that should exit with the config-error code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadedConfig {
  nlohmann::json raw;
  std::string canonical;  // sorted-key dump, the hashing input
  std::string hash;       // "fnv1a64:<hex>"
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_tag(std::string_view canonical_text);

// Parse failures carry a line/column diagnostic in the message.
LoadedConfig load_config(const std::filesystem::path& path);
LoadedConfig parse_config_text(const std::string& text,
                               const std::string& origin);

ExperimentConfig experiment_from_config(const nlohmann::json& cfg,
                                        const std::string& scenario);

// 17 significant digits, '.' decimal separator, locale independent.
std::string format_double(double v);

std::string csv_from_dataset(const CurveDataset& ds);

struct OutputFile {
  std::string file;
  std::vector<std::string> columns;
  std::size_t rows = 0;
};

struct RunManifest {
  std::string scenario;
  std::string config_hash;
  nlohmann::json parameters;
  std::vector<OutputFile> outputs;
};

nlohmann::json manifest_json(const RunManifest& m);

nlohmann::json claims_json(const std::vector<ClaimCheck>& claims);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qfi::report
