#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kpp/config.hpp"
#include "kpp/verify.hpp"

namespace kpp {

/// Every CSV artifact starts with this schema comment line.
inline constexpr const char* kCsvSchemaHeader = "# kpp-front schema v1";

/// FNV-1a over the bytes of `data`; used for manifest content hashes.
std::uint64_t content_hash(const std::string& data);

/// Collects artifacts under one output directory and records their content
/// hashes; finalize() writes manifest.json listing every file written.
class ArtifactWriter {
public:
  explicit ArtifactWriter(std::string out_dir);

  /// Writes `content` to out_dir/name (creating directories) and records
  /// its hash. Returns the full path.
  std::string write(const std::string& name, const std::string& content);

  /// Writes manifest.json with the experiment tag, metadata, and the
  /// name -> hash table of everything written so far.
  void finalize(const json& metadata);

  const std::string& dir() const { return dir_; }
  const std::vector<std::pair<std::string, std::uint64_t>>& entries() const {
    return entries_;
  }

private:
  std::string dir_;
  std::vector<std::pair<std::string, std::uint64_t>> entries_;
};

json report_to_json(const VerificationReport& report);

/// Exit codes shared by run_experiment and the CLI.
inline constexpr int kExitPass = 0;
inline constexpr int kExitSolverError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerificationFailure = 3;

/// Runs the experiment named by cfg.experiment (simulate, hom_levelsets,
/// mean_levelsets, flatness, bmt_rate, ratio_limit) end to end and writes
/// its artifacts (manifest.json, CSVs, report JSON, SVG plots) under
/// cfg.out_dir. Returns an exit code; never throws.
int run_experiment(const ExperimentConfig& cfg, bool quiet = false);

}  // namespace kpp
