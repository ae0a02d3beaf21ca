#pragma once

#include <cstdint>
#include <string>

#include "opt/optimizers.hpp"

namespace vqb {

/// One experiment: which observable/target/noise profile to run, which
/// optimizer with which hyperparameters, and the sampling budget.
///
/// File format: one `<key> <value>` per line, '#' comments. Keys match the
/// field names below (paths are resolved relative to the caller's cwd).
struct ExperimentConfig {
  std::string name = "run";
  std::string observable;           // path, required
  std::string target;               // path, required
  std::string calibration;          // path; empty = noiseless
  std::string optimizer = "nft";    // nft | spsa | nelder-mead
  int shots = 200;
  int iterations = 15;
  int seeds = 9;
  double init_low = -3.14159265358979323846;
  double init_high = 3.14159265358979323846;
  bool mitigate = false;
  bool thermal = false;
  bool exact = false;               // expectation values instead of sampling
  std::uint64_t master_seed = 11;
  int nft_reset_interval = 4;       // one fresh cost per sweep of 4 params
  SpsaGains spsa;
  NelderMeadCoefficients nelder_mead;

  void validate() const;  // throws ConfigError
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

/// Canonical one-line-per-field rendering (stable key order); also the
/// basis of the config hash embedded in reports.
std::string serialize_experiment_config(const ExperimentConfig& config);

/// FNV-1a hash of the serialized config, hex-encoded.
std::string config_hash(const ExperimentConfig& config);

}  // namespace vqb
