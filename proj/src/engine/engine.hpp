#pragma once

#include <string>
#include <vector>

#include "core/pauli.hpp"
#include "engine/config.hpp"

namespace vqb {

struct IterationRecord {
  int iteration = 0;            // 1-based
  double energy_ha = 0.0;
  long evaluations = 0;         // cumulative
  double quantum_time_s = 0.0;  // cumulative
  std::vector<double> parameters;
};

struct RunRecord {
  int seed_id = 0;
  std::vector<IterationRecord> iterations;
  double final_energy = 0.0;
  double minimum_energy = 0.0;
  long evaluations = 0;
  double quantum_time_s = 0.0;
  std::string config_hash;
};

/// Full experiment: one optimizer run per seed against the configured
/// target and noise profile. Seeds run in parallel; each owns a derived
/// RNG stream, so results are independent of scheduling.
std::vector<RunRecord> run_vqe(const ExperimentConfig& config);

/// As above but with the observable supplied directly (distance scan).
std::vector<RunRecord> run_vqe(const ExperimentConfig& config,
                               const Observable& obs);

/// Cross-seed statistics. Both sigma semantics are reported: over per-seed
/// final energies and over the pooled last four iterations of every seed.
/// exclude_worst drops that many seeds, worst |final - e_fci| first.
struct AggregateSummary {
  int seeds_used = 0;
  std::vector<int> excluded_seeds;
  double e_fci = 0.0;
  double mean_final = 0.0, std_final = 0.0;
  double mean_minimum = 0.0, std_minimum = 0.0;
  double mean_final_error = 0.0;
  double mean_last4_error = 0.0, std_last4 = 0.0;
  double mean_quantum_time_s = 0.0;
};

AggregateSummary aggregate(const std::vector<RunRecord>& records, double e_fci,
                           int exclude_worst = 0);

struct ScanPoint {
  double distance_angstrom = 0.0;
  double vqe_minimum = 0.0;  // min energy over all seeds and iterations
  double e_fci = 0.0;
};

std::vector<ScanPoint> distance_scan(
    const std::vector<std::pair<double, Observable>>& table,
    const ExperimentConfig& config);

/// Record persistence: runs/<name>/seed<k>.record (one JSON object per
/// line: a config line, one line per iteration, a summary line) plus a
/// human-readable `summary` file.
void write_records(const std::string& directory,
                   const std::vector<RunRecord>& records,
                   const ExperimentConfig& config,
                   const AggregateSummary& summary);
std::vector<RunRecord> read_records(const std::string& directory);

std::string serialize_record(const RunRecord& record,
                             const ExperimentConfig& config);
RunRecord parse_record(const std::string& text);

}  // namespace vqb
