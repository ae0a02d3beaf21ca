#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/circuit.hpp"

namespace vqb {

/// Hardware calibration snapshot: gate error rates, durations, coherence
/// times, and readout flip probabilities. All times are in seconds.
///
/// File format (nested key-value, '#' comments):
///   [single_qubit]
///     error <qubit>|default <probability>
///   [two_qubit]
///     error <q1> <q2>|default <probability>        # directed pair
///   [readout]
///     p01 <qubit>|default <prob>    # p(read 1 | prepared 0)
///     p10 <qubit>|default <prob>    # p(read 0 | prepared 1)
///   [coherence]
///     t1 <qubit>|default <seconds>
///     t2 <qubit>|default <seconds>
///   [durations]
///     1q <seconds>
///     2q <q1> <q2>|default <seconds>
///     measure <seconds>
///
/// Lookup falls back per-qubit value -> default; directed pairs fall back
/// to the reverse direction before the default.
struct CalibrationData {
  std::map<int, double> error_1q;
  std::optional<double> error_1q_default;
  std::map<std::pair<int, int>, double> error_2q;
  std::optional<double> error_2q_default;

  std::map<int, double> readout_p01, readout_p10;
  std::optional<double> readout_p01_default, readout_p10_default;

  std::map<int, double> t1, t2;
  std::optional<double> t1_default, t2_default;

  std::optional<double> duration_1q;
  std::map<std::pair<int, int>, double> duration_2q;
  std::optional<double> duration_2q_default;
  std::optional<double> duration_measure;

  /// Warnings gathered at load time (e.g. T2 > 2*T1).
  std::vector<std::string> warnings;

  double one_qubit_error(int q) const;       // default 0
  double two_qubit_error(int a, int b) const;  // default 0
  double p01(int q) const;                   // default 0
  double p10(int q) const;                   // default 0
  /// Coherence lookups return +inf when absent (no relaxation).
  double t1_of(int q) const;
  double t2_of(int q) const;

  double one_qubit_duration() const;           // throws ConfigError if absent
  double two_qubit_duration(int a, int b) const;
  double measure_duration() const;             // default 0
};

CalibrationData parse_calibration(const std::string& text);
CalibrationData load_calibration_file(const std::string& path);

/// As-soon-as-possible schedule: each gate starts when all its qubits are
/// free and occupies them for its calibrated duration; returns the latest
/// finish time in seconds.
double estimate_duration(const Circuit& circuit, const CalibrationData& cal);

}  // namespace vqb
