#pragma once

#include <Eigen/Dense>
#include <vector>

#include "noise/calibration.hpp"
#include "sim/density.hpp"

namespace vqb {

/// Executable form of a calibration snapshot: which Kraus channels follow
/// each gate, plus per-qubit readout confusion. Immutable after build.
class NoiseModel {
 public:
  /// Error rates become depolarizing probabilities on the gate's support.
  /// With include_thermal, amplitude damping (1 - exp(-t/T1)) and pure
  /// dephasing derived from T2 are composed after the depolarizing channel
  /// on each participating qubit, using the gate's calibrated duration.
  static NoiseModel build(CalibrationData cal, bool include_thermal);

  /// A model that applies no channels at all (pure evolution).
  static NoiseModel none();

  /// Channels to apply after the given gate, each with its qubit support.
  std::vector<std::pair<KrausChannel, std::vector<int>>> channels_for(
      const Gate& gate) const;

  /// Column-stochastic 2x2 confusion matrix for one qubit:
  /// column j = outcome distribution when |j> was prepared.
  Eigen::Matrix2d readout_confusion(int qubit) const;

  const CalibrationData& calibration() const { return cal_; }
  bool thermal() const { return thermal_; }

 private:
  NoiseModel(CalibrationData cal, bool thermal, bool trivial)
      : cal_(std::move(cal)), thermal_(thermal), trivial_(trivial) {}

  CalibrationData cal_;
  bool thermal_ = false;
  bool trivial_ = false;
};

/// Applies a bound circuit gate by gate, following each gate with the
/// model's channels. Measure gates are skipped (readout error is applied
/// by the measurement layer, not here).
DensityMatrix run_density(const Circuit& circuit, const NoiseModel& model);

}  // namespace vqb
