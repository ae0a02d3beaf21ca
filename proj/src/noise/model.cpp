#include "noise/model.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace vqb {

NoiseModel NoiseModel::build(CalibrationData cal, bool include_thermal) {
  return NoiseModel(std::move(cal), include_thermal, false);
}

NoiseModel NoiseModel::none() {
  return NoiseModel(CalibrationData{}, false, true);
}

std::vector<std::pair<KrausChannel, std::vector<int>>> NoiseModel::channels_for(
    const Gate& gate) const {
  std::vector<std::pair<KrausChannel, std::vector<int>>> out;
  if (trivial_ || gate.kind == GateKind::Measure) return out;

  double p, duration;
  if (gate.qubits.size() == 1) {
    p = cal_.one_qubit_error(gate.qubits[0]);
    duration = thermal_ ? cal_.one_qubit_duration() : 0.0;
  } else {
    p = cal_.two_qubit_error(gate.qubits[0], gate.qubits[1]);
    duration = thermal_ ? cal_.two_qubit_duration(gate.qubits[0], gate.qubits[1])
                        : 0.0;
  }
  if (p > 0.0)
    out.emplace_back(depolarizing_channel(p, int(gate.qubits.size())),
                     gate.qubits);
  if (thermal_) {
    for (int q : gate.qubits) {
      const double t1 = cal_.t1_of(q);
      if (std::isfinite(t1) && duration > 0.0) {
        const double gamma = 1.0 - std::exp(-duration / t1);
        if (gamma > 0.0)
          out.emplace_back(amplitude_damping_channel(gamma),
                           std::vector<int>{q});
      }
      const double t2 = cal_.t2_of(q);
      if (std::isfinite(t2) && duration > 0.0) {
        // pure dephasing rate beyond the T1 contribution
        const double inv_tphi =
            1.0 / t2 - (std::isfinite(t1) ? 1.0 / (2.0 * t1) : 0.0);
        if (inv_tphi > 0.0) {
          const double pz = 0.5 * (1.0 - std::exp(-duration * inv_tphi));
          if (pz > 0.0)
            out.emplace_back(phase_flip_channel(pz), std::vector<int>{q});
        }
      }
    }
  }
  return out;
}

Eigen::Matrix2d NoiseModel::readout_confusion(int qubit) const {
  const double p01 = trivial_ ? 0.0 : cal_.p01(qubit);
  const double p10 = trivial_ ? 0.0 : cal_.p10(qubit);
  Eigen::Matrix2d m;
  m << 1.0 - p01, p10, p01, 1.0 - p10;
  return m;
}

DensityMatrix run_density(const Circuit& circuit, const NoiseModel& model) {
  if (!circuit.bound())
    throw ContractError("run_density: circuit has unbound parameters");
  DensityMatrix rho(circuit.n_qubits);
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::Measure) continue;
    rho.apply(g);
    for (const auto& [channel, qubits] : model.channels_for(g))
      rho.apply_channel(channel, qubits);
  }
  return rho;
}

}  // namespace vqb
