#pragma once

#include <Eigen/Dense>
#include <vector>

namespace vqb {

/// A completely positive trace-preserving map as Kraus operators. All
/// operators share one dimension (2 for 1-qubit, 4 for 2-qubit channels).
struct KrausChannel {
  std::vector<Eigen::MatrixXcd> ops;

  int n_qubits() const;
  /// max-norm distance of sum K†K from identity (0 for a CPTP map).
  double trace_preservation_defect() const;
};

/// Mixes the input with the maximally mixed state on its support:
/// rho -> (1-p) rho + p I/2^k. Equivalently a uniform mixture over all
/// non-identity Paulis with total weight p (4^k-1)/4^k.
KrausChannel depolarizing_channel(double p, int n_qubits);

/// Amplitude damping toward |0> with decay probability gamma.
KrausChannel amplitude_damping_channel(double gamma);

/// Phase flip: rho -> (1-p) rho + p Z rho Z; shrinks coherences by 1-2p.
KrausChannel phase_flip_channel(double p);

}  // namespace vqb
