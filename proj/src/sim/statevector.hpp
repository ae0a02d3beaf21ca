#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "core/circuit.hpp"
#include "core/pauli.hpp"

namespace vqb {

/// Pure-state simulator. Amplitudes are indexed with qubit 0 as the
/// least-significant bit of the basis index.
class Statevector {
 public:
  explicit Statevector(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

  /// Applies one gate in place. Measure gates are rejected here; sampling
  /// goes through sample_counts().
  void apply(const Gate& gate);

  /// Applies every gate of a bound circuit in order.
  void run(const Circuit& circuit);

  /// <psi|O|psi>; O must match the register width.
  double expectation(const Observable& obs) const;

  /// Probability of each basis state (|amp|^2).
  std::vector<double> probabilities() const;

  double norm() const;

 private:
  int n_qubits_;
  std::vector<std::complex<double>> amp_;
};

/// Draws `shots` basis states from a probability vector by inverse CDF.
/// Consumes exactly one rng draw per shot; returns per-index counts.
std::vector<std::uint64_t> sample_counts(const std::vector<double>& probs,
                                         int shots, std::mt19937_64& rng);

}  // namespace vqb
