#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/circuit.hpp"
#include "core/pauli.hpp"
#include "sim/channels.hpp"

namespace vqb {

/// Mixed-state simulator over an explicit 2^n x 2^n density matrix.
/// Same bit convention as Statevector: qubit 0 is the LSB.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }

  /// Conjugates by the gate's unitary using per-axis index arithmetic
  /// (no full 2^n matrix is formed).
  void apply(const Gate& gate);

  /// rho -> sum_k K rho K† with the channel acting on the given qubits
  /// (one or two, matching the channel's width).
  void apply_channel(const KrausChannel& channel, const std::vector<int>& qubits);

  double expectation(const Observable& obs) const;
  std::vector<double> probabilities() const;
  double trace() const;

 private:
  void apply_operator(const Eigen::MatrixXcd& op, const std::vector<int>& qubits,
                      Eigen::MatrixXcd& target) const;

  int n_qubits_;
  Eigen::MatrixXcd rho_;
};

}  // namespace vqb
