#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace vqb {

enum class GateKind { RX, RY, RZ, SX, X, CX, RXX, SWAP, Measure };

const char* gate_name(GateKind kind);
bool is_rotation(GateKind kind);
int gate_arity(GateKind kind);

/// One gate application. Rotation gates carry an angle in radians; a gate
/// with slot >= 0 is parameterized and its angle is filled in by bind().
struct Gate {
  GateKind kind;
  std::vector<int> qubits;
  double angle = 0.0;
  int slot = -1;

  bool parameterized() const { return slot >= 0; }
};

/// Ordered gate list over a fixed qubit count.
struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  /// Number of symbolic parameter slots (0 for a fully bound circuit).
  int parameter_count() const;
  bool bound() const { return parameter_count() == 0; }
  bool has_measure() const;

  void add(GateKind kind, std::vector<int> qubits, double angle = 0.0,
           int slot = -1);
};

/// Replaces every parameterized angle with values[slot]; the result is
/// fully concrete. Throws ContractError on a length mismatch.
Circuit bind(const Circuit& circuit, std::span<const double> values);

/// RY rotation on every qubit followed by a circular CNOT entangler
/// (0->1, ..., n-2->n-1, n-1->0); n parameter slots.
Circuit build_ry_cnot_ansatz(int n_qubits);

/// Matrix of a single gate on its own qubits (2x2 or 4x4; two-qubit
/// matrices are indexed with the first listed qubit as the low bit).
Eigen::MatrixXcd gate_matrix(GateKind kind, double angle);

/// Full 2^n x 2^n product of the circuit's gate unitaries, qubit 0 as the
/// least-significant index bit. Verification path only; n_qubits <= 10.
Eigen::MatrixXcd circuit_unitary(const Circuit& circuit);

/// max |A - e^{i phi} B| over entries, with phi chosen to align the two;
/// zero iff the matrices agree up to global phase.
double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Longest chain of gates sharing qubits (greedy layering); Measure
/// gates are excluded.
int depth(const Circuit& circuit);

/// Gate-kind histogram, Measure excluded.
std::map<GateKind, int> gate_counts(const Circuit& circuit);
int two_qubit_gate_count(const Circuit& circuit);

}  // namespace vqb
