#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace vqb {

/// One weighted Pauli string. Character i of `paulis` acts on qubit i,
/// so "ZIII" is Z on qubit 0. Coefficients are in Hartree.
struct PauliTerm {
  double coefficient = 0.0;
  std::string paulis;

  bool is_identity() const {
    return paulis.find_first_not_of('I') == std::string::npos;
  }
};

/// A Hermitian observable as a weighted sum of Pauli strings.
/// Invariant: all terms have length n_qubits and distinct strings.
struct Observable {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;
};

/// Parses the plain-text observable format: one `<paulis> <coefficient>`
/// per line, '#' comments. Duplicate strings are merged by summing their
/// coefficients. Throws ParseError naming the offending line.
Observable parse_observable(const std::string& text);

/// Inverse of parse_observable (modulo comments and merged duplicates).
std::string serialize_observable(const Observable& obs);

/// Dense matrix of the observable under the qubit-0-is-LSB convention.
/// Limited to n_qubits <= 12.
Eigen::MatrixXcd observable_matrix(const Observable& obs);

/// Minimum eigenvalue of the observable's dense matrix.
double exact_ground_energy(const Observable& obs);

}  // namespace vqb
