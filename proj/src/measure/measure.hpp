#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/circuit.hpp"
#include "core/pauli.hpp"
#include "noise/model.hpp"

namespace vqb {

/// Measurement outcomes keyed by bitstring. Bitstrings print qubit n-1
/// first: character n-1-q of the key is qubit q's bit.
using Counts = std::map<std::string, std::uint64_t>;

std::string index_to_bits(std::size_t index, int n_qubits);
std::size_t bits_to_index(const std::string& bits);

/// Terms measurable in one per-qubit basis setting. `basis[q]` is one of
/// 'Z','X','Y' (indexed like Pauli strings: character q is qubit q);
/// qubits no member term touches default to 'Z'.
struct MeasurementGroup {
  std::string basis;
  std::vector<PauliTerm> terms;
};

/// Greedy qubit-wise-commuting grouping in term order: each term joins the
/// first group whose basis it fits (identity characters are wildcards),
/// else opens a new group. Every term lands in exactly one group; a pure
/// identity term fits the first group.
std::vector<MeasurementGroup> group_terms(const Observable& obs);

/// Rotations taking the group's basis to Z (X via RY(-pi/2), Y via
/// RX(pi/2)), followed by one Measure over all qubits.
Circuit basis_rotation(const MeasurementGroup& group, int n_qubits);

/// Parity-weighted average of the counts over the term's support;
/// counts must come from a basis setting compatible with the term.
double term_expectation(const Counts& counts, const PauliTerm& term);
double term_expectation(const std::vector<double>& distribution,
                        const PauliTerm& term);

/// Sum of coefficient x expectation over every group member; identity
/// members contribute their coefficient directly. Throws ContractError if
/// the groups do not cover every term of the observable.
double energy_from_counts(
    const std::vector<std::pair<MeasurementGroup, Counts>>& group_counts,
    const Observable& obs);

/// Full 2^n column-stochastic confusion matrix as the tensor product of
/// per-qubit 2x2 matrices; physical[q] names the hardware qubit whose
/// readout errors apply to logical qubit q.
Eigen::MatrixXd build_confusion(const NoiseModel& model,
                                const std::vector<int>& physical);
Eigen::MatrixXd build_confusion(const NoiseModel& model, int n_qubits);

/// Least-squares solve of confusion x p = frequencies, then clip negatives
/// and renormalize. Throws ConfigError when the matrix is near singular
/// (e.g. flip probability 1/2).
std::vector<double> mitigate(const std::vector<double>& frequencies,
                             const Eigen::MatrixXd& confusion);
std::vector<double> mitigate(const Counts& counts,
                             const Eigen::MatrixXd& confusion);

}  // namespace vqb
