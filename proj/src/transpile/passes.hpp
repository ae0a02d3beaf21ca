#pragma once

#include <map>
#include <set>
#include <vector>

#include "core/circuit.hpp"
#include "transpile/target.hpp"

namespace vqb {

/// Post-transpilation metrics plus the physical qubit layout.
struct TranspileReport {
  int depth = 0;
  int total_gates = 0;
  int two_qubit_gates = 0;
  std::map<GateKind, int> histogram;
  std::vector<int> initial_layout;  // physical -> logical, before routing
  std::vector<int> final_layout;    // physical -> logical, after routing
};

/// CX as one RXX(pi/2) plus single-qubit rotations (equal up to phase).
std::vector<Gate> decompose_cx_to_rxx(int control, int target);

/// Rewrites every gate into the basis (SWAP and Measure pass through;
/// SWAP is eliminated later by the peephole passes).
Circuit decompose(const Circuit& circuit, const std::set<GateKind>& basis);

/// Greedy shortest-path SWAP insertion onto the coupling map, identity
/// initial layout. Returns the routed circuit (on physical qubits) and
/// the final physical->logical layout.
std::pair<Circuit, std::vector<int>> route(const Circuit& circuit,
                                           const CouplingMap& coupling);

/// Peephole fixpoint: SWAP expansion (orientation chosen so an adjacent
/// same-pair CX cancels), CX-CX cancellation, and 1-qubit run merging
/// with basis resynthesis. Never increases the two-qubit gate count.
Circuit optimize_passes(const Circuit& circuit, const std::set<GateKind>& basis);

/// decompose -> route -> peephole fixpoint; the returned circuit uses only
/// basis kinds on coupled pairs and equals the input up to global phase
/// and the reported final layout permutation.
std::pair<Circuit, TranspileReport> transpile(const Circuit& circuit,
                                              const TranspileTarget& target);

/// 2^n x 2^n permutation: |b> -> |b'> with physical bit p of b' taken from
/// logical bit layout[p] of b. Used to verify routed-circuit equivalence.
Eigen::MatrixXcd layout_permutation_matrix(const std::vector<int>& layout);

}  // namespace vqb
