#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core/circuit.hpp"

namespace vqb {

/// Undirected connectivity graph over physical qubits.
struct CouplingMap {
  int n_qubits = 0;
  std::set<std::pair<int, int>> edges;  // stored with first < second

  bool has_edge(int a, int b) const;
  bool connected() const;
};

/// A hardware target: native basis gates plus connectivity. An absent
/// coupling map means all-to-all connectivity.
///
/// Target file format ('#' comments):
///   name <label>
///   qubits <n>
///   basis <gate> [<gate> ...]
///   all_to_all            # or one "edge <a> <b>" line per coupled pair
struct TranspileTarget {
  std::string name;
  int n_qubits = 0;
  std::set<GateKind> basis;
  std::optional<CouplingMap> coupling;  // nullopt = all-to-all
};

TranspileTarget parse_target(const std::string& text);
TranspileTarget load_target_file(const std::string& path);

}  // namespace vqb
