#include "transpile/target.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

#include "core/errors.hpp"

namespace vqb {

bool CouplingMap::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return edges.count({a, b}) > 0;
}

bool CouplingMap::connected() const {
  if (n_qubits <= 1) return true;
  std::vector<bool> seen(std::size_t(n_qubits), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (const auto& [a, b] : edges) {
      int v = -1;
      if (a == u) v = b;
      else if (b == u) v = a;
      if (v >= 0 && !seen[std::size_t(v)]) {
        seen[std::size_t(v)] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n_qubits;
}

namespace {

GateKind kind_from_name(const std::string& s, int lineno) {
  for (GateKind k : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::SX,
                     GateKind::X, GateKind::CX, GateKind::RXX, GateKind::SWAP})
    if (s == gate_name(k)) return k;
  throw ParseError("target line " + std::to_string(lineno) +
                   ": unknown gate kind '" + s + "'");
}

}  // namespace

TranspileTarget parse_target(const std::string& text) {
  TranspileTarget tgt;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool all_to_all = false;
  std::set<std::pair<int, int>> edges;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("target line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "name") {
      if (!(ls >> tgt.name)) fail("missing target name");
    } else if (head == "qubits") {
      if (!(ls >> tgt.n_qubits) || tgt.n_qubits < 1) fail("bad qubit count");
    } else if (head == "basis") {
      std::string g;
      while (ls >> g) tgt.basis.insert(kind_from_name(g, lineno));
      if (tgt.basis.empty()) fail("empty basis list");
      continue;  // basis consumed the rest of the line
    } else if (head == "all_to_all") {
      all_to_all = true;
    } else if (head == "edge") {
      int a, b;
      if (!(ls >> a >> b)) fail("edge needs two qubit indices");
      if (a == b) fail("self-edge");
      if (a > b) std::swap(a, b);
      edges.insert({a, b});
    } else {
      fail("unknown key '" + head + "'");
    }
    std::string trailing;
    if (ls >> trailing) fail("unexpected trailing token '" + trailing + "'");
  }
  if (tgt.name.empty()) throw ParseError("target file missing 'name'");
  if (tgt.n_qubits == 0) throw ParseError("target file missing 'qubits'");
  if (tgt.basis.empty()) throw ParseError("target file missing 'basis'");
  bool has_2q = false;
  for (GateKind k : tgt.basis)
    if (gate_arity(k) == 2) has_2q = true;
  if (!has_2q) throw ParseError("target basis has no two-qubit gate");
  if (all_to_all && !edges.empty())
    throw ParseError("target cannot be both all_to_all and edge-listed");
  if (!all_to_all) {
    if (edges.empty())
      throw ParseError("target needs either all_to_all or an edge list");
    CouplingMap cm;
    cm.n_qubits = tgt.n_qubits;
    for (const auto& [a, b] : edges) {
      if (b >= tgt.n_qubits)
        throw ParseError("edge qubit index out of range");
      cm.edges.insert({a, b});
    }
    if (!cm.connected())
      throw ParseError("target coupling map is not connected");
    tgt.coupling = std::move(cm);
  }
  return tgt;
}

TranspileTarget load_target_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open target file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_target(buf.str());
}

}  // namespace vqb
