#include "core/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "core/errors.hpp"

namespace vqb {

namespace {
using cd = std::complex<double>;
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::SX: return "sx";
    case GateKind::X: return "x";
    case GateKind::CX: return "cx";
    case GateKind::RXX: return "rxx";
    case GateKind::SWAP: return "swap";
    case GateKind::Measure: return "measure";
  }
  return "?";
}

bool is_rotation(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
         kind == GateKind::RXX;
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::CX:
    case GateKind::RXX:
    case GateKind::SWAP:
      return 2;
    case GateKind::Measure:
      return -1;  // acts on all listed qubits
    default:
      return 1;
  }
}

int Circuit::parameter_count() const {
  int max_slot = -1;
  for (const auto& g : gates) max_slot = std::max(max_slot, g.slot);
  return max_slot + 1;
}

bool Circuit::has_measure() const {
  return std::any_of(gates.begin(), gates.end(),
                     [](const Gate& g) { return g.kind == GateKind::Measure; });
}

void Circuit::add(GateKind kind, std::vector<int> qubits, double angle,
                  int slot) {
  int arity = gate_arity(kind);
  if (arity > 0 && static_cast<int>(qubits.size()) != arity)
    throw ContractError(std::string(gate_name(kind)) + " expects " +
                        std::to_string(arity) + " qubits");
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= n_qubits)
      throw ContractError("qubit index out of range for " +
                          std::string(gate_name(kind)));
    for (std::size_t j = i + 1; j < qubits.size(); ++j)
      if (qubits[i] == qubits[j])
        throw ContractError("repeated qubit index in " +
                            std::string(gate_name(kind)));
  }
  if (slot >= 0 && !is_rotation(kind))
    throw ContractError("only rotation gates can be parameterized");
  gates.push_back({kind, std::move(qubits), angle, slot});
}

Circuit bind(const Circuit& circuit, std::span<const double> values) {
  if (static_cast<int>(values.size()) != circuit.parameter_count())
    throw ContractError("bind: expected " +
                        std::to_string(circuit.parameter_count()) +
                        " parameter values, got " +
                        std::to_string(values.size()));
  Circuit out = circuit;
  for (auto& g : out.gates) {
    if (g.slot >= 0) {
      g.angle = values[static_cast<std::size_t>(g.slot)];
      g.slot = -1;
    }
  }
  return out;
}

Circuit build_ry_cnot_ansatz(int n_qubits) {
  if (n_qubits < 2)
    throw ContractError("ansatz requires at least 2 qubits, got " +
                        std::to_string(n_qubits));
  Circuit c;
  c.n_qubits = n_qubits;
  for (int q = 0; q < n_qubits; ++q) c.add(GateKind::RY, {q}, 0.0, q);
  for (int q = 0; q < n_qubits; ++q)
    c.add(GateKind::CX, {q, (q + 1) % n_qubits});
  return c;
}

Eigen::MatrixXcd gate_matrix(GateKind kind, double angle) {
  const double h = angle / 2.0;
  const cd i(0.0, 1.0);
  switch (kind) {
    case GateKind::RX: {
      Eigen::Matrix2cd m;
      m << std::cos(h), -i * std::sin(h), -i * std::sin(h), std::cos(h);
      return m;
    }
    case GateKind::RY: {
      Eigen::Matrix2cd m;
      m << std::cos(h), -std::sin(h), std::sin(h), std::cos(h);
      return m;
    }
    case GateKind::RZ: {
      Eigen::Matrix2cd m;
      m << std::exp(-i * h), 0, 0, std::exp(i * h);
      return m;
    }
    case GateKind::SX: {
      Eigen::Matrix2cd m;
      m << cd(0.5, 0.5), cd(0.5, -0.5), cd(0.5, -0.5), cd(0.5, 0.5);
      return m;
    }
    case GateKind::X: {
      Eigen::Matrix2cd m;
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::CX: {
      // control = first listed qubit = low index bit
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(3, 1) = 1;
      m(2, 2) = 1;
      m(1, 3) = 1;
      return m;
    }
    case GateKind::RXX: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity() * std::cos(h);
      const cd s = -i * std::sin(h);
      m(3, 0) = s;
      m(2, 1) = s;
      m(1, 2) = s;
      m(0, 3) = s;
      return m;
    }
    case GateKind::SWAP: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(2, 1) = 1;
      m(1, 2) = 1;
      m(3, 3) = 1;
      return m;
    }
    case GateKind::Measure:
      break;
  }
  throw ContractError("no matrix for measure gate");
}

Eigen::MatrixXcd circuit_unitary(const Circuit& circuit) {
  if (!circuit.bound())
    throw ContractError("circuit_unitary: circuit has unbound parameters");
  if (circuit.has_measure())
    throw ContractError("circuit_unitary: circuit contains measure gates");
  if (circuit.n_qubits > 10)
    throw ContractError("circuit_unitary limited to 10 qubits");
  const Eigen::Index dim = Eigen::Index(1) << circuit.n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : circuit.gates) {
    Eigen::MatrixXcd gm = gate_matrix(g.kind, g.angle);
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    if (g.qubits.size() == 1) {
      const Eigen::Index q = g.qubits[0];
      for (Eigen::Index b = 0; b < dim; ++b) {
        const Eigen::Index bit = (b >> q) & 1;
        for (Eigen::Index r = 0; r < 2; ++r) {
          const Eigen::Index nb = (b & ~(Eigen::Index(1) << q)) | (r << q);
          full(nb, b) = gm(r, bit);
        }
      }
    } else {
      const Eigen::Index q0 = g.qubits[0], q1 = g.qubits[1];
      for (Eigen::Index b = 0; b < dim; ++b) {
        const Eigen::Index col = ((b >> q0) & 1) | (((b >> q1) & 1) << 1);
        const Eigen::Index base =
            b & ~((Eigen::Index(1) << q0) | (Eigen::Index(1) << q1));
        for (Eigen::Index r = 0; r < 4; ++r) {
          const Eigen::Index nb = base | ((r & 1) << q0) | (((r >> 1) & 1) << q1);
          full(nb, b) = gm(r, col);
        }
      }
    }
    u = full * u;
  }
  return u;
}

double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const cd tr = (a.adjoint() * b).trace();
  if (std::abs(tr) < 1e-12) return 2.0;
  const cd phase = tr / std::abs(tr);
  return (b - phase * a).cwiseAbs().maxCoeff();
}

int depth(const Circuit& circuit) {
  std::vector<int> level(static_cast<std::size_t>(circuit.n_qubits), 0);
  int d = 0;
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::Measure) continue;
    int l = 0;
    for (int q : g.qubits) l = std::max(l, level[static_cast<std::size_t>(q)]);
    ++l;
    for (int q : g.qubits) level[static_cast<std::size_t>(q)] = l;
    d = std::max(d, l);
  }
  return d;
}

std::map<GateKind, int> gate_counts(const Circuit& circuit) {
  std::map<GateKind, int> counts;
  for (const auto& g : circuit.gates)
    if (g.kind != GateKind::Measure) ++counts[g.kind];
  return counts;
}

int two_qubit_gate_count(const Circuit& circuit) {
  int n = 0;
  for (const auto& g : circuit.gates)
    if (g.kind != GateKind::Measure && g.qubits.size() == 2) ++n;
  return n;
}

}  // namespace vqb
