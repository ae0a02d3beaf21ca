#include "sim/channels.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace vqb {

namespace {
using cd = std::complex<double>;

Eigen::Matrix2cd pauli1(int i) {
  Eigen::Matrix2cd m;
  switch (i) {
    case 1: m << 0, 1, 1, 0; break;                       // X
    case 2: m << 0, cd(0, -1), cd(0, 1), 0; break;        // Y
    case 3: m << 1, 0, 0, -1; break;                      // Z
    default: m << 1, 0, 0, 1; break;                      // I
  }
  return m;
}
}  // namespace

int KrausChannel::n_qubits() const {
  if (ops.empty()) throw ContractError("empty Kraus channel");
  return ops[0].rows() == 2 ? 1 : 2;
}

double KrausChannel::trace_preservation_defect() const {
  if (ops.empty()) throw ContractError("empty Kraus channel");
  Eigen::MatrixXcd s =
      Eigen::MatrixXcd::Zero(ops[0].rows(), ops[0].cols());
  for (const auto& k : ops) s += k.adjoint() * k;
  s -= Eigen::MatrixXcd::Identity(s.rows(), s.cols());
  return s.cwiseAbs().maxCoeff();
}

KrausChannel depolarizing_channel(double p, int n_qubits) {
  if (p < 0.0 || p > 1.0)
    throw ContractError("depolarizing probability outside [0,1]");
  if (n_qubits != 1 && n_qubits != 2)
    throw ContractError("depolarizing channel supports 1 or 2 qubits");
  const int n_paulis = n_qubits == 1 ? 4 : 16;
  KrausChannel ch;
  const double w_other = p / n_paulis;
  const double w_id = 1.0 - p + w_other;
  for (int i = 0; i < n_paulis; ++i) {
    Eigen::MatrixXcd m;
    if (n_qubits == 1) {
      m = pauli1(i);
    } else {
      m = Eigen::MatrixXcd(4, 4);
      // second listed qubit is the high bit, matching gate_matrix indexing
      Eigen::Matrix2cd lo = pauli1(i % 4), hi = pauli1(i / 4);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          m(r, c) = hi(r >> 1, c >> 1) * lo(r & 1, c & 1);
    }
    const double w = (i == 0) ? w_id : w_other;
    if (w > 0.0) ch.ops.push_back(std::sqrt(w) * m);
  }
  return ch;
}

KrausChannel amplitude_damping_channel(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw ContractError("damping probability outside [0,1]");
  KrausChannel ch;
  Eigen::Matrix2cd k0, k1;
  k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  k1 << 0, std::sqrt(gamma), 0, 0;
  ch.ops = {k0, k1};
  return ch;
}

KrausChannel phase_flip_channel(double p) {
  if (p < 0.0 || p > 1.0)
    throw ContractError("phase-flip probability outside [0,1]");
  KrausChannel ch;
  Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  ch.ops = {std::sqrt(1.0 - p) * id, std::sqrt(p) * pauli1(3)};
  return ch;
}

}  // namespace vqb
