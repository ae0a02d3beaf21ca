#include "sim/density.hpp"

#include <bit>
#include <cmath>

#include "core/errors.hpp"

namespace vqb {

namespace {
using cd = std::complex<double>;

// M <- (op embedded on `qubits`) * M, columns untouched
void left_mul(const Eigen::MatrixXcd& op, const std::vector<int>& qubits,
              Eigen::MatrixXcd& m) {
  const Eigen::Index dim = m.rows();
  if (qubits.size() == 1) {
    const Eigen::Index mask = Eigen::Index(1) << qubits[0];
    for (Eigen::Index c = 0; c < dim; ++c) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        if (b & mask) continue;
        const cd a0 = m(b, c), a1 = m(b | mask, c);
        m(b, c) = op(0, 0) * a0 + op(0, 1) * a1;
        m(b | mask, c) = op(1, 0) * a0 + op(1, 1) * a1;
      }
    }
  } else {
    const Eigen::Index m0 = Eigen::Index(1) << qubits[0];
    const Eigen::Index m1 = Eigen::Index(1) << qubits[1];
    for (Eigen::Index c = 0; c < dim; ++c) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        if (b & (m0 | m1)) continue;
        const Eigen::Index i[4] = {b, b | m0, b | m1, b | m0 | m1};
        cd a[4];
        for (int k = 0; k < 4; ++k) a[k] = m(i[k], c);
        for (int r = 0; r < 4; ++r)
          m(i[r], c) =
              op(r, 0) * a[0] + op(r, 1) * a[1] + op(r, 2) * a[2] + op(r, 3) * a[3];
      }
    }
  }
}

// M <- M * (op embedded on `qubits`)†, rows untouched
void right_mul_adjoint(const Eigen::MatrixXcd& op, const std::vector<int>& qubits,
                       Eigen::MatrixXcd& m) {
  const Eigen::Index dim = m.cols();
  if (qubits.size() == 1) {
    const Eigen::Index mask = Eigen::Index(1) << qubits[0];
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        if (b & mask) continue;
        const cd a0 = m(r, b), a1 = m(r, b | mask);
        m(r, b) = a0 * std::conj(op(0, 0)) + a1 * std::conj(op(0, 1));
        m(r, b | mask) = a0 * std::conj(op(1, 0)) + a1 * std::conj(op(1, 1));
      }
    }
  } else {
    const Eigen::Index m0 = Eigen::Index(1) << qubits[0];
    const Eigen::Index m1 = Eigen::Index(1) << qubits[1];
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        if (b & (m0 | m1)) continue;
        const Eigen::Index i[4] = {b, b | m0, b | m1, b | m0 | m1};
        cd a[4];
        for (int k = 0; k < 4; ++k) a[k] = m(r, i[k]);
        for (int c = 0; c < 4; ++c)
          m(r, i[c]) = a[0] * std::conj(op(c, 0)) + a[1] * std::conj(op(c, 1)) +
                       a[2] * std::conj(op(c, 2)) + a[3] * std::conj(op(c, 3));
      }
    }
  }
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 8)
    throw ContractError("density matrix width out of range: " +
                        std::to_string(n_qubits));
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  rho_ = Eigen::MatrixXcd::Zero(dim, dim);
  rho_(0, 0) = 1.0;
}

void DensityMatrix::apply(const Gate& gate) {
  if (gate.kind == GateKind::Measure)
    throw ContractError("density matrix cannot apply a measure gate");
  if (gate.parameterized())
    throw ContractError("cannot apply an unbound parameterized gate");
  for (int q : gate.qubits)
    if (q < 0 || q >= n_qubits_)
      throw ContractError("gate qubit out of range");
  const Eigen::MatrixXcd u = gate_matrix(gate.kind, gate.angle);
  left_mul(u, gate.qubits, rho_);
  right_mul_adjoint(u, gate.qubits, rho_);
}

void DensityMatrix::apply_channel(const KrausChannel& channel,
                                  const std::vector<int>& qubits) {
  if (static_cast<int>(qubits.size()) != channel.n_qubits())
    throw ContractError("channel width does not match qubit list");
  for (int q : qubits)
    if (q < 0 || q >= n_qubits_)
      throw ContractError("channel qubit out of range");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rho_.rows(), rho_.cols());
  for (const auto& k : channel.ops) {
    Eigen::MatrixXcd term = rho_;
    left_mul(k, qubits, term);
    right_mul_adjoint(k, qubits, term);
    acc += term;
  }
  rho_.swap(acc);
}

double DensityMatrix::expectation(const Observable& obs) const {
  if (obs.n_qubits != n_qubits_)
    throw ContractError("observable width does not match density matrix");
  const Eigen::Index dim = rho_.rows();
  double total = 0.0;
  for (const auto& t : obs.terms) {
    std::size_t xmask = 0, zmask = 0;
    int y_count = 0;
    for (int q = 0; q < n_qubits_; ++q) {
      const char p = t.paulis[std::size_t(q)];
      if (p == 'X' || p == 'Y') xmask |= std::size_t(1) << q;
      if (p == 'Z' || p == 'Y') zmask |= std::size_t(1) << q;
      if (p == 'Y') ++y_count;
    }
    // tr(P rho) = sum_b <b|P rho|b> = sum_b phase(b^x) rho(b^x, b)
    cd acc = 0.0;
    for (Eigen::Index b = 0; b < dim; ++b) {
      const std::size_t src = std::size_t(b) ^ xmask;
      cd phase = (std::popcount(src & zmask) & 1) ? -1.0 : 1.0;
      switch (y_count & 3) {
        case 1: phase *= cd(0.0, 1.0); break;
        case 2: phase *= -1.0; break;
        case 3: phase *= cd(0.0, -1.0); break;
        default: break;
      }
      acc += phase * rho_(Eigen::Index(src), b);
    }
    total += t.coefficient * acc.real();
  }
  return total;
}

std::vector<double> DensityMatrix::probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(rho_.rows()));
  for (Eigen::Index b = 0; b < rho_.rows(); ++b)
    p[std::size_t(b)] = std::max(rho_(b, b).real(), 0.0);
  return p;
}

double DensityMatrix::trace() const { return rho_.trace().real(); }

}  // namespace vqb
