#include "sim/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "core/errors.hpp"
#include "sim/rng.hpp"

namespace vqb {

namespace {
using cd = std::complex<double>;
}

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 24)
    throw ContractError("statevector width out of range: " +
                        std::to_string(n_qubits));
  amp_.assign(std::size_t(1) << n_qubits, cd(0.0, 0.0));
  amp_[0] = 1.0;
}

void Statevector::apply(const Gate& gate) {
  if (gate.kind == GateKind::Measure)
    throw ContractError("statevector cannot apply a measure gate");
  if (gate.parameterized())
    throw ContractError("cannot apply an unbound parameterized gate");
  for (int q : gate.qubits)
    if (q < 0 || q >= n_qubits_)
      throw ContractError("gate qubit out of range");
  const std::size_t dim = amp_.size();
  const Eigen::MatrixXcd m = gate_matrix(gate.kind, gate.angle);
  if (gate.qubits.size() == 1) {
    const std::size_t mask = std::size_t(1) << gate.qubits[0];
    const cd m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::size_t b = 0; b < dim; ++b) {
      if (b & mask) continue;
      const cd a0 = amp_[b], a1 = amp_[b | mask];
      amp_[b] = m00 * a0 + m01 * a1;
      amp_[b | mask] = m10 * a0 + m11 * a1;
    }
  } else {
    const std::size_t m0 = std::size_t(1) << gate.qubits[0];
    const std::size_t m1 = std::size_t(1) << gate.qubits[1];
    for (std::size_t b = 0; b < dim; ++b) {
      if (b & (m0 | m1)) continue;
      const std::size_t i0 = b, i1 = b | m0, i2 = b | m1, i3 = b | m0 | m1;
      const cd a0 = amp_[i0], a1 = amp_[i1], a2 = amp_[i2], a3 = amp_[i3];
      amp_[i0] = m(0, 0) * a0 + m(0, 1) * a1 + m(0, 2) * a2 + m(0, 3) * a3;
      amp_[i1] = m(1, 0) * a0 + m(1, 1) * a1 + m(1, 2) * a2 + m(1, 3) * a3;
      amp_[i2] = m(2, 0) * a0 + m(2, 1) * a1 + m(2, 2) * a2 + m(2, 3) * a3;
      amp_[i3] = m(3, 0) * a0 + m(3, 1) * a1 + m(3, 2) * a2 + m(3, 3) * a3;
    }
  }
}

void Statevector::run(const Circuit& circuit) {
  if (circuit.n_qubits != n_qubits_)
    throw ContractError("circuit width does not match statevector");
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::Measure) continue;
    apply(g);
  }
}

double Statevector::expectation(const Observable& obs) const {
  if (obs.n_qubits != n_qubits_)
    throw ContractError("observable width does not match statevector");
  const std::size_t dim = amp_.size();
  double total = 0.0;
  std::vector<cd> work(dim);
  for (const auto& t : obs.terms) {
    // apply the pauli string to |psi>, then take <psi|P psi>
    std::size_t xmask = 0, zmask = 0;
    int y_count = 0;
    for (int q = 0; q < n_qubits_; ++q) {
      const char p = t.paulis[std::size_t(q)];
      if (p == 'X' || p == 'Y') xmask |= std::size_t(1) << q;
      if (p == 'Z' || p == 'Y') zmask |= std::size_t(1) << q;
      if (p == 'Y') ++y_count;
    }
    // P|b> = i^{y} * (-1)^{parity(b & zmask)} |b ^ xmask> up to Y sign detail:
    // for Y, the phase depends on the flipped bit; fold it into the loop.
    cd acc = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
      const std::size_t src = b ^ xmask;
      // phase from Z/Y z-part acting on the source basis state
      int par = std::popcount(src & zmask) & 1;
      cd phase = par ? -1.0 : 1.0;
      // each Y contributes a factor i and its Z-part already counted
      switch (y_count & 3) {
        case 1: phase *= cd(0.0, 1.0); break;
        case 2: phase *= -1.0; break;
        case 3: phase *= cd(0.0, -1.0); break;
        default: break;
      }
      acc += std::conj(amp_[b]) * phase * amp_[src];
    }
    total += t.coefficient * acc.real();
  }
  return total;
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amp_.size());
  for (std::size_t b = 0; b < amp_.size(); ++b) p[b] = std::norm(amp_[b]);
  return p;
}

double Statevector::norm() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<std::uint64_t> sample_counts(const std::vector<double>& probs,
                                         int shots, std::mt19937_64& rng) {
  if (probs.empty()) throw ContractError("sample_counts: empty distribution");
  if (shots < 0) throw ContractError("sample_counts: negative shot count");
  std::vector<double> cdf(probs.size());
  double run = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    run += std::max(probs[i], 0.0);
    cdf[i] = run;
  }
  if (run <= 0.0) throw ContractError("sample_counts: all-zero distribution");
  std::vector<std::uint64_t> counts(probs.size(), 0);
  for (int s = 0; s < shots; ++s) {
    const double u = uniform_unit(rng) * run;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = std::size_t(it - cdf.begin());
    if (idx >= counts.size()) idx = counts.size() - 1;
    ++counts[idx];
  }
  return counts;
}

}  // namespace vqb
