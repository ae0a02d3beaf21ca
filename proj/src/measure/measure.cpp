#include "measure/measure.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "core/errors.hpp"

namespace vqb {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string index_to_bits(std::size_t index, int n_qubits) {
  std::string s(std::size_t(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q)
    if (index & (std::size_t(1) << q)) s[std::size_t(n_qubits - 1 - q)] = '1';
  return s;
}

std::size_t bits_to_index(const std::string& bits) {
  std::size_t idx = 0;
  const int n = int(bits.size());
  for (int q = 0; q < n; ++q) {
    const char c = bits[std::size_t(n - 1 - q)];
    if (c == '1')
      idx |= std::size_t(1) << q;
    else if (c != '0')
      throw ContractError("bitstring contains non-binary character");
  }
  return idx;
}

std::vector<MeasurementGroup> group_terms(const Observable& obs) {
  std::vector<MeasurementGroup> groups;
  for (const auto& t : obs.terms) {
    bool placed = false;
    for (auto& g : groups) {
      bool fits = true;
      for (int q = 0; q < obs.n_qubits && fits; ++q) {
        const char tc = t.paulis[std::size_t(q)];
        const char gc = g.basis[std::size_t(q)];
        if (tc != 'I' && gc != 'I' && tc != gc) fits = false;
      }
      if (fits) {
        for (int q = 0; q < obs.n_qubits; ++q) {
          const char tc = t.paulis[std::size_t(q)];
          if (tc != 'I') g.basis[std::size_t(q)] = tc;
        }
        g.terms.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed) {
      MeasurementGroup g;
      g.basis = t.paulis;
      g.terms = {t};
      groups.push_back(std::move(g));
    }
  }
  // unconstrained qubits measure in Z
  for (auto& g : groups)
    for (auto& c : g.basis)
      if (c == 'I') c = 'Z';
  return groups;
}

Circuit basis_rotation(const MeasurementGroup& group, int n_qubits) {
  if (int(group.basis.size()) != n_qubits)
    throw ContractError("group basis width does not match qubit count");
  Circuit c;
  c.n_qubits = n_qubits;
  for (int q = 0; q < n_qubits; ++q) {
    switch (group.basis[std::size_t(q)]) {
      case 'Z': break;
      case 'X': c.add(GateKind::RY, {q}, -kPi / 2.0); break;
      case 'Y': c.add(GateKind::RX, {q}, kPi / 2.0); break;
      default:
        throw ContractError("group basis character must be one of X, Y, Z");
    }
  }
  std::vector<int> all(static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) all[std::size_t(q)] = q;
  c.add(GateKind::Measure, all);
  return c;
}

double term_expectation(const Counts& counts, const PauliTerm& term) {
  std::uint64_t total = 0;
  double acc = 0.0;
  std::size_t support = 0;
  for (int q = 0; q < int(term.paulis.size()); ++q)
    if (term.paulis[std::size_t(q)] != 'I') support |= std::size_t(1) << q;
  for (const auto& [bits, n] : counts) {
    if (int(bits.size()) != int(term.paulis.size()))
      throw ContractError("counts bitstring width does not match term");
    total += n;
    const std::size_t idx = bits_to_index(bits);
    acc += (std::popcount(idx & support) & 1) ? -double(n) : double(n);
  }
  if (total == 0) throw ContractError("term_expectation: empty counts");
  return acc / double(total);
}

double term_expectation(const std::vector<double>& distribution,
                        const PauliTerm& term) {
  std::size_t support = 0;
  for (int q = 0; q < int(term.paulis.size()); ++q)
    if (term.paulis[std::size_t(q)] != 'I') support |= std::size_t(1) << q;
  double acc = 0.0, total = 0.0;
  for (std::size_t idx = 0; idx < distribution.size(); ++idx) {
    total += distribution[idx];
    acc += (std::popcount(idx & support) & 1) ? -distribution[idx]
                                              : distribution[idx];
  }
  if (total <= 0.0) throw ContractError("term_expectation: empty distribution");
  return acc / total;
}

double energy_from_counts(
    const std::vector<std::pair<MeasurementGroup, Counts>>& group_counts,
    const Observable& obs) {
  double energy = 0.0;
  std::map<std::string, int> seen;
  for (const auto& [group, counts] : group_counts) {
    for (const auto& t : group.terms) {
      ++seen[t.paulis];
      if (t.is_identity())
        energy += t.coefficient;
      else
        energy += t.coefficient * term_expectation(counts, t);
    }
  }
  for (const auto& t : obs.terms) {
    auto it = seen.find(t.paulis);
    if (it == seen.end() || it->second == 0)
      throw ContractError("no measurement group covers term " + t.paulis);
    if (it->second > 1)
      throw ContractError("term " + t.paulis + " measured in multiple groups");
  }
  return energy;
}

Eigen::MatrixXd build_confusion(const NoiseModel& model,
                                const std::vector<int>& physical) {
  const int n = int(physical.size());
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Ones(1, 1);
  for (int q = 0; q < n; ++q) {
    // qubit q occupies bit q: kron with earlier qubits below it
    const Eigen::Matrix2d mq = model.readout_confusion(physical[std::size_t(q)]);
    Eigen::MatrixXd next(m.rows() * 2, m.cols() * 2);
    next.topLeftCorner(m.rows(), m.cols()) = mq(0, 0) * m;
    next.topRightCorner(m.rows(), m.cols()) = mq(0, 1) * m;
    next.bottomLeftCorner(m.rows(), m.cols()) = mq(1, 0) * m;
    next.bottomRightCorner(m.rows(), m.cols()) = mq(1, 1) * m;
    m.swap(next);
  }
  if (m.rows() != dim) throw ContractError("confusion build width mismatch");
  return m;
}

Eigen::MatrixXd build_confusion(const NoiseModel& model, int n_qubits) {
  std::vector<int> physical(static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) physical[std::size_t(q)] = q;
  return build_confusion(model, physical);
}

std::vector<double> mitigate(const std::vector<double>& frequencies,
                             const Eigen::MatrixXd& confusion) {
  const Eigen::Index dim = confusion.rows();
  if (Eigen::Index(frequencies.size()) != dim)
    throw ContractError("mitigate: dimension mismatch");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      confusion, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  if (smin < 1e-10)
    throw ConfigError("confusion matrix is too ill-conditioned to invert");
  Eigen::VectorXd f(dim);
  for (Eigen::Index i = 0; i < dim; ++i) f(i) = frequencies[std::size_t(i)];
  Eigen::VectorXd p = svd.solve(f);
  double total = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (p(i) < 0.0) p(i) = 0.0;
    total += p(i);
  }
  if (total <= 0.0) throw ContractError("mitigation produced an empty distribution");
  std::vector<double> out(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) out[std::size_t(i)] = p(i) / total;
  return out;
}

std::vector<double> mitigate(const Counts& counts,
                             const Eigen::MatrixXd& confusion) {
  const std::size_t dim = std::size_t(confusion.rows());
  std::vector<double> freq(dim, 0.0);
  std::uint64_t total = 0;
  for (const auto& [bits, n] : counts) total += n;
  if (total == 0) throw ContractError("mitigate: empty counts");
  for (const auto& [bits, n] : counts) {
    const std::size_t idx = bits_to_index(bits);
    if (idx >= dim) throw ContractError("mitigate: bitstring out of range");
    freq[idx] += double(n) / double(total);
  }
  return mitigate(freq, confusion);
}

}  // namespace vqb
