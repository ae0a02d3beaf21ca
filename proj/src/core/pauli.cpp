#include "core/pauli.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <sstream>

#include "core/errors.hpp"

namespace vqb {

namespace {

using cd = std::complex<double>;

Eigen::Matrix2cd pauli_matrix(char p) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (p) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, cd(0, -1), cd(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

}  // namespace

Observable parse_observable(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::string> order;
  std::map<std::string, double> merged;
  std::size_t len = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string paulis;
    if (!(ls >> paulis)) continue;  // blank or comment-only line
    if (paulis.find_first_not_of("IXYZ") != std::string::npos)
      throw ParseError("observable line " + std::to_string(lineno) +
                       ": invalid pauli string '" + paulis + "'");
    double coeff;
    if (!(ls >> coeff))
      throw ParseError("observable line " + std::to_string(lineno) +
                       ": missing or non-numeric coefficient");
    std::string trailing;
    if (ls >> trailing)
      throw ParseError("observable line " + std::to_string(lineno) +
                       ": unexpected trailing token '" + trailing + "'");
    if (!std::isfinite(coeff))
      throw ParseError("observable line " + std::to_string(lineno) +
                       ": coefficient is not finite");
    if (len == 0) len = paulis.size();
    if (paulis.size() != len)
      throw ParseError("observable line " + std::to_string(lineno) +
                       ": pauli string length " + std::to_string(paulis.size()) +
                       " differs from earlier length " + std::to_string(len));
    auto [it, inserted] = merged.try_emplace(paulis, 0.0);
    if (inserted) order.push_back(paulis);
    it->second += coeff;
  }
  if (order.empty()) throw ParseError("observable file contains no terms");
  Observable obs;
  obs.n_qubits = static_cast<int>(len);
  for (const auto& p : order) obs.terms.push_back({merged.at(p), p});
  return obs;
}

std::string serialize_observable(const Observable& obs) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : obs.terms) out << t.paulis << " " << t.coefficient << "\n";
  return out.str();
}

Eigen::MatrixXcd observable_matrix(const Observable& obs) {
  if (obs.n_qubits > 12)
    throw ContractError("observable too wide for dense matrix: " +
                        std::to_string(obs.n_qubits) + " qubits");
  const Eigen::Index dim = Eigen::Index(1) << obs.n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : obs.terms) {
    // kron over qubits, qubit 0 as the least-significant index bit
    Eigen::MatrixXcd term(1, 1);
    term(0, 0) = 1.0;
    for (int q = 0; q < obs.n_qubits; ++q) {
      Eigen::MatrixXcd next(term.rows() * 2, term.cols() * 2);
      Eigen::Matrix2cd p = pauli_matrix(t.paulis[static_cast<std::size_t>(q)]);
      next.topLeftCorner(term.rows(), term.cols()) = p(0, 0) * term;
      next.topRightCorner(term.rows(), term.cols()) = p(0, 1) * term;
      next.bottomLeftCorner(term.rows(), term.cols()) = p(1, 0) * term;
      next.bottomRightCorner(term.rows(), term.cols()) = p(1, 1) * term;
      term.swap(next);
    }
    m += t.coefficient * term;
  }
  return m;
}

double exact_ground_energy(const Observable& obs) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(observable_matrix(obs));
  return solver.eigenvalues().minCoeff();
}

}  // namespace vqb
