#include "transpile/passes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "core/errors.hpp"

namespace vqb {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool same_gate(const Gate& a, const Gate& b) {
  return a.kind == b.kind && a.qubits == b.qubits && a.angle == b.angle &&
         a.slot == b.slot;
}

bool same_gates(const std::vector<Gate>& a, const std::vector<Gate>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_gate(a[i], b[i])) return false;
  return true;
}

// true when the angle is not a multiple of 2*pi (within 1e-10)
bool nonzero_angle(double a) {
  double m = std::fmod(a + kPi, 2.0 * kPi);
  if (m < 0.0) m += 2.0 * kPi;
  return std::abs(m - kPi) > 1e-10;
}

Eigen::Matrix2cd rx_mat(double t) {
  return gate_matrix(GateKind::RX, t);
}
Eigen::Matrix2cd rz_mat(double t) {
  return gate_matrix(GateKind::RZ, t);
}

// Euler angles (a, b, g) with U ~ Rz(a) Rx(b) Rz(g) up to global phase
// (g applied first). The b ~ 0 and b ~ pi branches avoid arg() of values
// that are numerically -0.0, whose sign would flip the result by pi.
std::array<double, 3> euler_zxz(const Eigen::Matrix2cd& u) {
  const cd det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const Eigen::Matrix2cd u2 = u / std::sqrt(det);
  const double b = 2.0 * std::atan2(std::abs(u2(0, 1)), std::abs(u2(0, 0)));
  if (b < 1e-12) return {-2.0 * std::arg(u2(0, 0)), 0.0, 0.0};
  double apg, amg;
  if (b > kPi - 1e-12) {
    apg = 0.0;
    amg = -2.0 * std::arg(cd(0.0, 1.0) * u2(0, 1));
  } else {
    apg = -2.0 * std::arg(u2(0, 0));
    amg = -2.0 * std::arg(cd(0.0, 1.0) * u2(0, 1));
  }
  return {(apg + amg) / 2.0, b, (apg - amg) / 2.0};
}

// U ~ Rx(a) Rz(b) Rx(g), via Hadamard conjugation of the ZXZ form
std::array<double, 3> euler_xzx(const Eigen::Matrix2cd& u) {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  return euler_zxz(h * u * h);
}

// U as RZ(lam) SX RZ(th+pi) SX RZ(phi+pi) (first listed applied first),
// dropping rotations that are multiples of 2*pi
void zsx_emit(const Eigen::Matrix2cd& u, int q, std::vector<Gate>& out) {
  const cd det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const Eigen::Matrix2cd u2 = u / std::sqrt(det);
  const double th = 2.0 * std::atan2(std::abs(u2(1, 0)), std::abs(u2(0, 0)));
  if (th < 1e-10) {
    const double a = -2.0 * std::arg(u2(0, 0));
    if (nonzero_angle(a)) out.push_back({GateKind::RZ, {q}, a, -1});
    return;
  }
  double phi, lam;
  if (th > kPi - 1e-10) {
    phi = std::arg(u2(1, 0));
    lam = std::arg(-u2(0, 1));
  } else {
    const double ph = std::arg(u2(0, 0));
    phi = std::arg(u2(1, 0)) - ph;
    lam = std::arg(-u2(0, 1)) - ph;
  }
  if (nonzero_angle(lam)) out.push_back({GateKind::RZ, {q}, lam, -1});
  out.push_back({GateKind::SX, {q}, 0.0, -1});
  if (nonzero_angle(th + kPi)) out.push_back({GateKind::RZ, {q}, th + kPi, -1});
  out.push_back({GateKind::SX, {q}, 0.0, -1});
  if (nonzero_angle(phi + kPi)) out.push_back({GateKind::RZ, {q}, phi + kPi, -1});
}

std::vector<Gate> expand_swaps(const std::vector<Gate>& gates) {
  struct LastOn {
    bool two_qubit;
    std::vector<int> qubits;
    GateKind kind;
    bool operator==(const LastOn&) const = default;
  };
  std::vector<Gate> out;
  std::map<int, LastOn> last_on;
  for (const auto& g : gates) {
    if (g.kind != GateKind::SWAP) {
      out.push_back(g);
      for (int q : g.qubits)
        last_on[q] = {g.qubits.size() == 2, g.qubits, g.kind};
      continue;
    }
    const int a = g.qubits[0], b = g.qubits[1];
    int c = a, t = b;
    auto ita = last_on.find(a);
    auto itb = last_on.find(b);
    // orient the first CX to cancel against a preceding same-pair CX
    if (ita != last_on.end() && itb != last_on.end() &&
        ita->second == itb->second && ita->second.two_qubit &&
        ita->second.kind == GateKind::CX &&
        ((ita->second.qubits[0] == a && ita->second.qubits[1] == b) ||
         (ita->second.qubits[0] == b && ita->second.qubits[1] == a))) {
      c = ita->second.qubits[0];
      t = ita->second.qubits[1];
    }
    out.push_back({GateKind::CX, {c, t}, 0.0, -1});
    out.push_back({GateKind::CX, {t, c}, 0.0, -1});
    out.push_back({GateKind::CX, {c, t}, 0.0, -1});
    last_on[a] = {true, {c, t}, GateKind::CX};
    last_on[b] = {true, {c, t}, GateKind::CX};
  }
  return out;
}

std::vector<Gate> cancel_cx(const std::vector<Gate>& gates) {
  std::vector<std::optional<Gate>> out;
  std::map<int, std::ptrdiff_t> last_on;  // qubit -> index into out
  for (const auto& g : gates) {
    if (g.kind == GateKind::CX) {
      auto ita = last_on.find(g.qubits[0]);
      auto itb = last_on.find(g.qubits[1]);
      if (ita != last_on.end() && itb != last_on.end() &&
          ita->second == itb->second && out[std::size_t(ita->second)] &&
          out[std::size_t(ita->second)]->kind == GateKind::CX &&
          out[std::size_t(ita->second)]->qubits == g.qubits) {
        out[std::size_t(ita->second)].reset();
        last_on.erase(g.qubits[0]);
        last_on.erase(g.qubits[1]);
        continue;
      }
    }
    out.emplace_back(g);
    for (int q : g.qubits) last_on[q] = std::ptrdiff_t(out.size()) - 1;
  }
  std::vector<Gate> res;
  for (auto& g : out)
    if (g) res.push_back(std::move(*g));
  return res;
}

class Merge1q {
 public:
  Merge1q(const std::set<GateKind>& basis) : has_rx_(basis.count(GateKind::RX)) {}

  std::vector<Gate> run(const std::vector<Gate>& gates) {
    for (const auto& g : gates) {
      if (g.qubits.size() == 1 && g.kind != GateKind::Measure) {
        auto [it, inserted] =
            pend_.try_emplace(g.qubits[0], Eigen::Matrix2cd::Identity());
        it->second = gate_matrix(g.kind, g.angle) * it->second;
        continue;
      }
      if (g.kind == GateKind::RXX) {
        flush(g.qubits[0], Defer::RX);
        flush(g.qubits[1], Defer::RX);
      } else if (g.kind == GateKind::CX) {
        flush(g.qubits[0], Defer::RZ);
        flush(g.qubits[1], has_rx_ ? Defer::RX : Defer::None);
      } else {
        for (int q : g.qubits) flush(q, Defer::None);
      }
      out_.push_back(g);
      if (g.qubits.size() == 2) {
        last2q_[g.qubits[0]] = {std::ptrdiff_t(out_.size()) - 1, g.kind, Role::Control};
        last2q_[g.qubits[1]] = {std::ptrdiff_t(out_.size()) - 1, g.kind, Role::Target};
      }
    }
    std::vector<int> remaining;
    for (const auto& [q, u] : pend_) remaining.push_back(q);
    for (int q : remaining) flush(q, Defer::None);
    return out_;
  }

 private:
  enum class Defer { None, RX, RZ };
  enum class Role { Control, Target };
  struct Last2q {
    std::ptrdiff_t index;
    GateKind kind;
    Role role;
  };

  // Emits one rotation; if it commutes with the previous two-qubit gate on
  // this qubit it is hoisted before that gate (so a later pass can merge it
  // into the preceding idle window).
  void emit1(int q, GateKind kind, double angle) {
    auto it = last2q_.find(q);
    if (it != last2q_.end()) {
      const auto [idx, k2, role] = it->second;
      const bool hop =
          (k2 == GateKind::RXX && kind == GateKind::RX) ||
          (k2 == GateKind::CX && role == Role::Control && kind == GateKind::RZ) ||
          (k2 == GateKind::CX && role == Role::Target && kind == GateKind::RX);
      if (hop) {
        out_.insert(out_.begin() + idx, {kind, {q}, angle, -1});
        for (auto& [qq, info] : last2q_)
          if (info.index >= idx) ++info.index;
        return;
      }
    }
    out_.push_back({kind, {q}, angle, -1});
    last2q_.erase(q);
  }

  void flush(int q, Defer defer) {
    auto it = pend_.find(q);
    if (it == pend_.end()) return;
    const Eigen::Matrix2cd u = it->second;
    pend_.erase(it);
    if (phase_distance(Eigen::Matrix2cd::Identity(), u) < 1e-10) return;
    if (has_rx_) {
      if (defer == Defer::RX) {
        const auto [a, b, g] = euler_xzx(u);
        if (nonzero_angle(g)) emit1(q, GateKind::RX, g);
        if (nonzero_angle(b)) emit1(q, GateKind::RZ, b);
        if (nonzero_angle(a)) pend_.emplace(q, rx_mat(a));
      } else if (defer == Defer::RZ) {
        const auto [a, b, g] = euler_zxz(u);
        if (nonzero_angle(g)) emit1(q, GateKind::RZ, g);
        if (nonzero_angle(b)) emit1(q, GateKind::RX, b);
        if (nonzero_angle(a)) pend_.emplace(q, rz_mat(a));
      } else {
        const auto [a, b, g] = euler_zxz(u);
        if (nonzero_angle(g)) emit1(q, GateKind::RZ, g);
        if (nonzero_angle(b)) emit1(q, GateKind::RX, b);
        if (nonzero_angle(a)) emit1(q, GateKind::RZ, a);
      }
    } else {
      if (defer == Defer::RZ) {
        const auto [a, b, g] = euler_zxz(u);
        if (nonzero_angle(g)) emit1(q, GateKind::RZ, g);
        if (nonzero_angle(b)) {
          std::vector<Gate> tmp;
          zsx_emit(rx_mat(b), q, tmp);
          for (const auto& t : tmp) emit1(q, t.kind, t.angle);
        }
        if (nonzero_angle(a)) pend_.emplace(q, rz_mat(a));
      } else {
        std::vector<Gate> tmp;
        zsx_emit(u, q, tmp);
        for (const auto& t : tmp) emit1(q, t.kind, t.angle);
      }
    }
  }

  bool has_rx_;
  std::vector<Gate> out_;
  std::map<int, Eigen::Matrix2cd> pend_;
  std::map<int, Last2q> last2q_;
};

}  // namespace

std::vector<Gate> decompose_cx_to_rxx(int control, int target) {
  return {
      {GateKind::RY, {control}, kPi / 2.0, -1},
      {GateKind::RXX, {control, target}, kPi / 2.0, -1},
      {GateKind::RX, {target}, -kPi / 2.0, -1},
      {GateKind::RX, {control}, -kPi / 2.0, -1},
      {GateKind::RY, {control}, -kPi / 2.0, -1},
  };
}

Circuit decompose(const Circuit& circuit, const std::set<GateKind>& basis) {
  if (!circuit.bound())
    throw ContractError("decompose: circuit has unbound parameters");
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  bool rewrote = false;
  for (const auto& g : circuit.gates) {
    if (basis.count(g.kind) || g.kind == GateKind::SWAP ||
        g.kind == GateKind::Measure) {
      out.gates.push_back(g);
      continue;
    }
    rewrote = true;
    if (g.kind == GateKind::CX && basis.count(GateKind::RXX)) {
      for (auto& d : decompose_cx_to_rxx(g.qubits[0], g.qubits[1]))
        out.gates.push_back(std::move(d));
    } else if (g.kind == GateKind::RY && basis.count(GateKind::RX) &&
               basis.count(GateKind::RZ)) {
      out.gates.push_back({GateKind::RX, g.qubits, kPi / 2.0, -1});
      out.gates.push_back({GateKind::RZ, g.qubits, g.angle, -1});
      out.gates.push_back({GateKind::RX, g.qubits, -kPi / 2.0, -1});
    } else if (g.kind == GateKind::RY && basis.count(GateKind::SX)) {
      out.gates.push_back({GateKind::SX, g.qubits, 0.0, -1});
      out.gates.push_back({GateKind::RZ, g.qubits, g.angle + kPi, -1});
      out.gates.push_back({GateKind::SX, g.qubits, 0.0, -1});
      out.gates.push_back({GateKind::RZ, g.qubits, kPi, -1});
    } else if (g.kind == GateKind::RX && basis.count(GateKind::SX)) {
      out.gates.push_back({GateKind::RZ, g.qubits, kPi / 2.0, -1});
      out.gates.push_back({GateKind::SX, g.qubits, 0.0, -1});
      out.gates.push_back({GateKind::RZ, g.qubits, g.angle + kPi, -1});
      out.gates.push_back({GateKind::SX, g.qubits, 0.0, -1});
      out.gates.push_back({GateKind::RZ, g.qubits, kPi / 2.0, -1});
    } else {
      throw ContractError(std::string("no decomposition for ") +
                          gate_name(g.kind) + " into the target basis");
    }
  }
  // nested decompositions (e.g. the RY emitted by the CX-to-RXX rule)
  // resolve on the next pass; each pass rewrites at least one gate
  const bool closed = std::all_of(
      out.gates.begin(), out.gates.end(), [&](const Gate& g) {
        return basis.count(g.kind) || g.kind == GateKind::SWAP ||
               g.kind == GateKind::Measure;
      });
  if (closed) return out;
  if (!rewrote)
    throw ContractError("decomposition made no progress toward the basis");
  return decompose(out, basis);
}

std::pair<Circuit, std::vector<int>> route(const Circuit& circuit,
                                           const CouplingMap& coupling) {
  if (!coupling.connected())
    throw RoutingError("coupling map is not connected");
  if (circuit.n_qubits > coupling.n_qubits)
    throw RoutingError("circuit is wider than the coupling map");
  const int n_phys = coupling.n_qubits;

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_phys));
  for (const auto& [a, b] : coupling.edges) {
    adj[std::size_t(a)].push_back(b);
    adj[std::size_t(b)].push_back(a);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  // BFS shortest path, ties broken toward lower physical index
  auto shortest_path = [&](int from, int to) {
    std::vector<int> prev(std::size_t(n_phys), -2);
    prev[std::size_t(from)] = -1;
    std::vector<int> frontier = {from};
    while (!frontier.empty() && prev[std::size_t(to)] == -2) {
      std::sort(frontier.begin(), frontier.end());
      std::vector<int> next;
      for (int u : frontier)
        for (int v : adj[std::size_t(u)])
          if (prev[std::size_t(v)] == -2) {
            prev[std::size_t(v)] = u;
            next.push_back(v);
          }
      frontier = std::move(next);
    }
    std::vector<int> path = {to};
    while (prev[std::size_t(path.back())] != -1)
      path.push_back(prev[std::size_t(path.back())]);
    std::reverse(path.begin(), path.end());
    return path;
  };

  std::vector<int> layout(static_cast<std::size_t>(n_phys));  // physical -> logical
  std::vector<int> pos(static_cast<std::size_t>(n_phys));     // logical -> physical
  for (int i = 0; i < n_phys; ++i) layout[std::size_t(i)] = pos[std::size_t(i)] = i;

  Circuit out;
  out.n_qubits = n_phys;
  for (const auto& g : circuit.gates) {
    if (g.qubits.size() != 2 || g.kind == GateKind::Measure) {
      Gate mapped = g;
      for (auto& q : mapped.qubits) q = pos[std::size_t(q)];
      out.gates.push_back(std::move(mapped));
      continue;
    }
    int a = pos[std::size_t(g.qubits[0])], b = pos[std::size_t(g.qubits[1])];
    if (!coupling.has_edge(a, b)) {
      // move the higher-index endpoint toward the other along a shortest path
      const int hi = std::max(a, b), lo = std::min(a, b);
      const auto path = shortest_path(hi, lo);
      for (std::size_t i = 0; i + 2 < path.size(); ++i) {
        const int u = path[i], v = path[i + 1];
        out.gates.push_back({GateKind::SWAP, {u, v}, 0.0, -1});
        std::swap(layout[std::size_t(u)], layout[std::size_t(v)]);
        pos[std::size_t(layout[std::size_t(u)])] = u;
        pos[std::size_t(layout[std::size_t(v)])] = v;
      }
      a = pos[std::size_t(g.qubits[0])];
      b = pos[std::size_t(g.qubits[1])];
    }
    Gate mapped = g;
    mapped.qubits = {a, b};
    out.gates.push_back(std::move(mapped));
  }
  return {std::move(out), std::move(layout)};
}

Circuit optimize_passes(const Circuit& circuit, const std::set<GateKind>& basis) {
  Circuit out = circuit;
  for (int round = 0; round < 20; ++round) {
    std::vector<Gate> before = out.gates;
    out.gates = expand_swaps(out.gates);
    out.gates = cancel_cx(out.gates);
    out.gates = Merge1q(basis).run(out.gates);
    if (same_gates(out.gates, before)) break;
  }
  return out;
}

std::pair<Circuit, TranspileReport> transpile(const Circuit& circuit,
                                              const TranspileTarget& target) {
  if (circuit.n_qubits > target.n_qubits)
    throw RoutingError("circuit is wider than the target");
  Circuit work = decompose(circuit, target.basis);
  TranspileReport report;
  if (target.coupling) {
    report.initial_layout.resize(std::size_t(target.coupling->n_qubits));
    for (std::size_t i = 0; i < report.initial_layout.size(); ++i)
      report.initial_layout[i] = int(i);
    auto [routed, layout] = route(work, *target.coupling);
    work = std::move(routed);
    report.final_layout = std::move(layout);
  } else {
    report.initial_layout.resize(static_cast<std::size_t>(circuit.n_qubits));
    for (std::size_t i = 0; i < report.initial_layout.size(); ++i)
      report.initial_layout[i] = int(i);
    report.final_layout = report.initial_layout;
  }
  work = optimize_passes(work, target.basis);
  report.depth = depth(work);
  report.histogram = gate_counts(work);
  report.total_gates = 0;
  for (const auto& [kind, count] : report.histogram) report.total_gates += count;
  report.two_qubit_gates = two_qubit_gate_count(work);
  return {std::move(work), std::move(report)};
}

Eigen::MatrixXcd layout_permutation_matrix(const std::vector<int>& layout) {
  const int n = int(layout.size());
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    Eigen::Index nb = 0;
    for (int phys = 0; phys < n; ++phys)
      nb |= ((b >> layout[std::size_t(phys)]) & 1) << phys;
    p(nb, b) = 1.0;
  }
  return p;
}

}  // namespace vqb
