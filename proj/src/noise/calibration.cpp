#include "noise/calibration.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "core/errors.hpp"

namespace vqb {

namespace {

double lookup_q(const std::map<int, double>& per_qubit,
                const std::optional<double>& fallback, int q, double absent) {
  if (auto it = per_qubit.find(q); it != per_qubit.end()) return it->second;
  if (fallback) return *fallback;
  return absent;
}

double lookup_pair(const std::map<std::pair<int, int>, double>& per_pair,
                   const std::optional<double>& fallback, int a, int b,
                   const char* what) {
  if (auto it = per_pair.find({a, b}); it != per_pair.end()) return it->second;
  if (auto it = per_pair.find({b, a}); it != per_pair.end()) return it->second;
  if (fallback) return *fallback;
  throw ConfigError(std::string("calibration has no ") + what + " for pair (" +
                    std::to_string(a) + "," + std::to_string(b) + ")");
}

}  // namespace

double CalibrationData::one_qubit_error(int q) const {
  return lookup_q(error_1q, error_1q_default, q, 0.0);
}

double CalibrationData::two_qubit_error(int a, int b) const {
  if (error_2q.empty() && !error_2q_default) return 0.0;
  if (auto it = error_2q.find({a, b}); it != error_2q.end()) return it->second;
  if (auto it = error_2q.find({b, a}); it != error_2q.end()) return it->second;
  return error_2q_default.value_or(0.0);
}

double CalibrationData::p01(int q) const {
  return lookup_q(readout_p01, readout_p01_default, q, 0.0);
}

double CalibrationData::p10(int q) const {
  return lookup_q(readout_p10, readout_p10_default, q, 0.0);
}

double CalibrationData::t1_of(int q) const {
  return lookup_q(t1, t1_default, q, std::numeric_limits<double>::infinity());
}

double CalibrationData::t2_of(int q) const {
  return lookup_q(t2, t2_default, q, std::numeric_limits<double>::infinity());
}

double CalibrationData::one_qubit_duration() const {
  if (!duration_1q)
    throw ConfigError("calibration has no single-qubit gate duration");
  return *duration_1q;
}

double CalibrationData::two_qubit_duration(int a, int b) const {
  return lookup_pair(duration_2q, duration_2q_default, a, b,
                     "two-qubit duration");
}

double CalibrationData::measure_duration() const {
  return duration_measure.value_or(0.0);
}

CalibrationData parse_calibration(const std::string& text) {
  CalibrationData cal;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  bool saw_anything = false;

  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("calibration line " + std::to_string(lineno) + ": " + msg);
  };
  auto check_prob = [&](double p) {
    if (!(p >= 0.0 && p <= 1.0)) fail("probability outside [0,1]");
  };
  auto check_pos = [&](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
      fail(std::string(what) + " must be positive and finite");
  };
  auto check_qubit = [&](int q) {
    if (q < 0 || q > 1000) fail("implausible qubit index");
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head.front() == '[') {
      if (head.back() != ']') fail("malformed section header");
      section = head.substr(1, head.size() - 2);
      if (section != "single_qubit" && section != "two_qubit" &&
          section != "readout" && section != "coherence" &&
          section != "durations")
        fail("unknown section '" + section + "'");
      continue;
    }
    saw_anything = true;
    if (section.empty()) fail("entry before any section header");

    auto read_value = [&]() {
      double v;
      if (!(ls >> v)) fail("missing numeric value");
      if (!std::isfinite(v)) fail("value is not finite");
      return v;
    };
    // reads "<qubit>" or "default"; returns nullopt for the default form
    auto read_qubit_or_default = [&]() -> std::optional<int> {
      std::string tok;
      if (!(ls >> tok)) fail("missing qubit index");
      if (tok == "default") return std::nullopt;
      try {
        std::size_t used = 0;
        int q = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        check_qubit(q);
        return q;
      } catch (const std::logic_error&) {
        fail("bad qubit index '" + tok + "'");
      }
      return std::nullopt;  // unreachable; fail() throws
    };
    auto read_pair_or_default = [&]() -> std::optional<std::pair<int, int>> {
      auto a = read_qubit_or_default();
      if (!a) return std::nullopt;
      std::string tok;
      if (!(ls >> tok)) fail("missing second qubit index");
      try {
        std::size_t used = 0;
        int b = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        check_qubit(b);
        if (b == *a) fail("pair with repeated qubit");
        return std::make_pair(*a, b);
      } catch (const std::logic_error&) {
        fail("bad qubit index '" + tok + "'");
      }
      return std::nullopt;  // unreachable; fail() throws
    };

    if (section == "single_qubit") {
      if (head != "error") fail("unknown key '" + head + "' in [single_qubit]");
      auto q = read_qubit_or_default();
      double p = read_value();
      check_prob(p);
      if (q) cal.error_1q[*q] = p; else cal.error_1q_default = p;
    } else if (section == "two_qubit") {
      if (head != "error") fail("unknown key '" + head + "' in [two_qubit]");
      auto pr = read_pair_or_default();
      double p = read_value();
      check_prob(p);
      if (pr) cal.error_2q[*pr] = p; else cal.error_2q_default = p;
    } else if (section == "readout") {
      if (head != "p01" && head != "p10")
        fail("unknown key '" + head + "' in [readout]");
      auto q = read_qubit_or_default();
      double p = read_value();
      check_prob(p);
      auto& per = head == "p01" ? cal.readout_p01 : cal.readout_p10;
      auto& def = head == "p01" ? cal.readout_p01_default : cal.readout_p10_default;
      if (q) per[*q] = p; else def = p;
    } else if (section == "coherence") {
      if (head != "t1" && head != "t2")
        fail("unknown key '" + head + "' in [coherence]");
      auto q = read_qubit_or_default();
      double v = read_value();
      check_pos(v, head.c_str());
      auto& per = head == "t1" ? cal.t1 : cal.t2;
      auto& def = head == "t1" ? cal.t1_default : cal.t2_default;
      if (q) per[*q] = v; else def = v;
    } else {  // durations
      if (head == "1q") {
        double v = read_value();
        check_pos(v, "duration");
        cal.duration_1q = v;
      } else if (head == "2q") {
        auto pr = read_pair_or_default();
        double v = read_value();
        check_pos(v, "duration");
        if (pr) cal.duration_2q[*pr] = v; else cal.duration_2q_default = v;
      } else if (head == "measure") {
        double v = read_value();
        if (v < 0.0 || !std::isfinite(v)) fail("duration must be nonnegative");
        cal.duration_measure = v;
      } else {
        fail("unknown key '" + head + "' in [durations]");
      }
    }
    std::string trailing;
    if (ls >> trailing) fail("unexpected trailing token '" + trailing + "'");
  }
  if (!saw_anything) throw ParseError("calibration file contains no entries");

  // physicality check: T2 <= 2*T1 where both are known (warn only)
  auto check_t2 = [&](int q, double t1v, double t2v) {
    if (std::isfinite(t1v) && std::isfinite(t2v) && t2v > 2.0 * t1v + 1e-15)
      cal.warnings.push_back("qubit " + (q < 0 ? std::string("default")
                                               : std::to_string(q)) +
                             ": T2 exceeds 2*T1");
  };
  if (cal.t1_default && cal.t2_default)
    check_t2(-1, *cal.t1_default, *cal.t2_default);
  for (const auto& [q, t2v] : cal.t2) check_t2(q, cal.t1_of(q), t2v);
  return cal;
}

CalibrationData load_calibration_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open calibration file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_calibration(buf.str());
}

double estimate_duration(const Circuit& circuit, const CalibrationData& cal) {
  std::vector<double> busy_until(std::size_t(circuit.n_qubits), 0.0);
  double latest = 0.0;
  for (const auto& g : circuit.gates) {
    double dur;
    if (g.kind == GateKind::Measure) {
      dur = cal.measure_duration();
    } else if (g.qubits.size() == 1) {
      dur = cal.one_qubit_duration();
    } else {
      dur = cal.two_qubit_duration(g.qubits[0], g.qubits[1]);
    }
    double start = 0.0;
    for (int q : g.qubits) start = std::max(start, busy_until[std::size_t(q)]);
    const double finish = start + dur;
    for (int q : g.qubits) busy_until[std::size_t(q)] = finish;
    latest = std::max(latest, finish);
  }
  return latest;
}

}  // namespace vqb
