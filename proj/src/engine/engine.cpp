#include "engine/engine.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "core/circuit.hpp"
#include "core/errors.hpp"
#include "measure/measure.hpp"
#include "noise/model.hpp"
#include "sim/rng.hpp"
#include "sim/statevector.hpp"
#include "transpile/passes.hpp"

namespace vqb {

namespace {

using json = nlohmann::json;

/// One seed's cost function: transpile at the current parameters, simulate
/// each measurement group under the noise model, sample (or keep the exact
/// distribution), optionally mitigate, and sum the grouped energy.
class EnergyEvaluator {
 public:
  EnergyEvaluator(const Observable& obs,
                  const std::vector<MeasurementGroup>& groups,
                  const Circuit& ansatz, const TranspileTarget& target,
                  const NoiseModel& model, bool has_durations,
                  const ExperimentConfig& config, int seed_id)
      : obs_(obs),
        groups_(groups),
        ansatz_(ansatz),
        target_(target),
        model_(model),
        has_durations_(has_durations),
        config_(config),
        seed_id_(seed_id) {
    qtime_after_.push_back(0.0);
  }

  double operator()(const std::vector<double>& theta) {
    const int n = obs_.n_qubits;
    const Circuit bound = vqb::bind(ansatz_, theta);
    auto [physical_circuit, report] = transpile(bound, target_);

    // logical qubit -> physical wire after routing
    std::vector<int> pos(std::size_t(n), -1);
    for (std::size_t p = 0; p < report.final_layout.size(); ++p) {
      const int logical = report.final_layout[p];
      if (logical < n) pos[std::size_t(logical)] = int(p);
    }

    const bool noisy_readout = [&] {
      for (int q = 0; q < n; ++q) {
        const Eigen::Matrix2d m = model_.readout_confusion(pos[std::size_t(q)]);
        if (m(1, 0) != 0.0 || m(0, 1) != 0.0) return true;
      }
      return false;
    }();
    Eigen::MatrixXd confusion;
    if (noisy_readout) {
      std::vector<int> physical(pos.begin(), pos.end());
      confusion = build_confusion(model_, physical);
    }

    double energy = 0.0;
    double eval_qtime = 0.0;
    for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
      const auto& group = groups_[gi];
      Circuit full = physical_circuit;
      append_group_suffix(full, group, pos);
      const DensityMatrix rho = run_density(full, model_);

      // marginalize the physical distribution onto the logical register
      const std::vector<double> phys_probs = rho.probabilities();
      std::vector<double> probs(std::size_t(1) << n, 0.0);
      for (std::size_t b = 0; b < phys_probs.size(); ++b) {
        std::size_t idx = 0;
        for (int q = 0; q < n; ++q)
          idx |= ((b >> pos[std::size_t(q)]) & 1) << q;
        probs[idx] += phys_probs[b];
      }
      if (noisy_readout) {
        Eigen::VectorXd p(Eigen::Index(probs.size()));
        for (std::size_t i = 0; i < probs.size(); ++i) p(Eigen::Index(i)) = probs[i];
        Eigen::VectorXd observed = confusion * p;
        for (std::size_t i = 0; i < probs.size(); ++i)
          probs[i] = std::max(observed(Eigen::Index(i)), 0.0);
      }

      std::vector<double> distribution;
      if (config_.exact) {
        distribution = probs;
      } else {
        std::mt19937_64 rng(derive_seed(config_.master_seed, "measure",
                                        std::uint64_t(seed_id_),
                                        std::uint64_t(eval_index_),
                                        std::uint64_t(gi)));
        const auto counts = sample_counts(probs, config_.shots, rng);
        distribution.assign(counts.size(), 0.0);
        for (std::size_t i = 0; i < counts.size(); ++i)
          distribution[i] = double(counts[i]) / double(config_.shots);
        if (config_.mitigate && noisy_readout)
          distribution = mitigate(distribution, confusion);
      }

      for (const auto& t : group.terms) {
        if (t.is_identity())
          energy += t.coefficient;
        else
          energy += t.coefficient * term_expectation(distribution, t);
      }
      if (has_durations_ && !config_.exact)
        eval_qtime += double(config_.shots) *
                      estimate_duration(full, model_.calibration());
    }
    ++eval_index_;
    qtime_after_.push_back(qtime_after_.back() + eval_qtime);
    return energy;
  }

  double quantum_time_after(long evaluations) const {
    if (evaluations < 0 || std::size_t(evaluations) >= qtime_after_.size())
      throw ContractError("quantum_time_after: evaluation index out of range");
    return qtime_after_[std::size_t(evaluations)];
  }

 private:
  void append_group_suffix(Circuit& full, const MeasurementGroup& group,
                           const std::vector<int>& pos) const {
    Circuit suffix;
    suffix.n_qubits = full.n_qubits;
    for (int q = 0; q < obs_.n_qubits; ++q) {
      const int p = pos[std::size_t(q)];
      switch (group.basis[std::size_t(q)]) {
        case 'Z': break;
        case 'X': suffix.add(GateKind::RY, {p}, -std::numbers::pi / 2.0); break;
        case 'Y': suffix.add(GateKind::RX, {p}, std::numbers::pi / 2.0); break;
        default: throw ContractError("bad group basis");
      }
    }
    suffix = decompose(suffix, target_.basis);
    for (auto& g : suffix.gates) full.gates.push_back(std::move(g));
    std::vector<int> measured(pos.begin(), pos.end());
    full.add(GateKind::Measure, measured);
  }

  const Observable& obs_;
  const std::vector<MeasurementGroup>& groups_;
  const Circuit& ansatz_;
  const TranspileTarget& target_;
  const NoiseModel& model_;
  bool has_durations_;
  const ExperimentConfig& config_;
  int seed_id_;
  long eval_index_ = 0;
  std::vector<double> qtime_after_;  // cumulative, indexed by evaluation count
};

RunRecord run_one_seed(const ExperimentConfig& config, const Observable& obs,
                       const std::vector<MeasurementGroup>& groups,
                       const Circuit& ansatz, const TranspileTarget& target,
                       const NoiseModel& model, bool has_durations,
                       int seed_id) {
  const int n_params = ansatz.parameter_count();
  std::mt19937_64 init_rng(
      derive_seed(config.master_seed, "init", std::uint64_t(seed_id)));
  std::vector<double> x0(static_cast<std::size_t>(n_params));
  for (auto& v : x0) v = uniform_range(init_rng, config.init_low, config.init_high);

  EnergyEvaluator energy(obs, groups, ansatz, target, model, has_durations,
                         config, seed_id);
  CostEvaluator evaluator{[&](const std::vector<double>& x) { return energy(x); }};

  OptimizerTrace trace;
  if (config.optimizer == "nft") {
    trace = nft_minimize(evaluator, x0, config.iterations,
                         config.nft_reset_interval);
  } else if (config.optimizer == "spsa") {
    trace = spsa_minimize(
        evaluator, x0, config.iterations, config.spsa,
        derive_seed(config.master_seed, "spsa", std::uint64_t(seed_id)));
  } else {
    trace = nelder_mead_minimize(evaluator, x0, config.iterations,
                                 config.nelder_mead);
  }

  RunRecord record;
  record.seed_id = seed_id;
  record.config_hash = config_hash(config);
  for (std::size_t i = 0; i < trace.entries.size(); ++i) {
    const auto& e = trace.entries[i];
    IterationRecord ir;
    ir.iteration = int(i) + 1;
    ir.energy_ha = e.cost;
    ir.evaluations = e.evaluations;
    ir.quantum_time_s = energy.quantum_time_after(e.evaluations);
    ir.parameters = e.parameters;
    record.iterations.push_back(std::move(ir));
  }
  if (record.iterations.empty())
    throw ContractError("optimizer produced an empty trace");
  record.final_energy = record.iterations.back().energy_ha;
  record.minimum_energy = record.final_energy;
  for (const auto& ir : record.iterations)
    record.minimum_energy = std::min(record.minimum_energy, ir.energy_ha);
  record.evaluations = record.iterations.back().evaluations;
  record.quantum_time_s = record.iterations.back().quantum_time_s;
  return record;
}

}  // namespace

std::vector<RunRecord> run_vqe(const ExperimentConfig& config,
                               const Observable& obs) {
  config.validate();
  const TranspileTarget target = load_target_file(config.target);
  NoiseModel model = NoiseModel::none();
  bool has_durations = false;
  if (!config.calibration.empty()) {
    CalibrationData cal = load_calibration_file(config.calibration);
    has_durations = cal.duration_1q.has_value();
    model = NoiseModel::build(std::move(cal), config.thermal);
  }
  const auto groups = group_terms(obs);
  const Circuit ansatz = build_ry_cnot_ansatz(obs.n_qubits);

  std::vector<std::future<RunRecord>> futures;
  for (int seed = 0; seed < config.seeds; ++seed)
    futures.push_back(std::async(std::launch::async, [&, seed] {
      return run_one_seed(config, obs, groups, ansatz, target, model,
                          has_durations, seed);
    }));
  std::vector<RunRecord> records;
  for (auto& f : futures) records.push_back(f.get());
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) {
              return a.seed_id < b.seed_id;
            });
  return records;
}

std::vector<RunRecord> run_vqe(const ExperimentConfig& config) {
  config.validate();
  std::ifstream in(config.observable);
  if (!in) throw ParseError("cannot open observable file: " + config.observable);
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_vqe(config, parse_observable(buf.str()));
}

AggregateSummary aggregate(const std::vector<RunRecord>& records, double e_fci,
                           int exclude_worst) {
  if (records.empty()) throw ContractError("aggregate: no records");
  if (exclude_worst < 0 || exclude_worst >= int(records.size()))
    throw ContractError("aggregate: cannot exclude that many seeds");

  std::vector<const RunRecord*> kept;
  for (const auto& r : records) kept.push_back(&r);
  std::stable_sort(kept.begin(), kept.end(),
                   [&](const RunRecord* a, const RunRecord* b) {
                     return std::abs(a->final_energy - e_fci) >
                            std::abs(b->final_energy - e_fci);
                   });
  AggregateSummary s;
  s.e_fci = e_fci;
  for (int i = 0; i < exclude_worst; ++i)
    s.excluded_seeds.push_back(kept[std::size_t(i)]->seed_id);
  std::sort(s.excluded_seeds.begin(), s.excluded_seeds.end());
  kept.erase(kept.begin(), kept.begin() + exclude_worst);
  std::sort(kept.begin(), kept.end(),
            [](const RunRecord* a, const RunRecord* b) {
              return a->seed_id < b->seed_id;
            });
  s.seeds_used = int(kept.size());

  auto mean_std = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double var = 0.0;
    if (v.size() > 1) {
      for (double x : v) var += (x - mean) * (x - mean);
      var /= double(v.size() - 1);
    }
    return std::make_pair(mean, std::sqrt(var));
  };

  std::vector<double> finals, minima, qtimes, last4;
  for (const RunRecord* r : kept) {
    finals.push_back(r->final_energy);
    minima.push_back(r->minimum_energy);
    qtimes.push_back(r->quantum_time_s);
    const std::size_t n = r->iterations.size();
    for (std::size_t i = n >= 4 ? n - 4 : 0; i < n; ++i)
      last4.push_back(std::abs(r->iterations[i].energy_ha - e_fci));
  }
  std::tie(s.mean_final, s.std_final) = mean_std(finals);
  std::tie(s.mean_minimum, s.std_minimum) = mean_std(minima);
  std::tie(s.mean_last4_error, s.std_last4) = mean_std(last4);
  double ferr = 0.0;
  for (double f : finals) ferr += std::abs(f - e_fci);
  s.mean_final_error = ferr / double(finals.size());
  double qt = 0.0;
  for (double q : qtimes) qt += q;
  s.mean_quantum_time_s = qt / double(qtimes.size());
  return s;
}

std::vector<ScanPoint> distance_scan(
    const std::vector<std::pair<double, Observable>>& table,
    const ExperimentConfig& config) {
  if (table.empty()) throw ContractError("distance_scan: empty table");
  std::vector<ScanPoint> points;
  for (const auto& [distance, obs] : table) {
    const auto records = run_vqe(config, obs);
    ScanPoint p;
    p.distance_angstrom = distance;
    p.e_fci = exact_ground_energy(obs);
    p.vqe_minimum = records.front().minimum_energy;
    for (const auto& r : records)
      p.vqe_minimum = std::min(p.vqe_minimum, r.minimum_energy);
    points.push_back(p);
  }
  return points;
}

std::string serialize_record(const RunRecord& record,
                             const ExperimentConfig& config) {
  std::ostringstream out;
  json header = {{"type", "config"},
                 {"hash", record.config_hash},
                 {"text", serialize_experiment_config(config)}};
  out << header.dump() << "\n";
  for (const auto& ir : record.iterations) {
    json line = {{"type", "iteration"},
                 {"seed", record.seed_id},
                 {"iteration", ir.iteration},
                 {"energy_ha", ir.energy_ha},
                 {"evals", ir.evaluations},
                 {"quantum_time_s", ir.quantum_time_s},
                 {"parameters", ir.parameters}};
    out << line.dump() << "\n";
  }
  json tail = {{"type", "summary"},
               {"seed", record.seed_id},
               {"final_energy", record.final_energy},
               {"minimum_energy", record.minimum_energy},
               {"evaluations", record.evaluations},
               {"quantum_time_s", record.quantum_time_s}};
  out << tail.dump() << "\n";
  return out.str();
}

RunRecord parse_record(const std::string& text) {
  RunRecord record;
  std::istringstream in(text);
  std::string line;
  bool saw_summary = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError("record line " + std::to_string(lineno) + ": " +
                       e.what());
    }
    const std::string type = j.value("type", "");
    if (type == "config") {
      record.config_hash = j.value("hash", "");
    } else if (type == "iteration") {
      IterationRecord ir;
      record.seed_id = j.at("seed").get<int>();
      ir.iteration = j.at("iteration").get<int>();
      ir.energy_ha = j.at("energy_ha").get<double>();
      ir.evaluations = j.at("evals").get<long>();
      ir.quantum_time_s = j.at("quantum_time_s").get<double>();
      ir.parameters = j.at("parameters").get<std::vector<double>>();
      record.iterations.push_back(std::move(ir));
    } else if (type == "summary") {
      record.seed_id = j.at("seed").get<int>();
      record.final_energy = j.at("final_energy").get<double>();
      record.minimum_energy = j.at("minimum_energy").get<double>();
      record.evaluations = j.at("evaluations").get<long>();
      record.quantum_time_s = j.at("quantum_time_s").get<double>();
      saw_summary = true;
    } else {
      throw ParseError("record line " + std::to_string(lineno) +
                       ": unknown type '" + type + "'");
    }
  }
  if (record.iterations.empty() || !saw_summary)
    throw ParseError("record file is incomplete");
  return record;
}

void write_records(const std::string& directory,
                   const std::vector<RunRecord>& records,
                   const ExperimentConfig& config,
                   const AggregateSummary& summary) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  for (const auto& r : records) {
    const fs::path path =
        fs::path(directory) / ("seed" + std::to_string(r.seed_id) + ".record");
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write record file: " + path.string());
    out << serialize_record(r, config);
  }
  std::ofstream out(fs::path(directory) / "summary");
  if (!out) throw ConfigError("cannot write summary file");
  out.setf(std::ios::fixed);
  out.precision(6);
  out << "seeds_used " << summary.seeds_used << "\n";
  out << "excluded";
  if (summary.excluded_seeds.empty()) out << " none";
  for (int s : summary.excluded_seeds) out << " " << s;
  out << "\n";
  out << "e_fci_ha " << summary.e_fci << "\n"
      << "mean_final_ha " << summary.mean_final << "\n"
      << "std_final_ha " << summary.std_final << "\n"
      << "mean_minimum_ha " << summary.mean_minimum << "\n"
      << "std_minimum_ha " << summary.std_minimum << "\n"
      << "mean_final_error_ha " << summary.mean_final_error << "\n"
      << "mean_last4_error_ha " << summary.mean_last4_error << "\n"
      << "std_last4_ha " << summary.std_last4 << "\n"
      << "mean_quantum_time_s " << summary.mean_quantum_time_s << "\n"
      << "config_hash " << config_hash(config) << "\n";
}

std::vector<RunRecord> read_records(const std::string& directory) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory))
    throw ParseError("not a run directory: " + directory);
  std::vector<RunRecord> records;
  for (const auto& entry : fs::directory_iterator(directory)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("seed", 0) != 0 || entry.path().extension() != ".record")
      continue;
    std::ifstream in(entry.path());
    std::ostringstream buf;
    buf << in.rdbuf();
    records.push_back(parse_record(buf.str()));
  }
  if (records.empty())
    throw ParseError("no seed*.record files in " + directory);
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) {
              return a.seed_id < b.seed_id;
            });
  return records;
}

}  // namespace vqb
