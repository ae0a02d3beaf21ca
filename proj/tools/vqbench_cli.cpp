// vqbench command-line front end. Talks to the core library exclusively
// through the C API in vqbench.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vqbench.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

int fail(int rc) {
  std::cerr << "error: " << vqb_last_error() << "\n";
  (void)rc;
  return kExitValidation;
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  vqb_string_free(s);
  return out;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << content;
  return true;
}

int cmd_ham(const std::string& path) {
  vqb_observable* obs = nullptr;
  if (int rc = vqb_observable_load(path.c_str(), &obs)) return fail(rc);
  double energy = 0.0;
  if (int rc = vqb_observable_ground_energy(obs, &energy)) {
    vqb_observable_free(obs);
    return fail(rc);
  }
  std::printf("observable: %s\n", path.c_str());
  std::printf("qubits: %d\n", vqb_observable_n_qubits(obs));
  std::printf("terms: %d\n", vqb_observable_n_terms(obs));
  std::printf("E_FCI: %.6f Ha\n", energy);
  vqb_observable_free(obs);
  return kExitOk;
}

int cmd_transpile(const std::string& target, const std::string& calibration,
                  int qubits) {
  char* text = nullptr;
  if (int rc = vqb_transpile_ansatz(target.c_str(), qubits, nullptr, &text))
    return fail(rc);
  std::cout << take_string(text);
  if (!calibration.empty()) {
    double seconds = 0.0;
    if (int rc = vqb_estimate_ansatz_duration(target.c_str(),
                                              calibration.c_str(), qubits,
                                              &seconds))
      return fail(rc);
    std::printf("estimated duration: %.9f s\n", seconds);
  }
  return kExitOk;
}

struct Overrides {
  std::vector<std::pair<std::string, std::string>> entries;
  void add(const std::string& key, const std::string& value) {
    entries.push_back({key, value});
  }
};

int apply_overrides(vqb_config* cfg, const Overrides& ov) {
  for (const auto& [key, value] : ov.entries)
    if (int rc = vqb_config_set(cfg, key.c_str(), value.c_str())) return rc;
  return VQB_OK;
}

void print_summary(const vqb_summary& s) {
  std::printf("seeds used: %d\n", s.seeds_used);
  std::printf("E_FCI: %.6f Ha\n", s.e_fci);
  std::printf("mean final energy: %.6f +/- %.6f Ha (over seeds)\n",
              s.mean_final, s.std_final);
  std::printf("mean minimum energy: %.6f +/- %.6f Ha (over seeds)\n",
              s.mean_minimum, s.std_minimum);
  std::printf("mean |final - E_FCI|: %.6f Ha\n", s.mean_final_error);
  std::printf("last-4-iteration error: %.6f +/- %.6f Ha (pooled)\n",
              s.mean_last4_error, s.std_last4);
  std::printf("mean quantum time: %.6f s\n", s.mean_quantum_time_s);
}

int cmd_vqe(const std::string& config_path, const Overrides& ov,
            const std::string& out_dir, int exclude) {
  vqb_config* cfg = nullptr;
  int rc = config_path.empty() ? vqb_config_new(&cfg)
                               : vqb_config_load(config_path.c_str(), &cfg);
  if (rc) return fail(rc);
  if ((rc = apply_overrides(cfg, ov))) {
    vqb_config_free(cfg);
    return fail(rc);
  }
  vqb_summary summary{};
  rc = vqb_run_vqe(cfg, out_dir.empty() ? nullptr : out_dir.c_str(), exclude,
                   &summary);
  vqb_config_free(cfg);
  if (rc) return fail(rc);
  print_summary(summary);
  if (!out_dir.empty()) std::printf("records written to %s\n", out_dir.c_str());
  return kExitOk;
}

// Bond distance comes from the file name: <anything>_<distance>.obs
bool distance_from_name(const std::string& path, double* out) {
  const auto slash = path.find_last_of('/');
  const std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto us = name.find_last_of('_');
  const auto dot = name.rfind(".obs");
  if (us == std::string::npos || dot == std::string::npos || dot <= us + 1)
    return false;
  try {
    std::size_t used = 0;
    *out = std::stod(name.substr(us + 1, dot - us - 1), &used);
    return used == dot - us - 1;
  } catch (const std::logic_error&) {
    return false;
  }
}

int cmd_scan(const std::string& config_path, const Overrides& ov,
             const std::vector<std::string>& observables,
             const std::string& out_csv) {
  std::vector<double> distances;
  std::vector<const char*> paths;
  for (const auto& p : observables) {
    double d = 0.0;
    if (!distance_from_name(p, &d)) {
      std::cerr << "error: cannot read a bond distance from '" << p
                << "' (expected <name>_<distance>.obs)\n";
      return kExitValidation;
    }
    distances.push_back(d);
    paths.push_back(p.c_str());
  }
  vqb_config* cfg = nullptr;
  int rc = config_path.empty() ? vqb_config_new(&cfg)
                               : vqb_config_load(config_path.c_str(), &cfg);
  if (rc) return fail(rc);
  if ((rc = apply_overrides(cfg, ov))) {
    vqb_config_free(cfg);
    return fail(rc);
  }
  rc = vqb_distance_scan(cfg, distances.data(), paths.data(),
                         int(paths.size()), out_csv.c_str());
  vqb_config_free(cfg);
  if (rc) return fail(rc);
  std::printf("scan written to %s\n", out_csv.c_str());
  return kExitOk;
}

int cmd_report(const std::string& kind, const std::vector<std::string>& inputs,
               const std::string& out_path, const std::string& observable,
               int exclude, bool as_csv) {
  if (as_csv) {
    char* csv = nullptr;
    if (int rc = vqb_export_csv(inputs.front().c_str(), &csv)) return fail(rc);
    return write_file(out_path, take_string(csv)) ? kExitOk : kExitValidation;
  }
  std::vector<const char*> raw;
  for (const auto& i : inputs) raw.push_back(i.c_str());
  char* svg = nullptr;
  if (int rc = vqb_render_report(kind.c_str(), raw.data(), int(raw.size()),
                                 exclude,
                                 observable.empty() ? nullptr : observable.c_str(),
                                 &svg))
    return fail(rc);
  return write_file(out_path, take_string(svg)) ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VQE hardware benchmarking toolkit"};
  app.require_subcommand(1);

  std::string obs_path;
  auto* ham = app.add_subcommand("ham", "Diagonalize an observable file");
  ham->add_option("observable", obs_path, "Pauli observable file")->required();

  std::string target_path, cal_path;
  int qubits = 4;
  auto* transpile =
      app.add_subcommand("transpile", "Transpile the RY-CNOT ansatz");
  transpile->add_option("--target", target_path, "Target file")->required();
  transpile->add_option("--calibration", cal_path,
                        "Also print the estimated schedule duration");
  transpile->add_option("--qubits", qubits, "Ansatz width")->check(CLI::Range(2, 16));

  std::string config_path, out_dir;
  int seeds = 0, shots = 0, iterations = 0, exclude = 0;
  std::uint64_t seed_master = 0;
  bool mitigate = false, thermal = false;
  auto* vqe = app.add_subcommand("vqe", "Run a VQE experiment");
  vqe->add_option("--config", config_path, "Experiment config file");
  auto* vqe_target = vqe->add_option("--target", target_path, "Target file");
  auto* vqe_seeds = vqe->add_option("--seeds", seeds, "Seed count");
  auto* vqe_shots = vqe->add_option("--shots", shots, "Shots per group");
  auto* vqe_iters = vqe->add_option("--iterations", iterations, "Iterations");
  vqe->add_flag("--mitigate", mitigate, "Enable readout mitigation");
  vqe->add_flag("--thermal", thermal, "Enable thermal relaxation");
  vqe->add_option("--exclude-outliers", exclude,
                  "Seeds dropped from summary statistics");
  vqe->add_option("--out", out_dir, "Directory for run records");
  auto* vqe_master = vqe->add_option("--seed-master", seed_master, "Master seed");

  std::vector<std::string> scan_obs;
  std::string scan_out = "scan.csv";
  auto* scan = app.add_subcommand("scan", "Bond distance scan");
  scan->add_option("--config", config_path, "Experiment config file");
  auto* scan_target = scan->add_option("--target", target_path, "Target file");
  auto* scan_seeds = scan->add_option("--seeds", seeds, "Seed count");
  auto* scan_shots = scan->add_option("--shots", shots, "Shots per group");
  auto* scan_iters = scan->add_option("--iterations", iterations, "Iterations");
  auto* scan_master = scan->add_option("--seed-master", seed_master, "Master seed");
  scan->add_option("--out", scan_out, "Output CSV path");
  scan->add_option("observables", scan_obs,
                   "Observable files named <name>_<distance>.obs")
      ->required();

  std::string kind = "convergence", report_out = "report.svg", report_obs;
  std::vector<std::string> report_inputs;
  bool as_csv = false;
  auto* report = app.add_subcommand("report", "Render a figure or CSV");
  report->add_option("--kind", kind,
                     "convergence | energy_error_box | distance_curve | "
                     "gate_count_bars | optimizer_comparison");
  report->add_option("--out", report_out, "Output path")->required();
  report->add_option("--observable", report_obs,
                     "Observable for the E_FCI reference line");
  report->add_option("--exclude-outliers", exclude,
                     "Seeds excluded from the mean/band");
  report->add_flag("--csv", as_csv, "Export the run directory CSV instead");
  report->add_option("inputs", report_inputs,
                     "Run directories, scan CSV, or target files")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Overrides ov;
  if (vqe_target->count() || scan_target->count()) ov.add("target", target_path);
  if (vqe_seeds->count() || scan_seeds->count())
    ov.add("seeds", std::to_string(seeds));
  if (vqe_shots->count() || scan_shots->count())
    ov.add("shots", std::to_string(shots));
  if (vqe_iters->count() || scan_iters->count())
    ov.add("iterations", std::to_string(iterations));
  if (vqe_master->count() || scan_master->count())
    ov.add("master_seed", std::to_string(seed_master));
  if (mitigate) ov.add("mitigate", "on");
  if (thermal) ov.add("thermal", "on");

  if (ham->parsed()) return cmd_ham(obs_path);
  if (transpile->parsed()) return cmd_transpile(target_path, cal_path, qubits);
  if (vqe->parsed()) return cmd_vqe(config_path, ov, out_dir, exclude);
  if (scan->parsed()) return cmd_scan(config_path, ov, scan_obs, scan_out);
  if (report->parsed())
    return cmd_report(kind, report_inputs, report_out, report_obs, exclude,
                      as_csv);
  return kExitUsage;
}
