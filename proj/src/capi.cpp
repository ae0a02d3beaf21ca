#include "vqbench.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "core/circuit.hpp"
#include "core/errors.hpp"
#include "core/pauli.hpp"
#include "engine/config.hpp"
#include "engine/engine.hpp"
#include "noise/calibration.hpp"
#include "report/report.hpp"
#include "transpile/passes.hpp"
#include "transpile/target.hpp"

namespace {

thread_local std::string g_last_error;

template <typename F>
int guarded(F&& f) {
  try {
    f();
    return VQB_OK;
  } catch (const vqb::ParseError& e) {
    g_last_error = e.what();
    return VQB_ERR_PARSE;
  } catch (const vqb::ConfigError& e) {
    g_last_error = e.what();
    return VQB_ERR_CONFIG;
  } catch (const vqb::ContractError& e) {
    g_last_error = e.what();
    return VQB_ERR_CONTRACT;
  } catch (const vqb::RoutingError& e) {
    g_last_error = e.what();
    return VQB_ERR_ROUTING;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VQB_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int require(bool ok, const char* message) {
  if (ok) return VQB_OK;
  g_last_error = message;
  return VQB_ERR_CONTRACT;
}

vqb::Circuit generic_ansatz(int n_qubits) {
  vqb::Circuit ansatz = vqb::build_ry_cnot_ansatz(n_qubits);
  std::vector<double> theta(static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) theta[std::size_t(q)] = 0.5 + 0.1 * q;
  return vqb::bind(ansatz, theta);
}

}  // namespace

struct vqb_observable {
  vqb::Observable obs;
};

struct vqb_config {
  vqb::ExperimentConfig cfg;
};

extern "C" {

const char* vqb_last_error(void) { return g_last_error.c_str(); }

void vqb_string_free(char* s) { std::free(s); }

int vqb_observable_load(const char* path, vqb_observable** out) {
  if (int rc = require(path && out, "observable_load: null argument")) return rc;
  return guarded([&] {
    std::ifstream in(path);
    if (!in) throw vqb::ParseError(std::string("cannot open observable file: ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    *out = new vqb_observable{vqb::parse_observable(buf.str())};
  });
}

void vqb_observable_free(vqb_observable* obs) { delete obs; }

int vqb_observable_n_qubits(const vqb_observable* obs) {
  return obs ? obs->obs.n_qubits : 0;
}

int vqb_observable_n_terms(const vqb_observable* obs) {
  return obs ? int(obs->obs.terms.size()) : 0;
}

int vqb_observable_ground_energy(const vqb_observable* obs, double* out) {
  if (int rc = require(obs && out, "ground_energy: null argument")) return rc;
  return guarded([&] { *out = vqb::exact_ground_energy(obs->obs); });
}

int vqb_transpile_ansatz(const char* target_path, int n_qubits,
                         vqb_transpile_counts* out_counts, char** out_text) {
  if (int rc = require(target_path && n_qubits >= 2,
                       "transpile_ansatz: need a target path and >= 2 qubits"))
    return rc;
  return guarded([&] {
    const vqb::TranspileTarget target = vqb::load_target_file(target_path);
    auto [circuit, report] = vqb::transpile(generic_ansatz(n_qubits), target);
    if (out_counts)
      *out_counts = {report.depth, report.total_gates, report.two_qubit_gates};
    if (out_text) {
      std::ostringstream text;
      text << "target: " << target.name << "\n"
           << "depth: " << report.depth << "\n"
           << "total gates: " << report.total_gates << "\n"
           << "two-qubit gates: " << report.two_qubit_gates << "\n";
      for (const auto& [kind, count] : report.histogram)
        text << "  " << vqb::gate_name(kind) << ": " << count << "\n";
      text << "final layout (physical->logical):";
      for (int l : report.final_layout) text << " " << l;
      text << "\n";
      *out_text = dup_string(text.str());
    }
  });
}

int vqb_estimate_ansatz_duration(const char* target_path,
                                 const char* calibration_path, int n_qubits,
                                 double* out_seconds) {
  if (int rc = require(target_path && calibration_path && out_seconds &&
                           n_qubits >= 2,
                       "estimate_duration: null argument"))
    return rc;
  return guarded([&] {
    const vqb::TranspileTarget target = vqb::load_target_file(target_path);
    const vqb::CalibrationData cal = vqb::load_calibration_file(calibration_path);
    auto [circuit, report] = vqb::transpile(generic_ansatz(n_qubits), target);
    for (int q = 0; q < n_qubits; ++q)
      circuit.add(vqb::GateKind::Measure, {q});
    *out_seconds = vqb::estimate_duration(circuit, cal);
  });
}

int vqb_config_load(const char* path, vqb_config** out) {
  if (int rc = require(path && out, "config_load: null argument")) return rc;
  return guarded([&] {
    *out = new vqb_config{vqb::load_experiment_config(path)};
  });
}

int vqb_config_new(vqb_config** out) {
  if (int rc = require(out != nullptr, "config_new: null argument")) return rc;
  return guarded([&] { *out = new vqb_config{}; });
}

int vqb_config_set(vqb_config* cfg, const char* key, const char* value) {
  if (int rc = require(cfg && key && value, "config_set: null argument"))
    return rc;
  return guarded([&] {
    // Route through the file parser so validation and key names stay in
    // one place: serialize, append the override, reparse (last key wins).
    const std::string text = vqb::serialize_experiment_config(cfg->cfg) +
                             std::string(key) + " " + value + "\n";
    cfg->cfg = vqb::parse_experiment_config(text);
  });
}

void vqb_config_free(vqb_config* cfg) { delete cfg; }

int vqb_run_vqe(const vqb_config* cfg, const char* out_dir, int exclude_worst,
                vqb_summary* out_summary) {
  if (int rc = require(cfg != nullptr, "run_vqe: null config")) return rc;
  return guarded([&] {
    cfg->cfg.validate();
    const auto records = vqb::run_vqe(cfg->cfg);
    std::ifstream in(cfg->cfg.observable);
    if (!in)
      throw vqb::ParseError("cannot open observable file: " + cfg->cfg.observable);
    std::ostringstream buf;
    buf << in.rdbuf();
    const double e_fci =
        vqb::exact_ground_energy(vqb::parse_observable(buf.str()));
    const auto summary = vqb::aggregate(records, e_fci, exclude_worst);
    if (out_dir) vqb::write_records(out_dir, records, cfg->cfg, summary);
    if (out_summary) {
      *out_summary = {summary.seeds_used,      summary.e_fci,
                      summary.mean_final,      summary.std_final,
                      summary.mean_minimum,    summary.std_minimum,
                      summary.mean_final_error, summary.mean_last4_error,
                      summary.std_last4,       summary.mean_quantum_time_s};
    }
  });
}

int vqb_distance_scan(const vqb_config* cfg, const double* distances,
                      const char* const* observable_paths, int n_points,
                      const char* out_csv_path) {
  if (int rc = require(cfg && distances && observable_paths && out_csv_path &&
                           n_points > 0,
                       "distance_scan: null argument"))
    return rc;
  return guarded([&] {
    std::vector<std::pair<double, vqb::Observable>> table;
    for (int i = 0; i < n_points; ++i) {
      std::ifstream in(observable_paths[i]);
      if (!in)
        throw vqb::ParseError(std::string("cannot open observable file: ") +
                              observable_paths[i]);
      std::ostringstream buf;
      buf << in.rdbuf();
      table.emplace_back(distances[i], vqb::parse_observable(buf.str()));
    }
    const auto points = vqb::distance_scan(table, cfg->cfg);
    std::ofstream out(out_csv_path);
    if (!out)
      throw vqb::ConfigError(std::string("cannot write: ") + out_csv_path);
    out << vqb::render_scan_csv(points);
  });
}

int vqb_export_csv(const char* run_dir, char** out_csv) {
  if (int rc = require(run_dir && out_csv, "export_csv: null argument"))
    return rc;
  return guarded([&] {
    *out_csv = dup_string(vqb::render_csv(vqb::read_records(run_dir)));
  });
}

int vqb_render_report(const char* kind, const char* const* inputs,
                      int n_inputs, int exclude_outliers,
                      const char* observable_path, char** out_svg) {
  if (int rc = require(kind && inputs && out_svg && n_inputs > 0,
                       "render_report: null argument"))
    return rc;
  return guarded([&] {
    vqb::ReportSpec spec;
    spec.kind = vqb::plot_kind_from_name(kind);
    for (int i = 0; i < n_inputs; ++i) spec.inputs.emplace_back(inputs[i]);
    spec.exclude_outliers = exclude_outliers;

    double e_fci = 0.0;
    if (observable_path) {
      std::ifstream in(observable_path);
      if (!in)
        throw vqb::ParseError(std::string("cannot open observable file: ") +
                              observable_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      e_fci = vqb::exact_ground_energy(vqb::parse_observable(buf.str()));
    } else if (spec.kind == vqb::PlotKind::Convergence ||
               spec.kind == vqb::PlotKind::EnergyErrorBox ||
               spec.kind == vqb::PlotKind::OptimizerComparison) {
      throw vqb::ConfigError(
          "render_report: this plot kind needs an observable for E_FCI");
    }

    std::string hash = "n/a";
    if (spec.kind == vqb::PlotKind::Convergence ||
        spec.kind == vqb::PlotKind::EnergyErrorBox ||
        spec.kind == vqb::PlotKind::OptimizerComparison) {
      const auto records = vqb::read_records(spec.inputs.front());
      if (!records.empty() && !records.front().config_hash.empty())
        hash = records.front().config_hash;
    }
    *out_svg = dup_string(vqb::render_svg(spec, e_fci, hash));
  });
}

}  // extern "C"
