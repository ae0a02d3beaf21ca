/* C interface to the vqbench core library.
 *
 * All functions return VQB_OK (0) on success or a nonzero error code.
 * After a failure, vqb_last_error() returns a thread-local message that
 * stays valid until the next failing call on the same thread. Handles are
 * opaque; every constructor has a matching destructor, and freeing NULL is
 * a no-op. Strings returned through char** are malloc'd; release them with
 * vqb_string_free.
 */

#ifndef VQBENCH_H
#define VQBENCH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  VQB_OK = 0,
  VQB_ERR_PARSE = 1,
  VQB_ERR_CONFIG = 2,
  VQB_ERR_CONTRACT = 3,
  VQB_ERR_ROUTING = 4,
  VQB_ERR_IO = 5,
  VQB_ERR_INTERNAL = 6,
};

const char* vqb_last_error(void);
void vqb_string_free(char* s);

/* ---- observables ---- */

typedef struct vqb_observable vqb_observable;

int vqb_observable_load(const char* path, vqb_observable** out);
void vqb_observable_free(vqb_observable* obs);
int vqb_observable_n_qubits(const vqb_observable* obs);
int vqb_observable_n_terms(const vqb_observable* obs);
/* Smallest eigenvalue by exact diagonalization. */
int vqb_observable_ground_energy(const vqb_observable* obs, double* out);

/* ---- transpilation ---- */

typedef struct {
  int depth;            /* measurement layer excluded */
  int total_gates;
  int two_qubit_gates;
} vqb_transpile_counts;

/* Transpile the standard n-qubit RY + circular-CNOT ansatz (bound at
 * generic angles) to the target file. *out_text receives a readable
 * report: counts, per-kind histogram, initial/final layout. Either out
 * pointer may be NULL. */
int vqb_transpile_ansatz(const char* target_path, int n_qubits,
                         vqb_transpile_counts* out_counts, char** out_text);

/* Estimated schedule duration in seconds for the same ansatz (with a
 * final measurement layer) against a target + calibration pair. */
int vqb_estimate_ansatz_duration(const char* target_path,
                                 const char* calibration_path, int n_qubits,
                                 double* out_seconds);

/* ---- experiments ---- */

typedef struct vqb_config vqb_config;

int vqb_config_load(const char* path, vqb_config** out);
/* Defaults only; populate with vqb_config_set. */
int vqb_config_new(vqb_config** out);
/* Same keys as the config file format, e.g. ("seeds", "9"). */
int vqb_config_set(vqb_config* cfg, const char* key, const char* value);
void vqb_config_free(vqb_config* cfg);

typedef struct {
  int seeds_used;
  double e_fci;
  double mean_final, std_final;
  double mean_minimum, std_minimum;
  double mean_final_error;
  double mean_last4_error, std_last4;
  double mean_quantum_time_s;
} vqb_summary;

/* Run the configured experiment (one optimizer run per seed). Writes
 * per-seed record files plus a summary into out_dir when it is non-NULL.
 * exclude_worst seeds (by |final - E_FCI|) are dropped from the summary
 * statistics only; their records are still written. */
int vqb_run_vqe(const vqb_config* cfg, const char* out_dir, int exclude_worst,
                vqb_summary* out_summary);

/* Bond-distance scan: one experiment per observable file, minimum energy
 * across all seeds and iterations vs the exact value. Writes a CSV
 * (distance_angstrom,vqe_minimum_ha,e_fci_ha) to out_csv_path. */
int vqb_distance_scan(const vqb_config* cfg, const double* distances,
                      const char* const* observable_paths, int n_points,
                      const char* out_csv_path);

/* ---- reporting ---- */

/* Re-export a run directory as the stable per-iteration CSV. */
int vqb_export_csv(const char* run_dir, char** out_csv);

/* Render one SVG figure. kind is one of: convergence, energy_error_box,
 * distance_curve, gate_count_bars, optimizer_comparison. inputs are run
 * directories, a scan CSV, or target files depending on the kind.
 * observable_path supplies the E_FCI reference line where energies are
 * plotted; pass NULL for the kinds that do not draw energies. */
int vqb_render_report(const char* kind, const char* const* inputs,
                      int n_inputs, int exclude_outliers,
                      const char* observable_path, char** out_svg);

#ifdef __cplusplus
}
#endif

#endif /* VQBENCH_H */
