#pragma once

#include <string>
#include <vector>

#include "engine/engine.hpp"

namespace vqb {

enum class PlotKind {
  Convergence,
  EnergyErrorBox,
  DistanceCurve,
  GateCountBars,
  OptimizerComparison,
};

PlotKind plot_kind_from_name(const std::string& name);
const char* plot_kind_name(PlotKind kind);

/// What to draw: inputs are run directories (convergence, error box,
/// optimizer comparison), a scan CSV (distance curve), or target files
/// (gate count bars).
struct ReportSpec {
  PlotKind kind = PlotKind::Convergence;
  std::vector<std::string> inputs;
  std::string output_path;
  int exclude_outliers = 0;
};

/// Per-iteration table, one row per (seed, iteration):
/// `seed,iteration,energy_ha,evals,quantum_time_s`. Numbers carry enough
/// digits to round-trip at 12 significant figures.
std::string render_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_csv(const std::string& text);

std::string render_scan_csv(const std::vector<ScanPoint>& points);
std::vector<ScanPoint> parse_scan_csv(const std::string& text);

/// Self-contained deterministic SVG (inline styling only). Every figure
/// draws the E_FCI reference line where energies appear and embeds the
/// config hash as a metadata text element.
std::string render_svg(const ReportSpec& spec, double e_fci,
                       const std::string& config_hash_hex);

}  // namespace vqb
