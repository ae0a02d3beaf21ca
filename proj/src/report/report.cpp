#include "report/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "core/circuit.hpp"
#include "core/errors.hpp"
#include "transpile/passes.hpp"

namespace vqb {

namespace {

std::string fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// pixel coordinates are printed with fixed precision so output is stable
std::string px(double v) { return fmt(v, 2); }

struct Frame {
  double x0 = 62, x1 = 612, y0 = 368, y1 = 24;  // pixel corners (y grows down)
  double vx0 = 0, vx1 = 1, vy0 = 0, vy1 = 1;    // value ranges

  double x(double v) const { return x0 + (v - vx0) / (vx1 - vx0) * (x1 - x0); }
  double y(double v) const { return y0 + (v - vy0) / (vy1 - vy0) * (y1 - y0); }
};

void pad_range(double& lo, double& hi) {
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = (hi - lo) * 0.06;
  lo -= pad;
  hi += pad;
}

class Svg {
 public:
  Svg(const std::string& title, const std::string& hash) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"660\" "
            "height=\"420\" viewBox=\"0 0 660 420\">\n";
    out_ << "<metadata>config-hash:" << hash << "</metadata>\n";
    out_ << "<rect x=\"0\" y=\"0\" width=\"660\" height=\"420\" "
            "fill=\"#ffffff\"/>\n";
    text(330, 16, title, 13, "middle", "#000000");
    text(654, 414, "config " + hash, 8, "end", "#999999");
  }

  void line(double x1, double y1, double x2, double y2, const std::string& color,
            double width, bool dashed = false) {
    out_ << "<line x1=\"" << px(x1) << "\" y1=\"" << px(y1) << "\" x2=\""
         << px(x2) << "\" y2=\"" << px(y2) << "\" stroke=\"" << color
         << "\" stroke-width=\"" << fmt(width, 1) << "\"";
    if (dashed) out_ << " stroke-dasharray=\"5,3\"";
    out_ << "/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& color, double width) {
    out_ << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"" << fmt(width, 1) << "\" points=\"";
    for (const auto& [x, y] : pts) out_ << px(x) << "," << px(y) << " ";
    out_ << "\"/>\n";
  }

  void polygon(const std::vector<std::pair<double, double>>& pts,
               const std::string& fill) {
    out_ << "<polygon fill=\"" << fill << "\" stroke=\"none\" points=\"";
    for (const auto& [x, y] : pts) out_ << px(x) << "," << px(y) << " ";
    out_ << "\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke) {
    out_ << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\""
         << px(w) << "\" height=\"" << px(h) << "\" fill=\"" << fill
         << "\" stroke=\"" << stroke << "\"/>\n";
  }

  void circle(double x, double y, double r, const std::string& fill) {
    out_ << "<circle cx=\"" << px(x) << "\" cy=\"" << px(y) << "\" r=\""
         << fmt(r, 1) << "\" fill=\"" << fill << "\"/>\n";
  }

  void text(double x, double y, const std::string& s, int size,
            const std::string& anchor, const std::string& color) {
    out_ << "<text x=\"" << px(x) << "\" y=\"" << px(y)
         << "\" font-family=\"sans-serif\" font-size=\"" << size
         << "\" text-anchor=\"" << anchor << "\" fill=\"" << color << "\">" << s
         << "</text>\n";
  }

  void axes(const Frame& f, const std::string& xlabel,
            const std::string& ylabel, int y_decimals, int x_decimals) {
    line(f.x0, f.y0, f.x1, f.y0, "#000000", 1.0);
    line(f.x0, f.y0, f.x0, f.y1, "#000000", 1.0);
    for (int i = 0; i <= 4; ++i) {
      const double vy = f.vy0 + (f.vy1 - f.vy0) * i / 4.0;
      text(f.x0 - 6, f.y(vy) + 3, fmt(vy, y_decimals), 9, "end", "#000000");
      line(f.x0 - 3, f.y(vy), f.x0, f.y(vy), "#000000", 1.0);
    }
    for (int i = 0; i <= 4; ++i) {
      const double vx = f.vx0 + (f.vx1 - f.vx0) * i / 4.0;
      text(f.x(vx), f.y0 + 14, fmt(vx, x_decimals), 9, "middle", "#000000");
      line(f.x(vx), f.y0, f.x(vx), f.y0 + 3, "#000000", 1.0);
    }
    text((f.x0 + f.x1) / 2, 404, xlabel, 11, "middle", "#000000");
    out_ << "<text x=\"14\" y=\"" << px((f.y0 + f.y1) / 2)
         << "\" font-family=\"sans-serif\" font-size=\"11\" "
            "text-anchor=\"middle\" fill=\"#000000\" transform=\"rotate(-90 14 "
         << px((f.y0 + f.y1) / 2) << ")\">" << ylabel << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

std::vector<std::vector<RunRecord>> load_inputs(
    const std::vector<std::string>& inputs) {
  if (inputs.empty()) throw ContractError("report: no input directories");
  std::vector<std::vector<RunRecord>> sets;
  for (const auto& dir : inputs) sets.push_back(read_records(dir));
  return sets;
}

std::vector<const RunRecord*> keep_after_exclusion(
    const std::vector<RunRecord>& records, double e_fci, int exclude) {
  if (exclude < 0 || exclude >= int(records.size()))
    throw ContractError("report: cannot exclude that many seeds");
  std::vector<const RunRecord*> kept;
  for (const auto& r : records) kept.push_back(&r);
  std::stable_sort(kept.begin(), kept.end(),
                   [&](const RunRecord* a, const RunRecord* b) {
                     return std::abs(a->final_energy - e_fci) >
                            std::abs(b->final_energy - e_fci);
                   });
  kept.erase(kept.begin(), kept.begin() + exclude);
  std::sort(kept.begin(), kept.end(),
            [](const RunRecord* a, const RunRecord* b) {
              return a->seed_id < b->seed_id;
            });
  return kept;
}

std::string render_convergence(const ReportSpec& spec, double e_fci,
                               const std::string& hash) {
  const auto records = read_records(spec.inputs.at(0));
  const auto kept = keep_after_exclusion(records, e_fci, spec.exclude_outliers);
  const std::size_t iters = records.front().iterations.size();
  for (const auto& r : records)
    if (r.iterations.size() != iters)
      throw ContractError("report: records have unequal iteration counts");

  std::vector<double> mean(iters, 0.0), sigma(iters, 0.0);
  for (std::size_t i = 0; i < iters; ++i) {
    for (const auto* r : kept) mean[i] += r->iterations[i].energy_ha;
    mean[i] /= double(kept.size());
    double var = 0.0;
    for (const auto* r : kept) {
      const double d = r->iterations[i].energy_ha - mean[i];
      var += d * d;
    }
    sigma[i] = kept.size() > 1 ? std::sqrt(var / double(kept.size() - 1)) : 0.0;
  }

  Frame f;
  f.vx0 = 1;
  f.vx1 = double(iters);
  double lo = e_fci, hi = e_fci;
  for (const auto& r : records)
    for (const auto& ir : r.iterations) {
      lo = std::min(lo, ir.energy_ha);
      hi = std::max(hi, ir.energy_ha);
    }
  pad_range(lo, hi);
  f.vy0 = lo;
  f.vy1 = hi;

  Svg svg("Energy convergence", hash);
  svg.axes(f, "iteration", "energy (Ha)", 6, 0);

  std::vector<std::pair<double, double>> band;
  for (std::size_t i = 0; i < iters; ++i)
    band.push_back({f.x(double(i + 1)), f.y(mean[i] + sigma[i])});
  for (std::size_t i = iters; i-- > 0;)
    band.push_back({f.x(double(i + 1)), f.y(mean[i] - sigma[i])});
  svg.polygon(band, "#d0d8f0");

  for (const auto& r : records) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < iters; ++i)
      pts.push_back({f.x(double(i + 1)), f.y(r.iterations[i].energy_ha)});
    svg.polyline(pts, "#b8b8b8", 0.8);
  }
  std::vector<std::pair<double, double>> mean_pts;
  for (std::size_t i = 0; i < iters; ++i)
    mean_pts.push_back({f.x(double(i + 1)), f.y(mean[i])});
  svg.polyline(mean_pts, "#2040c0", 1.8);

  svg.line(f.x0, f.y(e_fci), f.x1, f.y(e_fci), "#c02020", 1.2, true);
  svg.text(f.x1, f.y(e_fci) - 4, "E_FCI = " + fmt(e_fci, 6) + " Ha", 9, "end",
           "#c02020");
  return svg.finish();
}

std::string render_error_box(const ReportSpec& spec, double e_fci,
                             const std::string& hash) {
  const auto sets = load_inputs(spec.inputs);
  Svg svg("Final energy error", hash);
  Frame f;
  f.vx0 = 0;
  f.vx1 = double(sets.size());
  double hi = 0.0;
  std::vector<std::vector<double>> errors;
  for (const auto& records : sets) {
    std::vector<double> errs;
    for (const auto& r : records)
      errs.push_back(std::abs(r.final_energy - e_fci));
    std::sort(errs.begin(), errs.end());
    hi = std::max(hi, errs.back());
    errors.push_back(std::move(errs));
  }
  double lo = 0.0;
  pad_range(lo, hi);
  f.vy0 = lo;
  f.vy1 = hi;
  svg.axes(f, "run", "|E - E_FCI| (Ha)", 6, 0);
  svg.line(f.x0, f.y(0.0), f.x1, f.y(0.0), "#c02020", 1.2, true);

  auto quantile = [](const std::vector<double>& v, double q) {
    const double pos = q * double(v.size() - 1);
    const std::size_t i = std::size_t(pos);
    const double frac = pos - double(i);
    if (i + 1 >= v.size()) return v.back();
    return v[i] * (1.0 - frac) + v[i + 1] * frac;
  };
  for (std::size_t s = 0; s < errors.size(); ++s) {
    const auto& errs = errors[s];
    const double cx = f.x(double(s) + 0.5);
    const double w = (f.x1 - f.x0) / double(errors.size()) * 0.3;
    const double q1 = quantile(errs, 0.25), q2 = quantile(errs, 0.5),
                 q3 = quantile(errs, 0.75);
    svg.line(cx, f.y(errs.front()), cx, f.y(q1), "#000000", 1.0);
    svg.line(cx, f.y(q3), cx, f.y(errs.back()), "#000000", 1.0);
    svg.rect(cx - w / 2, f.y(q3), w, f.y(q1) - f.y(q3), "#d0d8f0", "#000000");
    svg.line(cx - w / 2, f.y(q2), cx + w / 2, f.y(q2), "#2040c0", 1.5);
    const std::string label =
        std::filesystem::path(spec.inputs[s]).filename().string();
    svg.text(cx, f.y0 + 26, label, 9, "middle", "#000000");
  }
  return svg.finish();
}

std::string render_distance(const ReportSpec& spec, const std::string& hash) {
  if (spec.inputs.empty()) throw ContractError("report: no scan input");
  std::ifstream in(spec.inputs[0]);
  if (!in) throw ParseError("cannot open scan file: " + spec.inputs[0]);
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto points = parse_scan_csv(buf.str());

  Frame f;
  double xlo = points.front().distance_angstrom, xhi = xlo;
  double ylo = points.front().e_fci, yhi = ylo;
  for (const auto& p : points) {
    xlo = std::min(xlo, p.distance_angstrom);
    xhi = std::max(xhi, p.distance_angstrom);
    ylo = std::min({ylo, p.e_fci, p.vqe_minimum});
    yhi = std::max({yhi, p.e_fci, p.vqe_minimum});
  }
  pad_range(xlo, xhi);
  pad_range(ylo, yhi);
  f.vx0 = xlo;
  f.vx1 = xhi;
  f.vy0 = ylo;
  f.vy1 = yhi;
  Svg svg("Ground state energy vs distance", hash);
  svg.axes(f, "distance (A)", "energy (Ha)", 6, 3);

  std::vector<std::pair<double, double>> exact_pts;
  for (const auto& p : points)
    exact_pts.push_back({f.x(p.distance_angstrom), f.y(p.e_fci)});
  svg.polyline(exact_pts, "#c02020", 1.5);
  svg.text(f.x1, f.y1 + 10, "E_FCI", 9, "end", "#c02020");
  for (const auto& p : points)
    svg.circle(f.x(p.distance_angstrom), f.y(p.vqe_minimum), 3.0, "#2040c0");
  svg.text(f.x1, f.y1 + 22, "VQE minimum", 9, "end", "#2040c0");
  return svg.finish();
}

std::string render_gate_bars(const ReportSpec& spec, const std::string& hash) {
  if (spec.inputs.empty()) throw ContractError("report: no target inputs");
  struct Bar {
    std::string label;
    int depth, total, two_qubit;
  };
  std::vector<Bar> bars;
  Circuit ansatz = build_ry_cnot_ansatz(4);
  std::vector<double> theta = {0.5, 0.6, 0.7, 0.8};  // generic angles
  const Circuit bound = vqb::bind(ansatz, theta);
  for (const auto& path : spec.inputs) {
    const TranspileTarget target = load_target_file(path);
    auto [circuit, report] = transpile(bound, target);
    bars.push_back(
        {target.name, report.depth, report.total_gates, report.two_qubit_gates});
  }
  int hi_count = 0;
  for (const auto& b : bars)
    hi_count = std::max({hi_count, b.depth, b.total, b.two_qubit});
  Frame f;
  f.vx0 = 0;
  f.vx1 = double(bars.size());
  f.vy0 = 0;
  f.vy1 = double(hi_count) * 1.15;
  Svg svg("Transpiled circuit size", hash);
  svg.axes(f, "target", "count", 0, 0);
  const char* colors[3] = {"#2040c0", "#70a0e0", "#c02020"};
  const char* names[3] = {"depth", "total gates", "two-qubit gates"};
  for (std::size_t s = 0; s < bars.size(); ++s) {
    const double base = f.x(double(s) + 0.2);
    const double w = (f.x1 - f.x0) / double(bars.size()) * 0.18;
    const int vals[3] = {bars[s].depth, bars[s].total, bars[s].two_qubit};
    for (int k = 0; k < 3; ++k) {
      const double x = base + double(k) * (w + 3.0);
      svg.rect(x, f.y(double(vals[k])), w, f.y0 - f.y(double(vals[k])),
               colors[k], "#000000");
      svg.text(x + w / 2, f.y(double(vals[k])) - 3, std::to_string(vals[k]), 9,
               "middle", "#000000");
    }
    svg.text(f.x(double(s) + 0.5), f.y0 + 26, bars[s].label, 9, "middle",
             "#000000");
  }
  for (int k = 0; k < 3; ++k)
    svg.text(f.x0 + 8 + 110 * k, f.y1 + 10, names[k], 9, "start", colors[k]);
  return svg.finish();
}

std::string render_optimizer_comparison(const ReportSpec& spec, double e_fci,
                                        const std::string& hash) {
  const auto sets = load_inputs(spec.inputs);
  Frame f;
  std::size_t iters = sets.front().front().iterations.size();
  double lo = e_fci, hi = e_fci;
  std::vector<std::vector<double>> means;
  for (const auto& records : sets) {
    std::vector<double> mean(iters, 0.0);
    for (std::size_t i = 0; i < iters; ++i) {
      for (const auto& r : records) {
        if (r.iterations.size() != iters)
          throw ContractError("report: records have unequal iteration counts");
        mean[i] += r.iterations[i].energy_ha;
      }
      mean[i] /= double(records.size());
      lo = std::min(lo, mean[i]);
      hi = std::max(hi, mean[i]);
    }
    means.push_back(std::move(mean));
  }
  pad_range(lo, hi);
  f.vx0 = 1;
  f.vx1 = double(iters);
  f.vy0 = lo;
  f.vy1 = hi;
  Svg svg("Optimizer comparison (mean energy)", hash);
  svg.axes(f, "iteration", "energy (Ha)", 6, 0);
  const char* colors[6] = {"#2040c0", "#20a040", "#c07020",
                           "#a020a0", "#209090", "#909020"};
  for (std::size_t s = 0; s < means.size(); ++s) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < iters; ++i)
      pts.push_back({f.x(double(i + 1)), f.y(means[s][i])});
    svg.polyline(pts, colors[s % 6], 1.8);
    const std::string label =
        std::filesystem::path(spec.inputs[s]).filename().string();
    svg.text(f.x1 - 4, f.y1 + 10 + 12 * double(s), label, 9, "end",
             colors[s % 6]);
  }
  svg.line(f.x0, f.y(e_fci), f.x1, f.y(e_fci), "#c02020", 1.2, true);
  svg.text(f.x0 + 4, f.y(e_fci) - 4, "E_FCI = " + fmt(e_fci, 6) + " Ha", 9,
           "start", "#c02020");
  return svg.finish();
}

}  // namespace

PlotKind plot_kind_from_name(const std::string& name) {
  if (name == "convergence") return PlotKind::Convergence;
  if (name == "energy_error_box") return PlotKind::EnergyErrorBox;
  if (name == "distance_curve") return PlotKind::DistanceCurve;
  if (name == "gate_count_bars") return PlotKind::GateCountBars;
  if (name == "optimizer_comparison") return PlotKind::OptimizerComparison;
  throw ConfigError("unknown plot kind '" + name + "'");
}

const char* plot_kind_name(PlotKind kind) {
  switch (kind) {
    case PlotKind::Convergence: return "convergence";
    case PlotKind::EnergyErrorBox: return "energy_error_box";
    case PlotKind::DistanceCurve: return "distance_curve";
    case PlotKind::GateCountBars: return "gate_count_bars";
    case PlotKind::OptimizerComparison: return "optimizer_comparison";
  }
  return "?";
}

std::string render_csv(const std::vector<RunRecord>& records) {
  if (records.empty()) throw ContractError("render_csv: no records");
  std::ostringstream out;
  out << "seed,iteration,energy_ha,evals,quantum_time_s\n";
  for (const auto& r : records)
    for (const auto& ir : r.iterations)
      out << r.seed_id << "," << ir.iteration << "," << fmt_g(ir.energy_ha)
          << "," << ir.evaluations << "," << fmt_g(ir.quantum_time_s) << "\n";
  return out.str();
}

std::vector<RunRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "seed,iteration,energy_ha,evals,quantum_time_s")
    throw ParseError("csv: missing or wrong header");
  std::map<int, RunRecord> by_seed;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 5)
      throw ParseError("csv line " + std::to_string(lineno) +
                       ": expected 5 fields");
    try {
      IterationRecord ir;
      const int seed = std::stoi(fields[0]);
      ir.iteration = std::stoi(fields[1]);
      ir.energy_ha = std::stod(fields[2]);
      ir.evaluations = std::stol(fields[3]);
      ir.quantum_time_s = std::stod(fields[4]);
      auto& rec = by_seed[seed];
      rec.seed_id = seed;
      rec.iterations.push_back(std::move(ir));
    } catch (const std::logic_error&) {
      throw ParseError("csv line " + std::to_string(lineno) + ": bad number");
    }
  }
  if (by_seed.empty()) throw ParseError("csv: no data rows");
  std::vector<RunRecord> records;
  for (auto& [seed, rec] : by_seed) {
    rec.final_energy = rec.iterations.back().energy_ha;
    rec.minimum_energy = rec.final_energy;
    for (const auto& ir : rec.iterations)
      rec.minimum_energy = std::min(rec.minimum_energy, ir.energy_ha);
    rec.evaluations = rec.iterations.back().evaluations;
    rec.quantum_time_s = rec.iterations.back().quantum_time_s;
    records.push_back(std::move(rec));
  }
  return records;
}

std::string render_scan_csv(const std::vector<ScanPoint>& points) {
  if (points.empty()) throw ContractError("render_scan_csv: no points");
  std::ostringstream out;
  out << "distance_angstrom,vqe_minimum_ha,e_fci_ha\n";
  for (const auto& p : points)
    out << fmt_g(p.distance_angstrom) << "," << fmt_g(p.vqe_minimum) << ","
        << fmt_g(p.e_fci) << "\n";
  return out.str();
}

std::vector<ScanPoint> parse_scan_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "distance_angstrom,vqe_minimum_ha,e_fci_ha")
    throw ParseError("scan csv: missing or wrong header");
  std::vector<ScanPoint> points;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') ||
        !std::getline(ls, c))
      throw ParseError("scan csv line " + std::to_string(lineno) +
                       ": expected 3 fields");
    try {
      points.push_back({std::stod(a), std::stod(b), std::stod(c)});
    } catch (const std::logic_error&) {
      throw ParseError("scan csv line " + std::to_string(lineno) +
                       ": bad number");
    }
  }
  if (points.empty()) throw ParseError("scan csv: no data rows");
  return points;
}

std::string render_svg(const ReportSpec& spec, double e_fci,
                       const std::string& config_hash_hex) {
  switch (spec.kind) {
    case PlotKind::Convergence:
      return render_convergence(spec, e_fci, config_hash_hex);
    case PlotKind::EnergyErrorBox:
      return render_error_box(spec, e_fci, config_hash_hex);
    case PlotKind::DistanceCurve:
      return render_distance(spec, config_hash_hex);
    case PlotKind::GateCountBars:
      return render_gate_bars(spec, config_hash_hex);
    case PlotKind::OptimizerComparison:
      return render_optimizer_comparison(spec, e_fci, config_hash_hex);
  }
  throw ContractError("unknown plot kind");
}

}  // namespace vqb
