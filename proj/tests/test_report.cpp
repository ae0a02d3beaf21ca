#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "core/errors.hpp"
#include "engine/config.hpp"
#include "engine/engine.hpp"
#include "report/report.hpp"

using namespace vqb;

namespace {

const std::string kRepo = VQB_REPO_DIR;
constexpr double kEFci = -1.1372469264956702;

std::vector<RunRecord> sample_records() {
  ExperimentConfig cfg;
  cfg.observable = kRepo + "/data/h2_0.735.obs";
  cfg.target = kRepo + "/targets/marmot.tgt";
  cfg.seeds = 3;
  cfg.iterations = 4;
  return run_vqe(cfg);
}

std::string write_sample_dir(const std::string& name) {
  ExperimentConfig cfg;
  cfg.observable = kRepo + "/data/h2_0.735.obs";
  cfg.target = kRepo + "/targets/marmot.tgt";
  cfg.seeds = 3;
  cfg.iterations = 4;
  const auto records = run_vqe(cfg);
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  write_records(dir.string(), records, cfg, aggregate(records, kEFci));
  return dir.string();
}

}  // namespace

TEST_CASE("plot kind names round-trip") {
  for (auto kind : {PlotKind::Convergence, PlotKind::EnergyErrorBox,
                    PlotKind::DistanceCurve, PlotKind::GateCountBars,
                    PlotKind::OptimizerComparison})
    CHECK(plot_kind_from_name(plot_kind_name(kind)) == kind);
  CHECK_THROWS_AS(plot_kind_from_name("pie_chart"), ConfigError);
}

TEST_CASE("CSV round-trips to 12 significant digits") {
  const auto records = sample_records();
  const std::string csv = render_csv(records);
  CHECK(csv.rfind("seed,iteration,energy_ha,evals,quantum_time_s\n", 0) == 0);

  const auto back = parse_csv(csv);
  REQUIRE(back.size() == records.size());
  for (std::size_t s = 0; s < back.size(); ++s) {
    REQUIRE(back[s].iterations.size() == records[s].iterations.size());
    for (std::size_t i = 0; i < back[s].iterations.size(); ++i) {
      const double want = records[s].iterations[i].energy_ha;
      const double got = back[s].iterations[i].energy_ha;
      CHECK(std::abs(got - want) <= std::abs(want) * 1e-12 + 1e-15);
      CHECK(back[s].iterations[i].evaluations ==
            records[s].iterations[i].evaluations);
    }
  }
  CHECK(back[0].final_energy == doctest::Approx(records[0].final_energy));

  CHECK_THROWS_AS(render_csv({}), ContractError);
  CHECK_THROWS_AS(parse_csv("wrong,header\n1,2\n"), ParseError);
  CHECK_THROWS_AS(
      parse_csv("seed,iteration,energy_ha,evals,quantum_time_s\n1,2\n"),
      ParseError);
}

TEST_CASE("scan CSV round-trips") {
  const std::vector<ScanPoint> points = {{0.5, -1.04, -1.05},
                                         {0.735, -1.136, -1.137}};
  const auto back = parse_scan_csv(render_scan_csv(points));
  REQUIRE(back.size() == 2);
  CHECK(back[1].distance_angstrom == doctest::Approx(0.735));
  CHECK(back[1].e_fci == doctest::Approx(-1.137));
  CHECK_THROWS_AS(parse_scan_csv("nope\n"), ParseError);
}

TEST_CASE("SVG output is deterministic and self-contained") {
  const std::string dir = write_sample_dir("vqb_report_test_runs");
  ReportSpec spec;
  spec.kind = PlotKind::Convergence;
  spec.inputs = {dir};
  const std::string a = render_svg(spec, kEFci, "cafe1234");
  const std::string b = render_svg(spec, kEFci, "cafe1234");
  CHECK(a == b);
  CHECK(a.rfind("<svg", 0) == 0);
  CHECK(a.find("cafe1234") != std::string::npos);    // config hash metadata
  CHECK(a.find("E_FCI") != std::string::npos);       // reference line label
  CHECK(a.find("href") == std::string::npos);        // no external assets
  CHECK(a.find("<polyline") != std::string::npos);   // per-seed lines
  CHECK(a.find("<polygon") != std::string::npos);    // sigma band

  SUBCASE("outlier exclusion must leave at least one seed") {
    spec.exclude_outliers = 3;
    CHECK_THROWS_AS(render_svg(spec, kEFci, "x"), ContractError);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("every plot kind renders from its input type") {
  const std::string dir = write_sample_dir("vqb_report_kinds_runs");

  ReportSpec box;
  box.kind = PlotKind::EnergyErrorBox;
  box.inputs = {dir, dir};
  CHECK(render_svg(box, kEFci, "h").find("</svg>") != std::string::npos);

  ReportSpec comparison;
  comparison.kind = PlotKind::OptimizerComparison;
  comparison.inputs = {dir, dir};
  CHECK(render_svg(comparison, kEFci, "h").find("</svg>") != std::string::npos);

  const auto scan_path =
      std::filesystem::temp_directory_path() / "vqb_report_scan.csv";
  {
    std::ofstream out(scan_path);
    out << render_scan_csv({{0.5, -1.04, -1.05}, {0.735, -1.136, -1.137}});
  }
  ReportSpec curve;
  curve.kind = PlotKind::DistanceCurve;
  curve.inputs = {scan_path.string()};
  CHECK(render_svg(curve, 0.0, "h").find("E_FCI") != std::string::npos);

  ReportSpec bars;
  bars.kind = PlotKind::GateCountBars;
  bars.inputs = {kRepo + "/targets/marmot.tgt", kRepo + "/targets/manila.tgt"};
  const std::string svg = render_svg(bars, 0.0, "h");
  CHECK(svg.find("marmot") != std::string::npos);
  CHECK(svg.find("manila") != std::string::npos);

  std::filesystem::remove_all(dir);
  std::filesystem::remove(scan_path);
}
