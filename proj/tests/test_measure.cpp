#include <doctest.h>

#include <fstream>
#include <numbers>
#include <sstream>

#include "core/errors.hpp"
#include "measure/measure.hpp"
#include "noise/model.hpp"
#include "sim/statevector.hpp"

using namespace vqb;

namespace {

Observable load_h2() {
  std::ifstream in(std::string(VQB_REPO_DIR) + "/data/h2_0.735.obs");
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_observable(buf.str());
}

}  // namespace

TEST_CASE("bitstring conversions print qubit n-1 first") {
  CHECK(index_to_bits(1, 3) == "001");   // qubit 0 set -> rightmost char
  CHECK(index_to_bits(4, 3) == "100");
  CHECK(bits_to_index("001") == 1);
  CHECK(bits_to_index("110") == 6);
  CHECK(bits_to_index(index_to_bits(13, 4)) == 13);
}

TEST_CASE("H2 groups into one Z group plus four entangled settings") {
  const auto groups = group_terms(load_h2());
  REQUIRE(groups.size() == 5);
  CHECK(groups[0].basis == "ZZZZ");
  CHECK(groups[0].terms.size() == 11);  // identity + 10 Z-type terms
  for (std::size_t g = 1; g < groups.size(); ++g)
    CHECK(groups[g].terms.size() == 1);
  // every term appears exactly once across groups
  std::size_t total = 0;
  for (const auto& g : groups) total += g.terms.size();
  CHECK(total == 15);
}

TEST_CASE("identity characters are wildcards during grouping") {
  const auto groups = group_terms(parse_observable("XI 1.0\nIX 1.0\nZI 1.0\n"));
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].basis == "XX");
  CHECK(groups[0].terms.size() == 2);
  CHECK(groups[1].basis == "ZZ");  // unset qubits default to Z
}

TEST_CASE("basis rotation maps X and Y onto the Z axis") {
  const MeasurementGroup group{"XY", {}};
  const Circuit rot = basis_rotation(group, 2);
  REQUIRE(rot.gates.size() == 3);
  CHECK(rot.gates[0].kind == GateKind::RY);
  CHECK(rot.gates[0].angle == doctest::Approx(-std::numbers::pi / 2));
  CHECK(rot.gates[1].kind == GateKind::RX);
  CHECK(rot.gates[1].angle == doctest::Approx(std::numbers::pi / 2));
  CHECK(rot.gates[2].kind == GateKind::Measure);

  // after rotation, sampling Z reproduces <X> of the original state
  Statevector psi(1);
  psi.apply({GateKind::RY, {0}, 0.8});
  const double x_expect = psi.expectation(parse_observable("X 1.0\n"));
  psi.apply({GateKind::RY, {0}, -std::numbers::pi / 2});
  const double z_after = psi.expectation(parse_observable("Z 1.0\n"));
  CHECK(z_after == doctest::Approx(x_expect));
}

TEST_CASE("term expectation is the parity average over the support") {
  Counts counts;
  counts["00"] = 50;
  counts["01"] = 25;  // qubit 0 set
  counts["11"] = 25;
  const PauliTerm z0{1.0, "ZI"};
  // parity over qubit 0: +50 -25 -25 -> 0
  CHECK(term_expectation(counts, z0) == doctest::Approx(0.0));
  const PauliTerm zz{1.0, "ZZ"};
  // parities: 00 -> +, 01 -> -, 11 -> + : (50 - 25 + 25)/100
  CHECK(term_expectation(counts, zz) == doctest::Approx(0.5));

  const std::vector<double> dist = {0.5, 0.25, 0.0, 0.25};
  CHECK(term_expectation(dist, zz) == doctest::Approx(0.5));
}

TEST_CASE("grouped energy matches the statevector expectation") {
  const Observable h2 = load_h2();
  const auto groups = group_terms(h2);
  Circuit ansatz = vqb::bind(build_ry_cnot_ansatz(4),
                             std::vector<double>{0.3, -0.7, 1.2, 0.5});
  std::vector<std::pair<MeasurementGroup, Counts>> group_counts;
  for (const auto& group : groups) {
    Statevector psi(4);
    psi.run(ansatz);
    for (const auto& g : basis_rotation(group, 4).gates)
      if (g.kind != GateKind::Measure) psi.apply(g);
    Counts counts;
    const auto probs = psi.probabilities();
    // exact distribution scaled to a large shot count
    for (std::size_t i = 0; i < probs.size(); ++i)
      counts[index_to_bits(i, 4)] = std::uint64_t(probs[i] * 1e9 + 0.5);
    group_counts.push_back({group, counts});
  }
  Statevector psi(4);
  psi.run(ansatz);
  CHECK(energy_from_counts(group_counts, h2) ==
        doctest::Approx(psi.expectation(h2)).epsilon(1e-6));
}

TEST_CASE("energy_from_counts validates the partition") {
  const Observable obs = parse_observable("ZZ 1.0\nXX 0.5\n");
  const auto groups = group_terms(obs);
  std::vector<std::pair<MeasurementGroup, Counts>> partial;
  partial.push_back({groups[0], Counts{{"00", 10}}});
  CHECK_THROWS_AS(energy_from_counts(partial, obs), ContractError);
}

TEST_CASE("confusion matrix tensors per-qubit flips") {
  const CalibrationData cal =
      parse_calibration("[readout]\np01 default 0.1\np10 default 0.0\n");
  const NoiseModel model = NoiseModel::build(cal, false);
  const Eigen::MatrixXd c = build_confusion(model, 2);
  CHECK(c.rows() == 4);
  // prepared |00> (column 0): P(read 00) = 0.81, P(read 01) = 0.09
  CHECK(c(0, 0) == doctest::Approx(0.81));
  CHECK(c(1, 0) == doctest::Approx(0.09));
  CHECK(c(3, 0) == doctest::Approx(0.01));
  for (int col = 0; col < 4; ++col) CHECK(c.col(col).sum() == doctest::Approx(1.0));
}

TEST_CASE("mitigation inverts the confusion it was given") {
  const CalibrationData cal =
      parse_calibration("[readout]\np01 default 0.03\np10 default 0.05\n");
  const NoiseModel model = NoiseModel::build(cal, false);
  const Eigen::MatrixXd c = build_confusion(model, 2);
  const std::vector<double> truth = {0.6, 0.1, 0.05, 0.25};
  Eigen::VectorXd t(4);
  for (int i = 0; i < 4; ++i) t(i) = truth[std::size_t(i)];
  const Eigen::VectorXd observed = c * t;
  const auto recovered =
      mitigate(std::vector<double>(observed.data(), observed.data() + 4), c);
  for (int i = 0; i < 4; ++i)
    CHECK(recovered[std::size_t(i)] == doctest::Approx(truth[std::size_t(i)]));

  SUBCASE("output is clipped and renormalized") {
    const std::vector<double> noisy = {0.9, 0.1, 0.0, 0.0};
    const auto q = mitigate(noisy, c);
    double sum = 0.0;
    for (double v : q) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0));
  }
  SUBCASE("singular confusion is rejected") {
    const CalibrationData flat =
        parse_calibration("[readout]\np01 default 0.5\np10 default 0.5\n");
    const Eigen::MatrixXd bad =
        build_confusion(NoiseModel::build(flat, false), 1);
    CHECK_THROWS_AS(mitigate(std::vector<double>{0.5, 0.5}, bad), ConfigError);
  }
}
