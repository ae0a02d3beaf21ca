#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/pauli.hpp"
#include "sim/channels.hpp"
#include "sim/density.hpp"
#include "sim/rng.hpp"
#include "sim/statevector.hpp"

using namespace vqb;
using std::numbers::pi;

TEST_CASE("statevector single-qubit rotation") {
  Statevector psi(1);
  psi.apply({GateKind::RY, {0}, 0.7});
  CHECK(psi.amplitudes()[0].real() == doctest::Approx(std::cos(0.35)));
  CHECK(psi.amplitudes()[1].real() == doctest::Approx(std::sin(0.35)));
  CHECK(psi.expectation(parse_observable("Z 1.0\n")) ==
        doctest::Approx(std::cos(0.7)));
  CHECK(psi.expectation(parse_observable("X 1.0\n")) ==
        doctest::Approx(std::sin(0.7)));
  CHECK(psi.norm() == doctest::Approx(1.0));
}

TEST_CASE("statevector entangling gates") {
  Statevector psi(2);
  psi.apply({GateKind::RY, {0}, pi / 2});
  psi.apply({GateKind::CX, {0, 1}});
  // Bell state: <ZZ> = 1, <Z on either qubit> = 0
  CHECK(psi.expectation(parse_observable("ZZ 1.0\n")) == doctest::Approx(1.0));
  CHECK(psi.expectation(parse_observable("ZI 1.0\n")) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(psi.expectation(parse_observable("XX 1.0\n")) == doctest::Approx(1.0));
  CHECK(psi.expectation(parse_observable("YY 1.0\n")) == doctest::Approx(-1.0));

  const auto probs = psi.probabilities();
  CHECK(probs[0] == doctest::Approx(0.5));
  CHECK(probs[3] == doctest::Approx(0.5));
  CHECK(probs[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("statevector and density matrix agree on noiseless circuits") {
  Circuit c;
  c.n_qubits = 3;
  c.add(GateKind::RY, {0}, 0.4);
  c.add(GateKind::RX, {1}, -1.1);
  c.add(GateKind::RXX, {0, 2}, 0.9);
  c.add(GateKind::CX, {2, 1});
  c.add(GateKind::RZ, {2}, 2.2);

  Statevector psi(3);
  psi.run(c);
  DensityMatrix rho(3);
  for (const auto& g : c.gates) rho.apply(g);

  const Observable obs = parse_observable("ZXI 0.7\nIYZ -0.3\nXIX 1.1\n");
  CHECK(rho.expectation(obs) == doctest::Approx(psi.expectation(obs)));
  const auto p1 = psi.probabilities();
  const auto p2 = rho.probabilities();
  for (std::size_t i = 0; i < p1.size(); ++i)
    CHECK(p2[i] == doctest::Approx(p1[i]).epsilon(1e-10));
  CHECK(rho.trace() == doctest::Approx(1.0));
}

TEST_CASE("channel constructions are CPTP") {
  CHECK(depolarizing_channel(0.1, 1).trace_preservation_defect() < 1e-12);
  CHECK(depolarizing_channel(0.25, 2).trace_preservation_defect() < 1e-12);
  CHECK(amplitude_damping_channel(0.3).trace_preservation_defect() < 1e-12);
  CHECK(phase_flip_channel(0.2).trace_preservation_defect() < 1e-12);
  CHECK(depolarizing_channel(0.25, 2).n_qubits() == 2);
}

TEST_CASE("depolarizing channel mixes toward identity") {
  const double p = 0.2;
  DensityMatrix rho(1);  // starts in |0><0|
  rho.apply_channel(depolarizing_channel(p, 1), {0});
  // <Z> shrinks by exactly (1-p)
  CHECK(rho.expectation(parse_observable("Z 1.0\n")) == doctest::Approx(1.0 - p));
  CHECK(rho.trace() == doctest::Approx(1.0));

  // the maximally mixed state is a fixed point
  DensityMatrix mixed(1);
  mixed.apply({GateKind::RY, {0}, pi / 2});
  mixed.apply_channel(depolarizing_channel(1.0, 1), {0});
  CHECK(mixed.matrix()(0, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(mixed.matrix()(0, 1)) < 1e-12);
}

TEST_CASE("amplitude damping decays the excited state") {
  const double gamma = 0.4;
  DensityMatrix rho(1);
  rho.apply({GateKind::X, {0}});
  rho.apply_channel(amplitude_damping_channel(gamma), {0});
  CHECK(rho.matrix()(1, 1).real() == doctest::Approx(1.0 - gamma));
  CHECK(rho.matrix()(0, 0).real() == doctest::Approx(gamma));
}

TEST_CASE("phase flip shrinks coherences by 1-2p") {
  const double p = 0.15;
  DensityMatrix rho(1);
  rho.apply({GateKind::RY, {0}, pi / 2});  // |+>
  const double before = rho.matrix()(0, 1).real();
  rho.apply_channel(phase_flip_channel(p), {0});
  CHECK(rho.matrix()(0, 1).real() == doctest::Approx(before * (1 - 2 * p)));
  CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("two-qubit channel on a subsystem of a wider register") {
  DensityMatrix rho(3);
  rho.apply({GateKind::X, {2}});
  rho.apply_channel(depolarizing_channel(0.5, 2), {0, 2});
  CHECK(rho.trace() == doctest::Approx(1.0));
  // qubit 1 is untouched
  CHECK(rho.expectation(parse_observable("IZI 1.0\n")) == doctest::Approx(1.0));
}

TEST_CASE("seed derivation separates streams") {
  const auto a = derive_seed(11, "init", 0);
  CHECK(a == derive_seed(11, "init", 0));
  CHECK(a != derive_seed(11, "init", 1));
  CHECK(a != derive_seed(11, "measure", 0));
  CHECK(a != derive_seed(12, "init", 0));
  CHECK(derive_seed(11, "measure", 1, 2, 3) != derive_seed(11, "measure", 1, 3, 2));
}

TEST_CASE("uniform_unit stays in [0,1)") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform_unit(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  std::mt19937_64 rng2(7);
  std::mt19937_64 rng3(7);
  CHECK(uniform_unit(rng2) == uniform_unit(rng3));
}

TEST_CASE("sampling is deterministic and conserves shots") {
  const std::vector<double> probs = {0.1, 0.2, 0.0, 0.7};
  std::mt19937_64 rng(42);
  const auto counts = sample_counts(probs, 500, rng);
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  CHECK(total == 500);
  CHECK(counts[2] == 0);

  std::mt19937_64 rng2(42);
  CHECK(sample_counts(probs, 500, rng2) == counts);

  const std::vector<double> point = {0.0, 1.0};
  std::mt19937_64 rng3(1);
  CHECK(sample_counts(point, 10, rng3)[1] == 10);
}
