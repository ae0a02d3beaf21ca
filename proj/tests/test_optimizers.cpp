#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "core/errors.hpp"
#include "opt/optimizers.hpp"

using namespace vqb;
using std::numbers::pi;

namespace {

// exactly the cost shape NFT assumes: a sum of per-parameter sinusoids
double sinusoid(const std::vector<double>& x) {
  double c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    c += 1.0 - std::cos(x[i] - 0.1 * double(i + 1));
  return c;
}

double quadratic(const std::vector<double>& x) {
  double c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    c += (x[i] - 1.0) * (x[i] - 1.0) * double(i + 1);
  return c;
}

}  // namespace

TEST_CASE("NFT solves a separable sinusoid in one sweep") {
  CostEvaluator ev{sinusoid};
  const auto trace = nft_minimize(ev, {2.0, -1.0, 0.5}, 3, 0);
  REQUIRE(trace.entries.size() == 3);
  CHECK(trace.entries[0].cost == doctest::Approx(0.0).epsilon(1e-10));
  // 1 initial eval + 2 per parameter per sweep
  CHECK(trace.entries[0].evaluations == 1 + 2 * 3);
  CHECK(trace.entries[2].evaluations == ev.calls);
  for (std::size_t i = 0; i < 3; ++i) {
    const double target = 0.1 * double(i + 1);
    const double got = std::remainder(trace.entries.back().parameters[i] - target,
                                      2 * pi);
    CHECK(std::abs(got) < 1e-9);
  }
}

TEST_CASE("NFT reset interval re-evaluates the cached cost") {
  long calls_no_reset, calls_reset;
  {
    CostEvaluator ev{sinusoid};
    nft_minimize(ev, {2.0, -1.0}, 4, 0);
    calls_no_reset = ev.calls;
  }
  {
    CostEvaluator ev{sinusoid};
    nft_minimize(ev, {2.0, -1.0}, 4, 2);
    calls_reset = ev.calls;
  }
  // one extra evaluation per reset (every 2 updates over 4 sweeps of 2 params)
  CHECK(calls_reset == calls_no_reset + 4);
}

TEST_CASE("NFT cached cost stays consistent with a fresh evaluation") {
  CostEvaluator ev{sinusoid};
  const auto trace = nft_minimize(ev, {1.3, -2.1, 0.4, 2.9}, 5, 4);
  for (const auto& e : trace.entries)
    CHECK(e.cost == doctest::Approx(sinusoid(e.parameters)).epsilon(1e-9));
}

TEST_CASE("SPSA is deterministic per seed and improves a quadratic") {
  CostEvaluator ev1{quadratic};
  const auto t1 = spsa_minimize(ev1, {4.0, -3.0}, 120, SpsaGains{}, 99);
  CostEvaluator ev2{quadratic};
  const auto t2 = spsa_minimize(ev2, {4.0, -3.0}, 120, SpsaGains{}, 99);
  CHECK(t1.entries.back().parameters == t2.entries.back().parameters);

  CostEvaluator ev3{quadratic};
  const auto t3 = spsa_minimize(ev3, {4.0, -3.0}, 120, SpsaGains{}, 100);
  CHECK(t3.entries.back().parameters != t1.entries.back().parameters);

  CHECK(quadratic(t1.entries.back().parameters) < quadratic({4.0, -3.0}) / 10);
  // two evaluations per iteration, nothing hidden
  CHECK(ev1.calls == 2 * 120);
  CHECK(t1.entries.back().evaluations == ev1.calls);
}

TEST_CASE("SPSA rejects non-positive gains") {
  CostEvaluator ev{quadratic};
  SpsaGains bad;
  bad.c = 0.0;
  CHECK_THROWS_AS(spsa_minimize(ev, {1.0}, 5, bad, 1), ConfigError);
}

TEST_CASE("Nelder-Mead contracts onto a quadratic minimum") {
  CostEvaluator ev{quadratic};
  const auto trace = nelder_mead_minimize(ev, {3.0, -2.0}, 200,
                                          NelderMeadCoefficients{});
  const auto& best = trace.entries.back();
  CHECK(best.cost < 1e-6);
  CHECK(best.parameters[0] == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(best.parameters[1] == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(best.evaluations == ev.calls);
  // the recorded best-vertex cost never increases
  for (std::size_t i = 1; i < trace.entries.size(); ++i)
    CHECK(trace.entries[i].cost <= trace.entries[i - 1].cost + 1e-12);
}

TEST_CASE("trace lengths equal the requested iteration count") {
  CostEvaluator a{sinusoid}, b{quadratic}, c{quadratic};
  CHECK(nft_minimize(a, {0.5}, 7, 0).entries.size() == 7);
  CHECK(spsa_minimize(b, {0.5}, 7, SpsaGains{}, 3).entries.size() == 7);
  CHECK(nelder_mead_minimize(c, {0.5, 0.1}, 7, NelderMeadCoefficients{})
            .entries.size() == 7);
}
