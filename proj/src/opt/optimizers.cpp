#include "opt/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "core/errors.hpp"
#include "sim/rng.hpp"

namespace vqb {

namespace {
constexpr double kPi = std::numbers::pi;
}

OptimizerTrace nft_minimize(CostEvaluator& evaluator,
                            const std::vector<double>& x0, int iterations,
                            int reset_interval) {
  OptimizerTrace trace;
  if (iterations <= 0) return trace;
  std::vector<double> x = x0;
  double c0 = evaluator.eval(x);
  long updates = 0;
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double old = x[j];
      x[j] = old + kPi / 2.0;
      const double cp = evaluator.eval(x);
      x[j] = old - kPi / 2.0;
      const double cm = evaluator.eval(x);
      // cost along coordinate j is a + b cos(theta - phi); the three
      // samples give b cos/sin components z1, z2 directly
      const double a = (cp + cm) / 2.0;
      const double z1 = c0 - a;
      const double z2 = (cm - cp) / 2.0;
      x[j] = old - std::atan2(z2, z1) + kPi;
      c0 = a - std::hypot(z1, z2);
      ++updates;
      if (reset_interval > 0 && updates % reset_interval == 0)
        c0 = evaluator.eval(x);
    }
    trace.entries.push_back({x, c0, evaluator.calls});
  }
  return trace;
}

OptimizerTrace spsa_minimize(CostEvaluator& evaluator,
                             const std::vector<double>& x0, int iterations,
                             const SpsaGains& gains, std::uint64_t rng_seed) {
  if (gains.a <= 0.0 || gains.c <= 0.0 || gains.stability <= 0.0 ||
      gains.alpha <= 0.0 || gains.gamma <= 0.0)
    throw ConfigError("SPSA gains must be positive");
  OptimizerTrace trace;
  std::vector<double> x = x0;
  std::mt19937_64 rng(rng_seed);
  std::vector<double> probe_hi(x.size()), probe_lo(x.size()), delta(x.size());
  for (int k = 0; k < iterations; ++k) {
    const double ak = gains.a / std::pow(gains.stability + k + 1, gains.alpha);
    const double ck = gains.c / std::pow(k + 1, gains.gamma);
    for (std::size_t j = 0; j < x.size(); ++j)
      delta[j] = uniform_unit(rng) < 0.5 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      probe_hi[j] = x[j] + ck * delta[j];
      probe_lo[j] = x[j] - ck * delta[j];
    }
    const double chi = evaluator.eval(probe_hi);
    const double clo = evaluator.eval(probe_lo);
    const double diff = (chi - clo) / (2.0 * ck);
    for (std::size_t j = 0; j < x.size(); ++j)
      x[j] -= ak * diff / delta[j];
    trace.entries.push_back({x, (chi + clo) / 2.0, evaluator.calls});
  }
  return trace;
}

OptimizerTrace nelder_mead_minimize(CostEvaluator& evaluator,
                                    const std::vector<double>& x0,
                                    int iterations,
                                    const NelderMeadCoefficients& coeffs) {
  OptimizerTrace trace;
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t j = 0; j < n; ++j) simplex[j + 1][j] += 0.25;
  std::vector<double> value(n + 1);
  for (std::size_t v = 0; v <= n; ++v) value[v] = evaluator.eval(simplex[v]);

  auto order = [&]() {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    std::vector<std::vector<double>> s2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      s2[i] = std::move(simplex[idx[i]]);
      v2[i] = value[idx[i]];
    }
    simplex = std::move(s2);
    value = std::move(v2);
  };

  for (int it = 0; it < iterations; ++it) {
    order();
    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[v][j] / double(n);

    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + t * (centroid[j] - simplex[n][j]);
      return p;
    };

    const auto reflected = along(coeffs.reflect);
    const double fr = evaluator.eval(reflected);
    if (fr < value[0]) {
      const auto expanded = along(coeffs.expand);
      const double fe = evaluator.eval(expanded);
      if (fe < fr) {
        simplex[n] = expanded;
        value[n] = fe;
      } else {
        simplex[n] = reflected;
        value[n] = fr;
      }
    } else if (fr < value[n - 1]) {
      simplex[n] = reflected;
      value[n] = fr;
    } else {
      const bool outside = fr < value[n];
      const auto contracted =
          outside ? along(coeffs.contract) : along(-coeffs.contract);
      const double fc = evaluator.eval(contracted);
      if (fc < std::min(fr, value[n])) {
        simplex[n] = contracted;
        value[n] = fc;
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          for (std::size_t j = 0; j < n; ++j)
            simplex[v][j] =
                simplex[0][j] + coeffs.shrink * (simplex[v][j] - simplex[0][j]);
          value[v] = evaluator.eval(simplex[v]);
        }
      }
    }
    order();
    trace.entries.push_back({simplex[0], value[0], evaluator.calls});
  }
  return trace;
}

}  // namespace vqb
