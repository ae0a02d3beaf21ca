#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace vqb {

/// Counting wrapper around the cost callable; every optimizer evaluation
/// goes through eval() so reported counts match the true call count.
struct CostEvaluator {
  std::function<double(const std::vector<double>&)> fn;
  long calls = 0;

  double eval(const std::vector<double>& x) {
    ++calls;
    return fn(x);
  }
};

struct TraceEntry {
  std::vector<double> parameters;
  double cost = 0.0;
  long evaluations = 0;  // cumulative
};

struct OptimizerTrace {
  std::vector<TraceEntry> entries;
};

/// Sequential sinusoidal minimization: per sweep, each parameter is probed
/// at +-pi/2 and set to the analytic argmin of the fitted cosine; the
/// current cost is carried between updates and re-evaluated every
/// reset_interval updates (<= 0 disables the reset). One trace entry per
/// sweep with the post-sweep cached cost.
OptimizerTrace nft_minimize(CostEvaluator& evaluator,
                            const std::vector<double>& x0, int iterations,
                            int reset_interval);

struct SpsaGains {
  double a = 0.2;
  double c = 0.15;
  double stability = 10.0;  // the A offset in a_k = a/(A+k+1)^alpha
  double alpha = 0.602;
  double gamma = 0.101;
};

/// Simultaneous perturbation: two evaluations per iteration at x +- c_k D
/// with random D in {-1,+1}^n; trace cost is the mean of the two probes
/// (SPSA never evaluates at x itself).
OptimizerTrace spsa_minimize(CostEvaluator& evaluator,
                             const std::vector<double>& x0, int iterations,
                             const SpsaGains& gains, std::uint64_t rng_seed);

struct NelderMeadCoefficients {
  double reflect = 1.0;
  double expand = 2.0;
  double contract = 0.5;
  double shrink = 0.5;
};

/// Standard simplex iteration from x0 plus n vertices offset by +0.25 rad
/// per coordinate; trace records the best vertex per iteration.
OptimizerTrace nelder_mead_minimize(CostEvaluator& evaluator,
                                    const std::vector<double>& x0,
                                    int iterations,
                                    const NelderMeadCoefficients& coeffs);

}  // namespace vqb
