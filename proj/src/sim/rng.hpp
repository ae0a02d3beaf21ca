#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vqb {

/// Deterministic seed derivation. Streams are split by hashing the master
/// seed together with a label and up to three integer coordinates
/// (run, iteration, measurement group), so no two streams ever share state.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t a = 0, std::uint64_t b = 0,
                          std::uint64_t c = 0);

/// Portable uniform double in [0, 1) with 53 random bits. mt19937_64 output
/// is specified by the standard, so sequences match across platforms.
double uniform_unit(std::mt19937_64& rng);

/// Uniform double in [lo, hi).
double uniform_range(std::mt19937_64& rng, double lo, double hi);

}  // namespace vqb
