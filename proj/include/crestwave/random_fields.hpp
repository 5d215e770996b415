#pragma once
// Deterministic random band-limited fields for property tests and the
// verification batteries.

#include <cstdint>
#include <random>

#include "crestwave/wave_state.hpp"

namespace cw {

using Rng = std::mt19937_64;

// Stream seed for trial i of a run seeded with master.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i);

enum class Support {
  full,        // modes -kmax..kmax
  mean_zero,   // full minus the mean
  real,        // real-valued, mean zero
  holomorphic, // modes -kmax..-1: boundary values holomorphic in P_-
};

// Coefficients with independent Gaussian parts scaled by (1 + |k|)^(-decay),
// normalized so the L2 norm equals `norm`.
GridFunction random_field(std::size_t n, int kmax, Support support, Rng& rng,
                          double decay = 1.0, double norm = 1.0);

// (P, Z_t) with P built from modes k <= 0, conj(Z_t) from modes k < 0, and
// max |P'| = slope, max |Z_t| = speed.
WaveState random_admissible_state(std::size_t n, int kmax, Rng& rng, double slope = 0.2,
                                  double speed = 0.1);

}  // namespace cw
