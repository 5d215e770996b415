#pragma once
// Admissible initial data: flat, single-mode waves and the near-crest family
// Psi_z = (1 - q e^{-iz})^{r-1}, with Poisson mollification.

#include <string>

#include "crestwave/wave_state.hpp"

namespace cw {

enum class Family { flat, smooth_wave, near_crest };
const char* to_string(Family f);
Family family_from_string(const std::string& s);

struct FamilyParams {
  double a = 0.0;       // smooth_wave amplitude
  int m = 1;            // smooth_wave mode
  double r = 0.4;       // crest exponent, in (0, 1/2)
  double q = 0.9;       // crest sharpness, in (0, 1)
  double velocity = 0.0;
  double eps = 0.0;     // accumulated mollification depth
};

struct ValidationRecord {
  double holo_Zt = 0.0;        // ||(I - H) conj(Z_t)||_2
  double holo_Zalpha = 0.0;    // ||(I - H)(Z_alpha - 1)||_2
  // ||(I - H)(1/Z_alpha - 1)||_2, recorded only: grid aliasing of the
  // reciprocal keeps it near q^(n/2) for sharp crests
  double holo_invZalpha = 0.0;
  double mean_Zt = 0.0;        // |mean conj(Z_t)|
  double min_Zalpha = 0.0;
  bool graph_like = true;      // Re Z strictly increasing across the grid
  double a1_consistency = 0.0; // max |conj(Z_alpha)(Z_tt + i) - i A1|
  double tolerance = 1e-10;
  bool passed = false;
  std::string failure;         // first failed check, empty when passed
};

struct InitialData {
  GridFunction P0, Zt0;
  Family family = Family::flat;
  FamilyParams params;
  ValidationRecord validation;

  WaveState to_state(GuardSettings guards = {}) const;
};

// Computes every residual; never throws for admissible grid sizes.
ValidationRecord validate(const InitialData& d, double tolerance = 1e-10,
                          double jacobian_min = 1e-6);

InitialData make_flat(std::size_t n);
// P0 = a e^{-im alpha}, Z_t0 = velocity * (-i sqrt(m) a) e^{im alpha}: the
// linear travelling wave when velocity = 1. ValidationError if inadmissible.
InitialData make_smooth_wave(std::size_t n, double a, int m, double velocity = 0.0);
// Binomial series of (1 - q e^{-i alpha})^{r-1} truncated at |k| = n/3.
// Released from rest unless velocity != 0, in which case
// conj(Z_t0) = velocity * (1/Psi_z - 1).
InitialData make_near_crest(std::size_t n, double r, double q, double velocity = 0.0);
// Multiply every mode of P0 and conj(Z_t0) by e^{-|k| eps}.
InitialData mollify(const InitialData& d, double eps);

// Closed-form helpers for the near-crest family.
double near_crest_invZalpha_sup(double r, double q);

}  // namespace cw
