#pragma once
// Semi-discrete right-hand side in the fixed alpha' frame, RK4 stepping,
// spectral filtering and Lagrangian markers.

#include <array>
#include <vector>

#include "crestwave/wave_state.hpp"

namespace cw {

struct StateRate {
  GridFunction dP;   // Z_t - b Z_alpha
  GridFunction dZt;  // Z_tt - b Z_t'
};

StateRate rhs(const WaveState& s);

struct FilterSettings {
  bool dealias = true;      // 2/3 rule: keep |k| <= n/3
  double eps_filter = 0.0;  // zero modes with |c_k| < eps_filter (0 = off)
  bool projection = false;  // keep only k > 0 in Z_t and k <= 0 in P
};

// Largest retained wavenumber under the 2/3 rule.
int dealias_kmax(std::size_t n);

WaveState apply_filter(const WaveState& s, const FilterSettings& f);

struct StepResult {
  WaveState state;
  std::array<GridFunction, 4> stage_b;  // b at t, t+dt/2, t+dt/2, t+dt
};

StepResult step_rk4_stages(const WaveState& s, double dt, const FilterSettings& f = {});
WaveState step_rk4(const WaveState& s, double dt, const FilterSettings& f = {});

// dt = c_cfl * min(1/||b||_inf, 1) * 2 pi / n
double cfl_dt(const WaveState& s, double c_cfl);

// Marker positions h_i, stored unwrapped and strictly increasing with
// h_last < h_0 + 2 pi.
class MarkerSet {
 public:
  MarkerSet() = default;
  explicit MarkerSet(std::vector<double> h);
  static MarkerSet uniform(std::size_t m);

  std::size_t size() const { return h_.size(); }
  const std::vector<double>& positions() const { return h_; }
  // Position reduced to [0, 2 pi).
  double wrapped(std::size_t i) const;
  // Throws MarkerCollisionError if the cyclic ordering is violated.
  void check_ordering() const;

 private:
  std::vector<double> h_;
};

// Coupled RK4 for dh/dt = b(h, t) using the four stage fields of one step.
MarkerSet advance_markers(const MarkerSet& markers,
                          const std::array<GridFunction, 4>& stage_b, double dt);

}  // namespace cw
