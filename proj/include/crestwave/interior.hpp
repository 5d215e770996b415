#pragma once
// Holomorphic fields in the lower half-plane reconstructed from boundary
// traces: F = ext conj(Z_t), Psi_z = ext Z_alpha, the pressure and the
// interior Euler residual.

#include <string>
#include <vector>

#include "crestwave/dynamics.hpp"
#include "crestwave/wave_state.hpp"

namespace cw {

inline const std::vector<double> kDefaultHeights = {-0.1, -0.2, -0.5, -1.0};

// Value at height y < 0 of the holomorphic extension of a trace f:
// mode k <= 0 times e^{|k| y}. HolomorphicityError when
// ||(I - H)(f - mean f)|| > holo_tol * (1 + ||f||).
GridFunction extend_boundary_field(const GridFunction& f, double y, double holo_tol = 1e-8);

// Boundary trace Z_t / Z_alpha - b of Psi_t / Psi_z, and its extension.
GridFunction psi_t_over_psi_z_trace(const WaveState& s);
GridFunction psi_t_over_psi_z(const WaveState& s, double y, double holo_tol = 1e-8);

// Extension of d/dt conj(Z_t) = conj(Z_tt) - b conj(Z_t)'.
GridFunction F_t_interior(const WaveState& s, const StateRate& rate, double y,
                          double holo_tol = 1e-8);

// -|F|^2/2 - y + K_y * (|Z_t|^2)/2
GridFunction pressure(const WaveState& s, double y, double holo_tol = 1e-8);

struct InteriorSlice {
  double y = 0.0;
  GridFunction F, Fz, Psi_z, invPsi_z, Psi_t, Psi_t_over_Psi_z, F_t, pressure;
};
InteriorSlice interior_slice(const WaveState& s, const StateRate& rate, double y,
                             double holo_tol = 1e-8);
// alpha, then Re/Im of every field, one row per grid node.
std::string slice_csv(const InteriorSlice& slice);

struct EulerResidual {
  std::vector<double> heights;
  std::vector<double> residuals;  // L2(dx) norm at each height
  double max = 0.0;
};
// Residual of Psi_z F_t - Psi_t F_z + conj(F) F_z - i Psi_z + (d_x - i d_y) P,
// with d_y by centered differences of width dy.
EulerResidual euler_residual(const WaveState& s, const StateRate& rate,
                             const std::vector<double>& heights, double dy = 1e-3,
                             double holo_tol = 1e-8);

// max |Laplacian(pressure) + 2 |F_z|^2| at height y; d_xx spectral, d_yy by a
// fourth-order stencil of width dy.
double laplacian_residual(const WaveState& s, double y, double dy = 1e-2,
                          double holo_tol = 1e-8);

struct DomainEnergy {
  static const std::vector<std::string>& names();
  std::vector<double> terms;              // sup over heights and the trace
  std::vector<std::vector<double>> by_height;  // [height][term], trace last
  double total = 0.0;
  bool boundary_realizes_sup = true;
};
DomainEnergy domain_energy_E1(const WaveState& s,
                              const std::vector<double>& heights = kDefaultHeights,
                              double holo_tol = 1e-8);

}  // namespace cw
