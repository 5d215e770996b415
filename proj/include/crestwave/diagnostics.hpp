#pragma once
// Energies, geometric monitors and the per-report quantity panel. All
// Lagrangian integrals are evaluated in the alpha' frame; the weight 1/a
// becomes 1/frakA = |Z_alpha|^2 / A1.

#include <string>
#include <utility>
#include <vector>

#include "crestwave/dynamics.hpp"
#include "crestwave/wave_state.hpp"

namespace cw {

// Boundary fields and their time derivatives at one instant. Time
// derivatives follow from one rhs evaluation:
//   d/dt conj(Z_t) = conj(dZt),  d/dt (1/Z_alpha) = -(1/Z_alpha)^2 (dP)'.
struct Kinematics {
  GridFunction Zalpha, invZalpha, A1, frakA, b;
  GridFunction Ztbar, dZtbar, Zttbar;
  GridFunction Ztbar_t, invZalpha_t;  // partial time derivatives at fixed alpha'
  GridFunction DZtbar, D2Ztbar;

  static Kinematics from(const WaveState& s);
  static Kinematics from(const WaveState& s, const StateRate& rate);

  GridFunction D(const GridFunction& f) const;
  // (d/dt + b d/dalpha') f given the partial time derivative f_t
  GridFunction material(const GridFunction& f, const GridFunction& f_t) const;
  // material derivative of D^2 conj(Z_t) and D conj(Z_t)
  GridFunction Dt_D2Ztbar() const;
  GridFunction Dt_DZtbar() const;
};

struct DiagnosticsOptions {
  bool eb_squared = false;        // square the last E_b term
  bool higher_energies = true;    // compute E2 and E3
  bool check_resolution = true;   // UnderResolvedError from E_k
  double resolution_tail_max = 0.1;
};

// Weighted integral int |f|^2 w over one period.
double weighted_l2_squared(const GridFunction& f, const GridFunction& w);

double energy_Ea(const WaveState& s);
double energy_Ea(const Kinematics& k);
double energy_Eb(const WaveState& s, bool squared_last_term = false);
double energy_Eb(const Kinematics& k, bool squared_last_term = false);
double energy_frakE(const WaveState& s, const DiagnosticsOptions& opt = {});

struct CalETerms {
  static const std::vector<std::string>& names();
  std::vector<double> terms;
  double total = 0.0;
};
CalETerms energy_calE_terms(const WaveState& s);
CalETerms energy_calE_terms(const Kinematics& k);
double energy_calE(const WaveState& s);

// E_k for k in {2, 3}; UnderResolvedError when more than the allowed share
// of the spectral energy of the k-th derivative sits in the top third of the
// dealiased band.
double energy_Ek(const WaveState& s, int k, const DiagnosticsOptions& opt = {});
double energy_Ek(const Kinematics& kin, int k, const DiagnosticsOptions& opt = {});

struct EthetaTerms {
  double kinetic = 0.0;    // int |theta_t|^2 / frakA
  double hhalf = 0.0;      // ||theta||^2_{H^1/2}
  double potential = 0.0;  // int |theta|^2 / frakA
  double total = 0.0;
};
// theta, its material time derivative and the weight frakA, all in the
// alpha' frame. HolomorphicityError when ||(I - H) theta|| exceeds
// holo_tol * (1 + ||theta||).
EthetaTerms energy_Etheta_terms(const GridFunction& theta, const GridFunction& theta_t,
                                const GridFunction& frakA, double holo_tol = 1e-8);
double energy_Etheta(const GridFunction& theta, const GridFunction& theta_t,
                     const GridFunction& frakA, double holo_tol = 1e-8);
// Re(i int theta' conj(theta)): the pairing form of the H^1/2 term
double hhalf_pairing(const GridFunction& theta);

GridFunction taylor_sign(const WaveState& s);

struct ChordArc {
  double delta = 1.0;
  bool self_intersection = false;
  std::size_t j = 0, k = 0;  // minimizing pair
};
// Chord on the cylinder C / 2 pi Z, arc the shorter way along the curve.
// Block pruning skips pairs whose lower bound cannot beat the current min.
ChordArc chord_arc(const WaveState& s, bool prune = true);
double chord_arc_delta(const WaveState& s);

struct EnergyReport {
  double t = 0.0;
  double Ea = 0.0, Eb = 0.0, frakE = 0.0, calE = 0.0, E2 = 0.0, E3 = 0.0;
  double taylor_min = 0.0;
  double chord_arc_delta = 1.0;
  bool self_intersection = false;
  double holo_residual_Zt = 0.0, holo_residual_Zalpha = 0.0;
  double at_over_a_sup = 0.0;
  std::vector<double> panel;  // ordered as panel_names()

  static const std::vector<std::string>& panel_names();
  double panel_value(const std::string& name) const;
  bool finite() const;
};

EnergyReport make_report(const WaveState& s, const DiagnosticsOptions& opt = {});

// Fixed CSV column order and one row per report (17 significant digits).
std::string csv_header();
std::string csv_row(const EnergyReport& r);

struct MonitorPolicy {
  double kappa = 50.0;
  double taylor_floor = 1e-6;
  double chord_arc_floor = 1e-3;
};

enum class TerminationReason {
  completed,
  blowup_monitor,
  jacobian_guard,
  a1_violation,
  self_intersection,
};
const char* to_string(TerminationReason r);

struct MonitorDecision {
  bool stop = false;
  TerminationReason reason = TerminationReason::completed;
  std::string detail;
};

MonitorDecision blowup_monitor(const EnergyReport& report, double frakE0,
                               const MonitorPolicy& policy);

}  // namespace cw
