#pragma once
// Time integration with reporting and guards.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crestwave/diagnostics.hpp"
#include "crestwave/dynamics.hpp"

namespace cw {

struct DtPolicy {
  bool use_cfl = true;
  double value = 0.5;  // c_cfl, or the fixed dt
  static DtPolicy fixed(double dt) { return {false, dt}; }
  static DtPolicy cfl(double c = 0.5) { return {true, c}; }
};

struct RunOptions {
  double T = 1.0;
  DtPolicy dt = DtPolicy::cfl();
  FilterSettings filter;
  double report_interval = 0.1;  // reports at t = 0, interval, 2*interval, ..., T
  bool monitor = true;
  MonitorPolicy policy;
  DiagnosticsOptions diagnostics;
  std::size_t markers = 0;     // 0 disables marker tracking
  bool keep_snapshots = false; // store the state at every report time
  // Called after every accepted step (and once for the initial state).
  std::function<void(const WaveState&)> on_step;
};

struct Trajectory {
  std::vector<EnergyReport> reports;
  std::vector<WaveState> snapshots;
  WaveState final_state;
  std::optional<MarkerSet> markers;
  TerminationReason reason = TerminationReason::completed;
  std::string detail;
  std::size_t steps = 0;
  double min_A1 = 1.0;          // over every accepted step
  double max_mean_drift = 0.0;  // max |mean conj(Z_t)| over accepted steps
};

Trajectory run(const WaveState& initial, const RunOptions& options);

}  // namespace cw
