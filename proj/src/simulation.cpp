#include "crestwave/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "crestwave/errors.hpp"
#include "crestwave/spectral.hpp"

namespace cw {

Trajectory run(const WaveState& initial, const RunOptions& opt) {
  if (!(opt.T >= 0.0)) throw DomainError("run horizon must be nonnegative");
  if (!(opt.dt.value > 0.0)) throw DomainError("dt policy value must be positive");
  if (!(opt.report_interval > 0.0)) throw DomainError("report interval must be positive");

  Trajectory tr;
  WaveState s = initial;
  tr.final_state = s;
  if (opt.markers > 0) tr.markers = MarkerSet::uniform(opt.markers);

  double frakE0 = 0.0;
  std::size_t next_report = 1;
  const double eps_t = 1e-12 * std::max(1.0, opt.T);

  auto finite_state = [](const WaveState& st) {
    auto ok = [](const GridFunction& g) {
      return std::all_of(g.values().begin(), g.values().end(), [](cplx z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
      });
    };
    return ok(st.P()) && ok(st.Zt());
  };
  auto observe = [&](const WaveState& st) -> bool {
    if (!finite_state(st)) {
      tr.reason = TerminationReason::blowup_monitor;
      tr.detail = "nonfinite";
      return true;
    }
    const auto& d = st.derived();
    tr.min_A1 = std::min(tr.min_A1, d.min_A1);
    tr.max_mean_drift = std::max(tr.max_mean_drift, std::abs(mean(st.Zt())));
    if (opt.on_step) opt.on_step(st);
    return false;
  };
  auto report = [&](const WaveState& st) -> bool {
    EnergyReport r = make_report(st, opt.diagnostics);
    if (tr.reports.empty()) frakE0 = r.frakE;
    tr.reports.push_back(r);
    if (opt.keep_snapshots) tr.snapshots.push_back(st);
    if (!opt.monitor) return false;
    const MonitorDecision dec = blowup_monitor(r, frakE0, opt.policy);
    if (dec.stop) {
      tr.reason = dec.reason;
      tr.detail = dec.detail;
    }
    return dec.stop;
  };

  try {
    if (observe(s) || report(s)) return tr;
    while (s.t() < opt.T - eps_t) {
      const double t_report = std::min(opt.T, next_report * opt.report_interval);
      double dt = opt.dt.use_cfl ? cfl_dt(s, opt.dt.value) : opt.dt.value;
      bool at_report = false;
      if (s.t() + dt >= t_report - eps_t) {
        dt = t_report - s.t();
        at_report = true;
      }
      StepResult step = step_rk4_stages(s, dt, opt.filter);
      if (at_report) step.state.set_time(t_report);
      if (tr.markers) tr.markers = advance_markers(*tr.markers, step.stage_b, dt);
      s = std::move(step.state);
      ++tr.steps;
      tr.final_state = s;
      if (observe(s)) return tr;
      if (at_report) {
        ++next_report;
        if (report(s)) return tr;
      }
    }
  } catch (const JacobianGuardError& e) {
    tr.reason = TerminationReason::jacobian_guard;
    tr.detail = e.what();
  } catch (const A1ViolationError& e) {
    tr.reason = TerminationReason::a1_violation;
    tr.detail = e.what();
  } catch (const UnderResolvedError& e) {
    tr.reason = TerminationReason::blowup_monitor;
    tr.detail = std::string("under_resolved: ") + e.what();
  } catch (const MarkerCollisionError& e) {
    tr.reason = TerminationReason::blowup_monitor;
    tr.detail = std::string("marker_collision: ") + e.what();
  }
  return tr;
}

}  // namespace cw
