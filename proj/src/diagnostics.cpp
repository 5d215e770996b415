#include "crestwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "crestwave/errors.hpp"
#include "crestwave/spectral.hpp"

namespace cw {

Kinematics Kinematics::from(const WaveState& s) { return from(s, rhs(s)); }

Kinematics Kinematics::from(const WaveState& s, const StateRate& rate) {
  const auto& d = s.derived();
  Kinematics k;
  k.Zalpha = d.Zalpha;
  k.invZalpha = d.invZalpha;
  k.A1 = d.A1;
  k.frakA = d.frakA;
  k.b = d.b;
  k.Ztbar = s.Zt().conj();
  k.dZtbar = d.dZt.conj();
  k.Zttbar = d.Ztt.conj();
  k.Ztbar_t = rate.dZt.conj();
  k.invZalpha_t = -(d.invZalpha * d.invZalpha * derivative(rate.dP));
  k.DZtbar = d.invZalpha * k.dZtbar;
  k.D2Ztbar = d.invZalpha * derivative(k.DZtbar);
  return k;
}

GridFunction Kinematics::D(const GridFunction& f) const {
  return invZalpha * derivative(f);
}

GridFunction Kinematics::material(const GridFunction& f, const GridFunction& f_t) const {
  return f_t + b * derivative(f);
}

GridFunction Kinematics::Dt_DZtbar() const {
  const GridFunction DZ_t = invZalpha_t * dZtbar + invZalpha * derivative(Ztbar_t);
  return material(DZtbar, DZ_t);
}

GridFunction Kinematics::Dt_D2Ztbar() const {
  const GridFunction DZ_t = invZalpha_t * dZtbar + invZalpha * derivative(Ztbar_t);
  const GridFunction D2Z_t = invZalpha_t * derivative(DZtbar) + invZalpha * derivative(DZ_t);
  return material(D2Ztbar, D2Z_t);
}

double weighted_l2_squared(const GridFunction& f, const GridFunction& w) {
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += std::norm(f[j]) * w[j].real();
  return acc * f.spacing();
}

namespace {

double sq(double x) { return x * x; }

GridFunction inverse_real(const GridFunction& w) {
  return w.map([](cplx z) { return cplx(1.0 / z.real(), 0.0); });
}

}  // namespace

double energy_Ea(const Kinematics& k) {
  const GridFunction wA1 = inverse_real(k.A1);
  return weighted_l2_squared(k.Dt_D2Ztbar(), wA1) +
         sq(hhalf_norm(k.invZalpha * k.D2Ztbar)) +
         weighted_l2_squared(k.D2Ztbar, wA1);
}

double energy_Ea(const WaveState& s) { return energy_Ea(Kinematics::from(s)); }

double energy_Eb(const Kinematics& k, bool squared_last_term) {
  const GridFunction w = inverse_real(k.frakA);
  const double last = l2_norm(k.dZtbar);
  return weighted_l2_squared(k.Dt_DZtbar(), w) + sq(hhalf_norm(k.DZtbar)) +
         (squared_last_term ? last * last : last);
}

double energy_Eb(const WaveState& s, bool squared_last_term) {
  return energy_Eb(Kinematics::from(s), squared_last_term);
}

double energy_frakE(const WaveState& s, const DiagnosticsOptions& opt) {
  const Kinematics k = Kinematics::from(s);
  return energy_Ea(k) + energy_Eb(k, opt.eb_squared) + linf_norm(k.Zttbar - kI);
}

const std::vector<std::string>& CalETerms::names() {
  static const std::vector<std::string> n = {
      "Zbar_t_a_L2sq",    "D2_Zbar_t_L2sq",           "d_invZa_L2sq",
      "D2_invZa_L2sq",    "invZa_D2_Zbar_t_Hhalfsq",  "D_Zbar_t_Hhalfsq",
      "invZa_Linfsq"};
  return n;
}

CalETerms energy_calE_terms(const Kinematics& k) {
  CalETerms c;
  const GridFunction d_inv = derivative(k.invZalpha);
  c.terms = {
      sq(l2_norm(k.dZtbar)),
      sq(l2_norm(k.D2Ztbar)),
      sq(l2_norm(d_inv)),
      sq(l2_norm(k.D(k.D(k.invZalpha)))),
      sq(hhalf_norm(k.invZalpha * k.D2Ztbar)),
      sq(hhalf_norm(k.DZtbar)),
      sq(linf_norm(k.invZalpha)),
  };
  for (double t : c.terms) c.total += t;
  return c;
}

CalETerms energy_calE_terms(const WaveState& s) {
  const auto& d = s.derived();
  // no time derivatives needed, so skip the rhs evaluation
  Kinematics k;
  k.Zalpha = d.Zalpha;
  k.invZalpha = d.invZalpha;
  k.dZtbar = d.dZt.conj();
  k.DZtbar = d.invZalpha * k.dZtbar;
  k.D2Ztbar = d.invZalpha * derivative(k.DZtbar);
  return energy_calE_terms(k);
}

double energy_calE(const WaveState& s) { return energy_calE_terms(s).total; }

double energy_Ek(const Kinematics& kin, int k, const DiagnosticsOptions& opt) {
  if (k != 2 && k != 3) throw DomainError("E_k is defined for k = 2, 3");
  const GridFunction dk = derivative(kin.Ztbar, k);
  if (opt.check_resolution) {
    const int kmax = dealias_kmax(dk.size());
    const double tail = tail_energy_fraction(dk, 2 * kmax / 3);
    if (tail > opt.resolution_tail_max) {
      std::ostringstream os;
      os << "E" << k << ": " << tail << " of the spectral energy of the "
         << k << "-th derivative lies in the top third of the band";
      throw UnderResolvedError(os.str(), tail);
    }
  }
  const GridFunction u = kin.invZalpha * dk;
  const GridFunction u_t = kin.invZalpha_t * dk + kin.invZalpha * derivative(kin.Ztbar_t, k);
  const GridFunction w = inverse_real(kin.A1);
  return weighted_l2_squared(dk, w) +
         weighted_l2_squared(kin.Zalpha * kin.material(u, u_t), w) + sq(hhalf_norm(u));
}

double energy_Ek(const WaveState& s, int k, const DiagnosticsOptions& opt) {
  return energy_Ek(Kinematics::from(s), k, opt);
}

double hhalf_pairing(const GridFunction& theta) {
  return (kI * integral(derivative(theta) * theta.conj())).real();
}

EthetaTerms energy_Etheta_terms(const GridFunction& theta, const GridFunction& theta_t,
                                const GridFunction& frakA, double holo_tol) {
  const double res = holo_residual(theta);
  if (res > holo_tol * (1.0 + l2_norm(theta))) {
    std::ostringstream os;
    os << "E_theta: ||(I - H) theta|| = " << res;
    throw HolomorphicityError(os.str(), res);
  }
  const GridFunction w = inverse_real(frakA);
  EthetaTerms e;
  e.kinetic = weighted_l2_squared(theta_t, w);
  e.hhalf = sq(hhalf_norm(theta));
  e.potential = weighted_l2_squared(theta, w);
  e.total = e.kinetic + e.hhalf + e.potential;
  return e;
}

double energy_Etheta(const GridFunction& theta, const GridFunction& theta_t,
                     const GridFunction& frakA, double holo_tol) {
  return energy_Etheta_terms(theta, theta_t, frakA, holo_tol).total;
}

GridFunction taylor_sign(const WaveState& s) {
  const auto& d = s.derived();
  return d.A1 / d.Zalpha.abs();
}

ChordArc chord_arc(const WaveState& s, bool prune) {
  const auto& d = s.derived();
  const std::size_t n = s.size();
  const GridFunction Z = s.Z();
  // cumulative arclength by the trapezoid rule on |Z_alpha|
  std::vector<double> arc(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    arc[j + 1] = arc[j] + 0.5 * s.P().spacing() *
                              (std::abs(d.Zalpha[j]) + std::abs(d.Zalpha[(j + 1) % n]));
  const double L = arc[n];
  auto arc_between = [&](std::size_t j, std::size_t k) {
    const double a = std::abs(arc[j] - arc[k]);
    return std::min(a, L - a);
  };
  auto chord_between = [&](std::size_t j, std::size_t k) {
    const cplx dz = Z[j] - Z[k];
    return std::min({std::abs(dz), std::abs(dz + kTwoPi), std::abs(dz - kTwoPi)});
  };

  ChordArc best;
  auto visit = [&](std::size_t j, std::size_t k) {
    const double a = arc_between(j, k);
    const double c = chord_between(j, k);
    if (c < 1e-12 && a > 1e-6) {
      best = {0.0, true, j, k};
      return true;
    }
    if (a <= 0.0) return false;
    const double r = std::min(1.0, c / a);
    if (r < best.delta) best = {r, false, j, k};
    return false;
  };

  const std::size_t w = prune ? std::max<std::size_t>(4, n / 64) : n;
  const std::size_t nb = (n + w - 1) / w;
  // block centers and radii (max arclength from the center within the block)
  std::vector<std::size_t> center(nb);
  std::vector<double> radius(nb);
  for (std::size_t B = 0; B < nb; ++B) {
    const std::size_t lo = B * w, hi = std::min(n, lo + w);
    center[B] = (lo + hi) / 2;
    radius[B] = std::max(arc_between(center[B], lo), arc_between(center[B], hi - 1));
  }
  for (std::size_t B = 0; B < nb; ++B) {
    for (std::size_t C = B; C < nb; ++C) {
      if (prune && C > B + 1 && !(B == 0 && C == nb - 1)) {
        const double cc = chord_between(center[B], center[C]);
        const double ac = arc_between(center[B], center[C]);
        const double span = radius[B] + radius[C];
        const double lower = (cc - span) / (ac + span);
        if (lower >= best.delta) continue;
      }
      const std::size_t lo = B * w, hi = std::min(n, lo + w);
      const std::size_t lo2 = C * w, hi2 = std::min(n, lo2 + w);
      for (std::size_t j = lo; j < hi; ++j)
        for (std::size_t k = std::max(lo2, B == C ? j + 1 : lo2); k < hi2; ++k)
          if (visit(j, k)) return best;
    }
  }
  return best;
}

double chord_arc_delta(const WaveState& s) { return chord_arc(s).delta; }

const std::vector<std::string>& EnergyReport::panel_names() {
  static const std::vector<std::string> n = {
      "D2_Zbar_tt_L2",        "D2_Z_tt_L2",           "D2_Zbar_t_L2",
      "D2_Z_t_L2",            "D_Dt_D_Zbar_t_L2",     "invZa_D2_Zbar_t_Hhalf",
      "D_Zbar_tt_Linf",       "D_Z_tt_Linf",          "D_Zbar_t_Linf",
      "D_Z_t_Linf",           "Zbar_tt_a_L2",         "Zbar_t_a_L2",
      "D_Zbar_t_sq_over_frakA", "D_Zbar_tt_sq_over_frakA", "invZa_Linf",
      "Ztt_plus_i_Linf",      "A1_Linf",              "at_over_a_Linf",
      "d_invZa_L2",           "b_a_Linf",             "I_plus_H_D_Z_t_Linf",
      "D_invZa_Linf",         "Ztt_plus_i_d_invZa_Linf", "d_PA_Zt_over_Za_Linf",
      "PA_Zt_d_invZa_Linf",   "D_b_a_L2",             "A1_min",
      "mean_Zbar_t_abs"};
  return n;
}

double EnergyReport::panel_value(const std::string& name) const {
  const auto& n = panel_names();
  const auto it = std::find(n.begin(), n.end(), name);
  if (it == n.end() || panel.size() != n.size())
    throw DomainError("unknown panel quantity: " + name);
  return panel[static_cast<std::size_t>(it - n.begin())];
}

bool EnergyReport::finite() const {
  for (double v : {t, Ea, Eb, frakE, calE, E2, E3, taylor_min, chord_arc_delta,
                   holo_residual_Zt, holo_residual_Zalpha, at_over_a_sup})
    if (!std::isfinite(v)) return false;
  return std::all_of(panel.begin(), panel.end(), [](double v) { return std::isfinite(v); });
}

EnergyReport make_report(const WaveState& s, const DiagnosticsOptions& opt) {
  const Kinematics k = Kinematics::from(s);
  const auto& d = s.derived();
  EnergyReport r;
  r.t = s.t();
  r.Ea = energy_Ea(k);
  r.Eb = energy_Eb(k, opt.eb_squared);
  r.frakE = r.Ea + r.Eb + linf_norm(k.Zttbar - kI);
  r.calE = energy_calE_terms(k).total;
  if (opt.higher_energies) {
    r.E2 = energy_Ek(k, 2, opt);
    r.E3 = energy_Ek(k, 3, opt);
  }
  r.taylor_min = min_real(taylor_sign(s));
  const ChordArc ca = chord_arc(s);
  r.chord_arc_delta = ca.delta;
  r.self_intersection = ca.self_intersection;
  r.holo_residual_Zt = holo_residual(k.Ztbar);
  r.holo_residual_Zalpha = holo_residual(k.Zalpha - 1.0);
  const GridFunction& at = s.at_over_a();
  r.at_over_a_sup = linf_norm(at);

  const GridFunction& Zt = s.Zt();
  const GridFunction& Ztt = d.Ztt;
  const GridFunction d_inv = derivative(k.invZalpha);
  const GridFunction b_a = derivative(k.b);
  const GridFunction wA = inverse_real(k.frakA);
  const GridFunction D_Zt = k.D(Zt);
  const GridFunction q = Zt * k.invZalpha;
  r.panel = {
      l2_norm(k.D(k.D(k.Zttbar))),
      l2_norm(k.D(k.D(Ztt))),
      l2_norm(k.D2Ztbar),
      l2_norm(k.D(D_Zt)),
      l2_norm(k.D(k.Dt_DZtbar())),
      hhalf_norm(k.invZalpha * k.D2Ztbar),
      linf_norm(k.D(k.Zttbar)),
      linf_norm(k.D(Ztt)),
      linf_norm(k.DZtbar),
      linf_norm(D_Zt),
      l2_norm(derivative(k.Zttbar)),
      l2_norm(k.dZtbar),
      weighted_l2_squared(k.DZtbar, wA),
      weighted_l2_squared(k.D(k.Zttbar), wA),
      linf_norm(k.invZalpha),
      linf_norm(Ztt + kI),
      linf_norm(k.A1),
      r.at_over_a_sup,
      l2_norm(d_inv),
      linf_norm(b_a),
      linf_norm(D_Zt + hilbert(D_Zt)),
      linf_norm(k.D(k.invZalpha)),
      linf_norm((Ztt + kI) * d_inv),
      linf_norm(derivative(proj_anti(q))),
      linf_norm(proj_anti(Zt * d_inv)),
      l2_norm(k.D(b_a)),
      d.min_A1,
      std::abs(mean(k.Ztbar)),
  };
  return r;
}

std::string csv_header() {
  std::string h =
      "t,Ea,Eb,frakE,calE,E2,E3,taylor_min,chord_arc_delta,holo_Zt,holo_Za,at_over_a_sup";
  for (const auto& n : EnergyReport::panel_names()) h += "," + n;
  return h;
}

std::string csv_row(const EnergyReport& r) {
  std::string row;
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!row.empty()) row += ',';
    row += buf;
  };
  for (double v : {r.t, r.Ea, r.Eb, r.frakE, r.calE, r.E2, r.E3, r.taylor_min,
                   r.chord_arc_delta, r.holo_residual_Zt, r.holo_residual_Zalpha,
                   r.at_over_a_sup})
    put(v);
  for (double v : r.panel) put(v);
  return row;
}

const char* to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::completed: return "completed";
    case TerminationReason::blowup_monitor: return "blowup_monitor";
    case TerminationReason::jacobian_guard: return "jacobian_guard";
    case TerminationReason::a1_violation: return "a1_violation";
    case TerminationReason::self_intersection: return "self_intersection";
  }
  return "unknown";
}

MonitorDecision blowup_monitor(const EnergyReport& report, double frakE0,
                               const MonitorPolicy& policy) {
  MonitorDecision d;
  auto stop = [&](TerminationReason r, std::string why) {
    d.stop = true;
    d.reason = r;
    d.detail = std::move(why);
    return d;
  };
  if (!report.finite()) return stop(TerminationReason::blowup_monitor, "nonfinite");
  if (report.self_intersection)
    return stop(TerminationReason::self_intersection, "chord vanished");
  if (report.frakE > policy.kappa * frakE0)
    return stop(TerminationReason::blowup_monitor, "energy_growth");
  if (report.taylor_min < policy.taylor_floor)
    return stop(TerminationReason::blowup_monitor, "taylor_floor");
  if (report.chord_arc_delta < policy.chord_arc_floor)
    return stop(TerminationReason::self_intersection, "chord_arc_floor");
  return d;
}

}  // namespace cw
