#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "crestwave/diagnostics.hpp"
#include "crestwave/errors.hpp"
#include "crestwave/initial_data.hpp"
#include "crestwave/random_fields.hpp"
#include "crestwave/simulation.hpp"
#include "crestwave/spectral.hpp"

using namespace cw;

namespace {

GridFunction mode(std::size_t n, int k, cplx amp = 1.0) {
  return GridFunction::sample(n, [k, amp](double x) { return amp * std::polar(1.0, k * x); });
}

double trapz(const GridFunction& f) {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += f[j];
  return (acc * f.spacing()).real();
}

double weighted(const GridFunction& f, const GridFunction& w) {
  return trapz(f.map([](cplx z) { return cplx(std::norm(z)); }) / w);
}

// i int theta' conj(theta): the H^1/2 seminorm squared for holomorphic theta
double pairing(const GridFunction& theta) { return trapz(kI * derivative(theta) * theta.conj()); }

GridFunction a1_by_quadrature(const GridFunction& Zt) {
  const std::size_t n = Zt.size();
  const GridFunction d = derivative(Zt);
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = std::norm(d[j]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const double s = std::sin(0.5 * (Zt.node(j) - Zt.node(k)));
      acc += std::norm(Zt[j] - Zt[k]) / (4.0 * s * s);
    }
    out[j] = 1.0 + acc * Zt.spacing() / kTwoPi;
  }
  return GridFunction(std::move(out));
}

// Term-by-term assembly on a flat interface (Z_alpha = 1 at this instant).
struct FlatOracle {
  double Ea, Eb, E2, frakE;
  explicit FlatOracle(const GridFunction& Zt) {
    const GridFunction A1 = a1_by_quadrature(Zt);
    const GridFunction b = 2.0 * Zt.real();
    const GridFunction Ztt = kI * (A1 - 1.0);
    const GridFunction Zb = Zt.conj();
    const GridFunction Zb1 = derivative(Zb), Zb2 = derivative(Zb, 2);
    const GridFunction Zb_t = Ztt.conj() - b * Zb1;        // at fixed alpha'
    const GridFunction inv_t = -derivative(Zt - b);         // d/dt (1/Z_alpha)
    const GridFunction D2_t = inv_t * Zb2 + derivative(inv_t * Zb1) + derivative(Zb_t, 2);
    const GridFunction M2 = D2_t + b * derivative(Zb2);
    const GridFunction M1 = inv_t * Zb1 + derivative(Zb_t) + b * Zb2;
    Ea = weighted(M2, A1) + pairing(Zb2) + weighted(Zb2, A1);
    Eb = weighted(M1, A1) + pairing(Zb1) + std::sqrt(trapz(Zb1 * Zb1.conj()));
    const GridFunction u_t = inv_t * Zb2 + derivative(Zb_t, 2);
    E2 = weighted(Zb2, A1) + weighted(u_t + b * derivative(Zb2), A1) + pairing(Zb2);
    frakE = Ea + Eb + linf_norm(Ztt.conj() - kI);
  }
};

WaveState shifted(const WaveState& s, std::ptrdiff_t k) {
  return WaveState(s.t(), s.P().shifted(k), s.Zt().shifted(k));
}

EnergyReport synthetic(double frakE, double taylor = 1.0, double delta = 1.0) {
  EnergyReport r;
  r.frakE = frakE;
  r.taylor_min = taylor;
  r.chord_arc_delta = delta;
  r.panel.assign(EnergyReport::panel_names().size(), 0.0);
  return r;
}

}  // namespace

TEST_CASE("flat rest") {
  const WaveState s = make_flat(128).to_state();
  CHECK(energy_Ea(s) == 0.0);
  CHECK(energy_Eb(s) == 0.0);
  CHECK(energy_frakE(s) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(energy_calE(s) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(energy_Ek(s, 2) == 0.0);
  CHECK(energy_Ek(s, 3) == 0.0);
  CHECK(linf_norm(taylor_sign(s) - 1.0) < 1e-15);
  const EnergyReport r = make_report(s);
  CHECK(r.chord_arc_delta == doctest::Approx(1.0));
  CHECK_FALSE(r.self_intersection);
  CHECK(r.finite());
}

TEST_CASE("energies against a term-by-term assembly") {
  const std::size_t n = 256;
  for (int m : {1, 2, 3}) {
    CAPTURE(m);
    const GridFunction Zt = mode(n, m, 0.05);
    const WaveState s(0.0, GridFunction(n), Zt);
    const FlatOracle o(Zt);
    CHECK(std::abs(energy_Ea(s) - o.Ea) < 1e-8 * (1.0 + o.Ea));
    CHECK(std::abs(energy_Eb(s) - o.Eb) < 1e-8 * (1.0 + o.Eb));
    CHECK(std::abs(energy_Ek(s, 2) - o.E2) < 1e-8 * (1.0 + o.E2));
    CHECK(std::abs(energy_frakE(s) - o.frakE) < 1e-8 * (1.0 + o.frakE));
  }
}

TEST_CASE("E_b last term variants") {
  Rng rng(211);
  const WaveState s = random_admissible_state(128, 10, rng);
  const double v = l2_norm(derivative(s.Zt().conj()));
  CHECK(energy_Eb(s, true) - energy_Eb(s, false) == doctest::Approx(v * v - v).epsilon(1e-10));
  DiagnosticsOptions sq;
  sq.eb_squared = true;
  CHECK(energy_frakE(s, sq) - energy_frakE(s) == doctest::Approx(v * v - v).epsilon(1e-10));
}

TEST_CASE("report assembly") {
  Rng rng(223);
  const WaveState s = random_admissible_state(128, 10, rng);
  const EnergyReport r = make_report(s);
  CHECK(r.frakE == r.Ea + r.Eb + linf_norm(s.Ztt().conj() - kI));
  CHECK(r.Ea == energy_Ea(s));
  CHECK(r.calE == energy_calE(s));
  for (double v : {r.Ea, r.Eb, r.frakE, r.calE, r.E2, r.E3, r.taylor_min, r.holo_residual_Zt,
                   r.holo_residual_Zalpha, r.at_over_a_sup})
    CHECK(v >= 0.0);
  CHECK(r.chord_arc_delta > 0.0);
  CHECK(r.chord_arc_delta <= 1.0);
  for (double v : r.panel) CHECK(v >= 0.0);
  CHECK(r.panel.size() == EnergyReport::panel_names().size());
  CHECK(r.panel_value("invZa_Linf") == doctest::Approx(linf_norm(s.invZalpha())));
  CHECK(r.panel_value("A1_Linf") == doctest::Approx(linf_norm(s.A1())));
  CHECK_THROWS_AS(r.panel_value("nope"), DomainError);
  const auto terms = energy_calE_terms(s);
  CHECK(terms.terms.size() == CalETerms::names().size());
  double sum = 0.0;
  for (double t : terms.terms) sum += t;
  CHECK(terms.total == sum);
}

TEST_CASE("invariance under translation and horizontal shift") {
  Rng rng(227);
  const WaveState s = random_admissible_state(128, 10, rng);
  const double frakE = energy_frakE(s), calE = energy_calE(s);
  for (std::ptrdiff_t k : {1, 17, -40}) {
    const WaveState t = shifted(s, k);
    CHECK(energy_frakE(t) == doctest::Approx(frakE).epsilon(1e-12));
    CHECK(energy_calE(t) == doctest::Approx(calE).epsilon(1e-12));
    CHECK(min_real(taylor_sign(t)) == doctest::Approx(min_real(taylor_sign(s))).epsilon(1e-12));
  }
  const WaveState h(0.0, s.P() + 0.37, s.Zt());
  CHECK(energy_frakE(h) == doctest::Approx(frakE).epsilon(1e-12));
  CHECK(energy_calE(h) == doctest::Approx(calE).epsilon(1e-12));
}

TEST_CASE("calE addends under velocity scaling") {
  Rng rng(229);
  const WaveState s = random_admissible_state(128, 10, rng);
  const WaveState s2(0.0, s.P(), 2.0 * s.Zt());
  const auto t1 = energy_calE_terms(s).terms, t2 = energy_calE_terms(s2).terms;
  for (std::size_t i : {0u, 1u, 4u, 5u}) CHECK(t2[i] == doctest::Approx(4.0 * t1[i]).epsilon(1e-12));
  for (std::size_t i : {2u, 3u, 6u}) CHECK(t2[i] == doctest::Approx(t1[i]).epsilon(1e-14));
}

TEST_CASE("calE within a polynomial envelope of frakE") {
  Rng rng(233);
  std::uniform_real_distribution<double> slope_d(0.05, 0.3), speed_d(0.02, 0.2);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double slope = slope_d(rng), speed = speed_d(rng);
    const WaveState s = random_admissible_state(128, 8, rng, slope, speed);
    worst = std::max(worst, energy_calE(s) / std::pow(energy_frakE(s), 2.0));
  }
  MESSAGE("fitted envelope: calE <= " << worst << " * frakE^2");
  CHECK(std::isfinite(worst));
}

TEST_CASE("E_k resolution guard") {
  const std::size_t n = 64;
  const WaveState ok(0.0, GridFunction(n), mode(n, 2, 0.01));
  CHECK(energy_Ek(ok, 3) > 0.0);
  CHECK_THROWS_AS(energy_Ek(ok, 4), DomainError);
  const WaveState rough(0.0, GridFunction(n), mode(n, 2, 0.01) + mode(n, 20, 1e-4));
  CHECK_THROWS_AS(energy_Ek(rough, 3), UnderResolvedError);
  DiagnosticsOptions off;
  off.check_resolution = false;
  CHECK_NOTHROW(energy_Ek(rough, 3, off));
}

TEST_CASE("E_theta") {
  const std::size_t n = 128;
  const GridFunction zero(n), one(n, 1.0);
  CHECK(energy_Etheta(zero, zero, one) == 0.0);

  Rng rng(239);
  const GridFunction theta = random_field(n, 16, Support::holomorphic, rng);
  CHECK(std::abs(hhalf_pairing(theta) - std::pow(hhalf_norm(theta), 2)) <
        1e-9 * std::pow(hhalf_norm(theta), 2));
  const auto e = energy_Etheta_terms(theta, zero, one);
  CHECK(e.hhalf == doctest::Approx(pairing(theta)).epsilon(1e-9));
  CHECK(e.total == e.kinetic + e.hhalf + e.potential);
  CHECK_THROWS_AS(energy_Etheta(theta + mode(n, 3, 0.1), zero, one), HolomorphicityError);
}

TEST_CASE("E_theta differential inequality along a run") {
  // theta = conj(Z_t): theta_tt + i frakA theta' = G in the alpha' frame
  const WaveState s0 = make_smooth_wave(256, 0.05, 2, 1.0).to_state();
  const double dt = 2e-3;
  std::vector<WaveState> states{s0};
  for (int i = 0; i < 60; ++i) states.push_back(step_rk4(states.back(), dt));
  auto E = [](const WaveState& s) {
    return energy_Etheta(s.Zt().conj(), s.Ztt().conj(), s.derived().frakA, 1e-6);
  };
  int samples = 0;
  for (std::size_t i = 2; i + 2 < states.size(); i += 5) {
    const WaveState& s = states[i];
    const GridFunction Zttb = s.Ztt().conj();
    const GridFunction Zttb_t = (states[i - 2].Ztt().conj() - 8.0 * states[i - 1].Ztt().conj() +
                                 8.0 * states[i + 1].Ztt().conj() - states[i + 2].Ztt().conj()) *
                                (1.0 / (12.0 * dt));
    const GridFunction G = Zttb_t + s.b() * derivative(Zttb) +
                           kI * s.derived().frakA * derivative(s.Zt().conj());
    const double dE = (E(states[i - 2]) - 8.0 * E(states[i - 1]) + 8.0 * E(states[i + 1]) -
                       E(states[i + 2])) / (12.0 * dt);
    const double Et = E(s);
    const double G2 = weighted(G, s.derived().frakA);
    const double rhs = (linf_norm(s.at_over_a()) + 1.0) * Et + 2.0 * std::sqrt(Et * G2);
    CHECK(dE <= rhs);
    ++samples;
  }
  CHECK(samples >= 10);
}

TEST_CASE("chord-arc constant") {
  SUBCASE("flat interface") {
    const WaveState s = make_flat(512).to_state();
    CHECK(std::abs(chord_arc_delta(s) - 1.0) < 1e-3);
  }
  SUBCASE("pruned search matches the full O(n^2) scan") {
    Rng rng(241);
    for (int trial = 0; trial < 4; ++trial) {
      const WaveState s = random_admissible_state(128, 8, rng, 0.4, 0.0);
      const GridFunction Z = s.Z();
      const GridFunction Za = s.Zalpha();
      std::vector<double> arc(129, 0.0);
      for (std::size_t j = 0; j < 128; ++j)
        arc[j + 1] = arc[j] + 0.5 * Z.spacing() * (std::abs(Za[j]) + std::abs(Za[(j + 1) % 128]));
      double best = 1.0;
      for (std::size_t j = 0; j < 128; ++j)
        for (std::size_t k = j + 1; k < 128; ++k) {
          const double a = std::min(arc[k] - arc[j], arc[128] - arc[k] + arc[j]);
          const cplx dz = Z[j] - Z[k];
          const double c = std::min({std::abs(dz), std::abs(dz + kTwoPi), std::abs(dz - kTwoPi)});
          best = std::min(best, c / a);
        }
      CHECK(chord_arc(s, false).delta == doctest::Approx(best).epsilon(1e-14));
      CHECK(chord_arc(s, true).delta == doctest::Approx(best).epsilon(1e-14));
    }
  }
  SUBCASE("decreases with amplitude") {
    double prev = 1.0 + 1e-12;
    for (double a : {0.02, 0.05, 0.1, 0.2, 0.3, 0.4}) {
      const WaveState s(0.0, mode(256, -2, a), GridFunction(256));
      const double d = chord_arc_delta(s);
      CHECK(d < prev);
      prev = d;
    }
  }
}

TEST_CASE("blow-up monitor") {
  const MonitorPolicy p;
  SUBCASE("constant energy continues") {
    for (int i = 0; i < 100; ++i) CHECK_FALSE(blowup_monitor(synthetic(2.0), 2.0, p).stop);
  }
  SUBCASE("energy growth") {
    const MonitorDecision d = blowup_monitor(synthetic(200.0), 2.0, p);
    CHECK(d.stop);
    CHECK(d.reason == TerminationReason::blowup_monitor);
    CHECK_FALSE(blowup_monitor(synthetic(99.0), 2.0, p).stop);
  }
  SUBCASE("Taylor floor") {
    CHECK(blowup_monitor(synthetic(1.0, 1e-7), 1.0, p).reason == TerminationReason::blowup_monitor);
  }
  SUBCASE("nonfinite report") {
    EnergyReport r = synthetic(1.0);
    r.Ea = std::numeric_limits<double>::quiet_NaN();
    CHECK(blowup_monitor(r, 1.0, p).stop);
    CHECK(blowup_monitor(r, 1.0, p).detail == "nonfinite");
  }
  SUBCASE("pinching sequence trips the chord-arc floor") {
    int stopped_at = -1;
    const double deltas[] = {0.9, 0.5, 0.1, 0.02, 0.004, 8e-4, 1e-4};
    for (int i = 0; i < 7; ++i) {
      const MonitorDecision d = blowup_monitor(synthetic(1.0, 1.0, deltas[i]), 1.0, p);
      if (d.stop) {
        stopped_at = i;
        CHECK(d.reason == TerminationReason::self_intersection);
        break;
      }
    }
    CHECK(stopped_at == 5);
  }
  SUBCASE("self-intersection flag") {
    EnergyReport r = synthetic(1.0, 1.0, 0.0);
    r.self_intersection = true;
    CHECK(blowup_monitor(r, 1.0, p).reason == TerminationReason::self_intersection);
  }
  CHECK(std::string(to_string(TerminationReason::a1_violation)) == "a1_violation");
}

TEST_CASE("CSV row") {
  CHECK(csv_header().rfind(
            "t,Ea,Eb,frakE,calE,E2,E3,taylor_min,chord_arc_delta,holo_Zt,holo_Za,at_over_a_sup,", 0) ==
        0);
  Rng rng(251);
  const EnergyReport r = make_report(random_admissible_state(64, 6, rng));
  const std::string row = csv_row(r);
  auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  CHECK(count(row) == count(csv_header()));
  std::istringstream in(row);
  std::string cell;
  std::vector<double> v;
  while (std::getline(in, cell, ',')) v.push_back(std::stod(cell));
  CHECK(v[3] == r.frakE);  // 17 digits round-trip exactly
  CHECK(v[4] == r.calE);
  CHECK(v.back() == r.panel.back());
}
