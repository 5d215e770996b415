#include "crestwave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>

#include "crestwave/diagnostics.hpp"
#include "crestwave/dynamics.hpp"
#include "crestwave/errors.hpp"
#include "crestwave/quadrature.hpp"
#include "crestwave/random_fields.hpp"
#include "crestwave/singular_ops.hpp"
#include "crestwave/spectral.hpp"

namespace cw {

const char* to_string(IdentityKind k) {
  switch (k) {
    case IdentityKind::spectral: return "spectral";
    case IdentityKind::quadrature: return "quadrature";
    case IdentityKind::finite_difference: return "finite_difference";
    case IdentityKind::composite: return "composite";
  }
  return "unknown";
}

double default_tolerance(IdentityKind k) {
  switch (k) {
    case IdentityKind::spectral: return 1e-10;
    case IdentityKind::quadrature:
    case IdentityKind::finite_difference: return 1e-6;
    case IdentityKind::composite: return 0.0;
  }
  return 0.0;
}

namespace {

// relative sup distance, scaled so that O(1) fields give absolute errors
double rel(const GridFunction& a, const GridFunction& b) {
  return linf_norm(a - b) / (1.0 + linf_norm(b));
}

double rel(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return num / (1.0 + den);
}

using HilbertOp = std::function<GridFunction(const GridFunction&)>;

GridFunction commutator_with(const HilbertOp& H, const GridFunction& f,
                             const GridFunction& g) {
  return f * H(g) - H(f * g);
}

// [f, g; h] with the cot^2 kernel (product of two difference quotients only);
// not the periodization of 1/(x-y)^2, kept as a negative control.
GridFunction bracket_cot_squared(const GridFunction& f, const GridFunction& g,
                                 const GridFunction& h) {
  const std::size_t n = f.size();
  const PvKernelEval df(f), dg(g);
  const cplx pref = f.spacing() / (kPi * kI);
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += df(j, k) * dg(j, k) * h[k];
    out[j] = pref * acc;
  }
  return GridFunction(std::move(out));
}

// A time-dependent probe field with analytic time derivative.
struct Probe {
  static cplx value(double x, double t) {
    return 0.3 * std::polar(1.0, x + 0.7 * t) + 0.2 * std::cos(2.0 * x - 0.4 * t) +
           cplx(0.0, 0.1) * std::sin(3.0 * x + 1.1 * t);
  }
  static cplx dt(double x, double t) {
    return 0.3 * cplx(0.0, 0.7) * std::polar(1.0, x + 0.7 * t) +
           0.08 * std::sin(2.0 * x - 0.4 * t) +
           cplx(0.0, 0.11) * std::cos(3.0 * x + 1.1 * t);
  }
  static GridFunction at(std::size_t n, double t) {
    return GridFunction::sample(n, [t](double x) { return value(x, t); });
  }
  static GridFunction dt_at(std::size_t n, double t) {
    return GridFunction::sample(n, [t](double x) { return dt(x, t); });
  }
};

class Battery {
 public:
  explicit Battery(IdentityReport& r) : r_(r) {}

  void add(const std::string& name, IdentityKind kind, double residual) {
    IdentityResult x;
    x.name = name;
    x.kind = kind;
    x.residual = residual;
    x.tolerance = default_tolerance(kind);
    x.passed = std::isfinite(residual) && residual <= x.tolerance;
    r_.identities.push_back(x);
  }
  void composite(const std::string& name, const std::string& covered_by) {
    IdentityResult x;
    x.name = name;
    x.kind = IdentityKind::composite;
    x.passed = true;
    x.note = "covered by " + covered_by;
    r_.identities.push_back(x);
  }
  void control(const std::string& name, IdentityKind kind, double residual) {
    NegativeControl c;
    c.name = name;
    c.residual = residual;
    c.tolerance = default_tolerance(kind);
    c.failed_as_expected = !(residual <= c.tolerance);
    r_.controls.push_back(c);
  }

 private:
  IdentityReport& r_;
};

}  // namespace

const IdentityResult& IdentityReport::find(const std::string& name) const {
  for (const auto& i : identities)
    if (i.name == name) return i;
  throw DomainError("no identity named " + name);
}

nlohmann::json IdentityReport::to_json() const {
  nlohmann::json j;
  j["n"] = options.n;
  j["seed"] = options.seed;
  j["fd_dt"] = options.fd_dt;
  j["passed"] = passed;
  for (const auto& i : identities) {
    nlohmann::json e;
    e["kind"] = to_string(i.kind);
    if (i.kind == IdentityKind::composite) {
      e["residual"] = nullptr;
      e["note"] = i.note;
    } else {
      e["residual"] = i.residual;
      e["tolerance"] = i.tolerance;
    }
    e["passed"] = i.passed;
    j["identities"][i.name] = e;
  }
  for (const auto& c : controls) {
    j["negative_controls"][c.name] = {{"residual", c.residual},
                                      {"tolerance", c.tolerance},
                                      {"failed_as_expected", c.failed_as_expected}};
  }
  return j;
}

IdentityReport run_identity_battery(std::size_t n, std::uint64_t seed) {
  IdentityOptions o;
  o.n = n;
  o.seed = seed;
  return run_identity_battery(o);
}

IdentityReport run_identity_battery(const IdentityOptions& opt) {
  require_grid_size(opt.n);
  IdentityReport report;
  report.options = opt;
  Battery B(report);
  const std::size_t n = opt.n;
  const int kmax = opt.kmax > 0 ? opt.kmax : std::min<int>(12, static_cast<int>(n / 32));
  Rng rng(derive_seed(opt.seed, 0));
  const bool flat = opt.slope == 0.0 && opt.speed == 0.0;
  const double amp = flat ? 0.0 : 1.0;

  const WaveState s = flat ? WaveState(0.0, GridFunction(n), GridFunction(n))
                           : random_admissible_state(n, kmax, rng, opt.slope, opt.speed);
  const GridFunction f = amp * random_field(n, kmax, Support::full, rng);
  const GridFunction g = amp * random_field(n, kmax, Support::full, rng);
  const GridFunction fz = amp * random_field(n, kmax, Support::mean_zero, rng);
  const GridFunction A = amp * random_field(n, kmax, Support::real, rng);
  const HilbertOp H = [](const GridFunction& u) { return hilbert(u); };
  const HilbertOp Hflip = [](const GridFunction& u) { return -hilbert(u); };
  const auto& d = s.derived();

  // ---- exact spectral algebra
  B.add("hilbert_annihilates_constants", IdentityKind::spectral,
        linf_norm(hilbert(GridFunction(n, 1.0))));
  B.add("hilbert_squared_is_identity", IdentityKind::spectral, rel(hilbert(hilbert(fz)), fz));
  B.add("projection_sum", IdentityKind::spectral, rel(proj_holo(f) + proj_anti(f), f));
  B.add("projection_difference", IdentityKind::spectral,
        rel(proj_holo(f) - proj_anti(f), hilbert(f)));
  {
    const GridFunction th = amp * random_field(n, kmax, Support::holomorphic, rng);
    const double a = hhalf_pairing(th), q = std::pow(hhalf_norm(th), 2);
    B.add("hhalf_pairing_form", IdentityKind::spectral, std::abs(a - q) / (1.0 + q));
  }
  const GridFunction b_c4 = b_projection_form(s.Zt(), d.invZalpha);
  B.add("b_commutator_vs_projection", IdentityKind::spectral, rel(d.b, b_c4));
  {
    const GridFunction q = s.Zt() * d.invZalpha;
    const GridFunction expanded = q + proj_holo(q.conj() - q);
    B.add("b_expanded_projection", IdentityKind::spectral, rel(expanded.real(), b_c4));
    B.add("b_expanded_is_real", IdentityKind::spectral, max_abs_imag(expanded));
  }
  B.add("ztt_two_routes", IdentityKind::spectral,
        rel(ztt_from_a1(d.A1, d.Zalpha), ztt_from_frakA(d.A1, d.Zalpha)));
  const GridFunction bracket_lhs = -2.0 * commutator_h_dg(fz, fz * g) +
                                  commutator_h_dg(fz * fz, g);
  B.add("bracket_identity_spectral", IdentityKind::spectral,
        rel(bracket_lhs, -double_bracket_spectral(fz, fz, g)));
  {
    const GridFunction lhs = f * hilbert(derivative(g, 2)) - hilbert(derivative(f * g, 2));
    const GridFunction fp = derivative(f);
    const GridFunction rhs = commutator_h(f, derivative(g, 2)) - hilbert(fp * derivative(g)) -
                             hilbert(derivative(fp * g));
    B.add("commutator_power_expansion", IdentityKind::spectral, rel(lhs, rhs));
  }
  const Kinematics kin = Kinematics::from(s);
  {
    const GridFunction DZt = kin.D(s.Zt());
    const GridFunction route = kin.D(kin.D(kin.Zttbar) - DZt * kin.DZtbar) - DZt * kin.D2Ztbar;
    B.add("material_D2_two_routes", IdentityKind::spectral, rel(kin.Dt_D2Ztbar(), route));
    B.add("material_velocity_is_acceleration", IdentityKind::spectral,
          rel(kin.material(kin.Ztbar, kin.Ztbar_t), kin.Zttbar));
    // [Z_alpha, D_t] f = -Z_alpha (D Z_t - b') f
    const StateRate rate = rhs(s);
    const GridFunction Za_t = derivative(rate.dP);
    const GridFunction gt = g * 0.3;
    const GridFunction lhs = d.Zalpha * kin.material(g, gt) -
                             kin.material(d.Zalpha * g, Za_t * g + d.Zalpha * gt);
    B.add("zalpha_material_commutator", IdentityKind::spectral,
          rel(lhs, -(d.Zalpha * (DZt - derivative(d.b)) * g)));
    // [D_t, H] f = [b, H] f'
    const GridFunction lhs2 = kin.material(hilbert(g), hilbert(gt)) - hilbert(kin.material(g, gt));
    B.add("material_hilbert_commutator", IdentityKind::spectral,
          rel(lhs2, commutator_h_dg(d.b, g)));
    // D_t [f, H] g' = [D_t f, H] g' + [f, H] (D_t g)' - [f, b; g']
    const GridFunction ft = f * cplx(0.0, 0.5), gt2 = g * 0.25;
    const GridFunction c = commutator_h_dg(f, g);
    const GridFunction c_t = commutator_h_dg(ft, g) + commutator_h_dg(f, gt2);
    const GridFunction lhs3 = kin.material(c, c_t);
    const GridFunction rhs3 = commutator_h_dg(kin.material(f, ft), g) +
                              commutator_h_dg(f, kin.material(g, gt2)) -
                              double_bracket_spectral(f, d.b, derivative(g));
    B.add("material_commutator_derivative", IdentityKind::spectral, rel(lhs3, rhs3));
  }

  // ---- spectral versus quadrature
  B.add("hilbert_spectral_vs_pv", IdentityKind::quadrature, rel(hilbert(f), quad::hilbert_pv(f)));
  B.add("commutator_spectral_vs_pv", IdentityKind::quadrature,
        rel(commutator_h(f, g), quad::commutator_pv(f, g)));
  B.add("a1_two_forms", IdentityKind::quadrature,
        linf_norm(d.A1 - quad::a1_double_integral(s.Zt())));
  {
    const double a = hhalf_norm(fz), q = quad::hhalf_double_integral(fz);
    B.add("hhalf_two_forms", IdentityKind::quadrature, std::abs(a - q) / (1.0 + a));
  }
  B.add("bracket_identity_quadrature", IdentityKind::quadrature,
        rel(bracket_lhs, -double_bracket(fz, fz, g)));
  B.add("bracket_spectral_vs_table", IdentityKind::quadrature,
        rel(double_bracket_spectral(f, g, fz), double_bracket(f, g, fz)));
  {
    const GridFunction red =
        kPi * kI * (hilbert(derivative(A) * fz) - commutator_h_dg(A, fz));
    B.add("c1_single_factor_reduction", IdentityKind::quadrature, rel(c1_operator({A}, fz), red));
    B.add("c2_single_factor_reduction", IdentityKind::quadrature,
          rel(c2_operator({A}, fz), kPi * kI * commutator_h_dg(A, fz)));
  }
  B.add("poisson_multiplier_vs_kernel", IdentityKind::quadrature,
        rel(poisson_extend(f, -0.5), quad::poisson_pv(f, -0.5)));

  // ---- finite differences along a short trajectory with markers
  // Four RK4 steps of size fd_dt; derivatives are taken at the middle state
  // with the five-point centred stencil, so truncation is O(fd_dt^4).
  {
    const double dt = opt.fd_dt;
    const std::size_t m = 32;
    FilterSettings nofilter;
    nofilter.dealias = false;
    std::vector<WaveState> S{s};
    std::vector<MarkerSet> M{MarkerSet::uniform(m)};
    for (int i = 0; i < 4; ++i) {
      const StepResult st = step_rk4_stages(S.back(), dt, nofilter);
      M.push_back(advance_markers(M.back(), st.stage_b, dt));
      S.push_back(st.state);
    }
    const WaveState& s1 = S[2];
    const double t1 = s1.t();

    auto at_markers = [&](const GridFunction& f0, const MarkerSet& Mk) {
      const Spectrum sp = to_spectrum(f0);
      std::vector<cplx> v(Mk.size());
      for (std::size_t i = 0; i < Mk.size(); ++i) v[i] = interpolate(sp, Mk.positions()[i]);
      return v;
    };
    // d/dt of field(state, time) evaluated along the marker paths
    auto fd = [&](const std::function<GridFunction(const WaveState&, double)>& field,
                  bool add_position = false) {
      static constexpr double w[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
      std::vector<cplx> acc(m, 0.0);
      for (int l = 0; l < 5; ++l) {
        if (w[l] == 0.0) continue;
        auto v = at_markers(field(S[l], S[l].t()), M[l]);
        for (std::size_t i = 0; i < m; ++i)
          acc[i] += w[l] * (v[i] + (add_position ? M[l].positions()[i] : 0.0));
      }
      for (auto& x : acc) x /= 12.0 * dt;
      return acc;
    };
    B.add("marker_frame_velocity", IdentityKind::finite_difference,
          rel(fd([](const WaveState& x, double) { return x.P(); }, true),
              at_markers(s1.Zt(), M[2])));
    B.add("marker_material_velocity", IdentityKind::finite_difference,
          rel(fd([](const WaveState& x, double) { return x.Zt().conj(); }),
              at_markers(s1.Ztt().conj(), M[2])));

    const Kinematics k1 = Kinematics::from(s1);
    const GridFunction g1 = Probe::at(n, t1);
    const GridFunction Dtg = k1.material(g1, Probe::dt_at(n, t1));
    auto Dop = [](const WaveState& x, const GridFunction& u) {
      return x.invZalpha() * derivative(u);
    };
    const GridFunction DZt1 = Dop(s1, s1.Zt());
    {
      const auto lhs = fd([&](const WaveState& x, double t) { return Dop(x, Probe::at(n, t)); });
      const auto rhs_ = at_markers(k1.D(Dtg) - DZt1 * k1.D(g1), M[2]);
      B.add("material_D_commutator", IdentityKind::finite_difference, rel(lhs, rhs_));
    }
    {
      const auto lhs = fd([&](const WaveState& x, double t) {
        return Dop(x, Dop(x, Probe::at(n, t)));
      });
      const GridFunction Dg = k1.D(g1);
      const auto rhs_ = at_markers(
          k1.D(k1.D(Dtg)) - 2.0 * DZt1 * k1.D(Dg) - k1.D(DZt1) * Dg, M[2]);
      B.add("material_D2_commutator", IdentityKind::finite_difference, rel(lhs, rhs_));
    }
    {
      const auto lhs = fd([&](const WaveState&, double t) { return derivative(Probe::at(n, t)); });
      const auto rhs_ =
          at_markers(derivative(Dtg) - derivative(s1.b()) * derivative(g1), M[2]);
      B.add("material_derivative_commutator", IdentityKind::finite_difference, rel(lhs, rhs_));
    }
    {
      auto lhs = fd([](const WaveState& x, double) { return x.Ztt().conj(); });
      const auto extra = at_markers(kI * s1.derived().frakA * k1.dZtbar, M[2]);
      for (std::size_t i = 0; i < m; ++i) lhs[i] += extra[i];
      const auto rhs_ = at_markers(s1.at_over_a() * (k1.Zttbar - kI), M[2]);
      B.add("at_over_a_identity", IdentityKind::finite_difference, rel(lhs, rhs_));
    }
    if (opt.negative_controls) {
      // fixed-node time difference ignores transport by b
      const GridFunction dz = (S[3].P() - S[1].P()) * (1.0 / (2.0 * dt));
      B.control("fixed_node_frame_velocity", IdentityKind::finite_difference,
                rel(dz, s1.Zt()));
    }
  }

  for (const auto& [name, by] : std::vector<std::pair<std::string, std::string>>{
           {"second_material_D_commutator", "euler_residual"},
           {"wave_operator_D_commutator", "euler_residual, energy oracles"},
           {"lagrangian_derivative_commutator", "material_derivative_commutator"},
           {"second_time_lagrangian_commutator", "euler_residual"},
           {"gravity_term_commutator", "at_over_a_identity"},
           {"wave_operator_lagrangian_commutator", "euler_residual"},
           {"lagrangian_second_derivative_commutator", "material_D2_commutator"},
           {"jacobian_time_commutator", "zalpha_material_commutator"},
           {"wave_operator_jacobian_commutator", "energy oracles"},
           {"gravity_jacobian_commutator", "at_over_a_identity"}})
    B.composite(name, by);

  if (opt.negative_controls) {
    B.control("b_forms_with_flipped_hilbert", IdentityKind::spectral,
              rel((commutator_with(Hflip, s.Zt(), d.invZalpha - 1.0) + 2.0 * s.Zt()).real(),
                  b_c4));
    B.control("a1_forms_with_flipped_hilbert", IdentityKind::quadrature,
              linf_norm(commutator_with(Hflip, s.Zt(), derivative(s.Zt().conj()))
                            .map([](cplx z) { return cplx(1.0 - z.imag(), 0.0); }) -
                        quad::a1_double_integral(s.Zt())));
    B.control("hilbert_with_flipped_sign_vs_pv", IdentityKind::quadrature,
              rel(Hflip(f), quad::hilbert_pv(f)));
    B.control("bracket_with_cot_squared_kernel", IdentityKind::quadrature,
              rel(bracket_lhs, -bracket_cot_squared(fz, fz, g)));
  }

  report.passed = std::all_of(report.identities.begin(), report.identities.end(),
                              [](const IdentityResult& i) { return i.passed; }) &&
                  std::all_of(report.controls.begin(), report.controls.end(),
                              [](const NegativeControl& c) { return c.failed_as_expected; });
  return report;
}

// ---------------------------------------------------------------- inequalities

const InequalityResult& InequalityReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return r;
  throw DomainError("no inequality named " + name);
}

nlohmann::json InequalityReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["trials"] = trials;
  j["seed"] = seed;
  j["passed"] = passed;
  for (const auto& r : results) {
    nlohmann::json e = {{"max_ratio", r.max_ratio},
                        {"argmax_seed", r.argmax_seed},
                        {"bound", r.bound},
                        {"passed", r.passed}};
    if (r.baseline) e["baseline"] = *r.baseline;
    j["inequalities"][r.name] = e;
  }
  return j;
}

namespace {

double safe_ratio(double num, double den) { return den > 1e-300 ? num / den : 0.0; }

// Mean-zero periodic bump exp(-|x - pi| / w), band-limited to the grid.
GridFunction bump(std::size_t n, double w) {
  const GridFunction raw = GridFunction::sample(
      n, [w](double x) { return cplx(std::exp(-std::abs(x - kPi) / w), 0.0); });
  const GridFunction f = truncate_modes(raw, dealias_kmax(n));
  return f - mean(f);
}

}  // namespace

InequalityReport run_inequality_battery(std::size_t n, std::size_t trials,
                                        std::uint64_t seed,
                                        const std::optional<nlohmann::json>& baseline) {
  require_grid_size(n);
  if (trials < 100) throw DomainError("inequality battery needs at least 100 trials");
  InequalityReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;

  const std::vector<std::string> names = {
      "sobolev",          "hardy",           "hhalf_multiplier",
      "c1_lipschitz_m1",  "c1_lipschitz_m2", "c1_l2_m2",
      "c2_lipschitz_m2",  "c2_l2_m2",        "c2_sup_m2",
      "commutator_hhalf", "commutator_derivative", "bracket_l2",
      "commutator_sup",   "double_commutator",     "bracket_sup"};
  for (const auto& nm : names) {
    InequalityResult r;
    r.name = nm;
    r.bound = nm == "sobolev" ? 2.0 + 1e-6 : 10.0;
    rep.results.push_back(r);
  }
  auto record = [&](std::size_t idx, double ratio, std::uint64_t s) {
    auto& r = rep.results[idx];
    if (ratio > r.max_ratio || (r.argmax_seed == 0 && r.max_ratio == 0.0)) {
      r.max_ratio = std::max(r.max_ratio, ratio);
      r.argmax_seed = s;
    }
  };

  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int kcap = std::max(2, static_cast<int>(n / 8));
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, t);
    Rng rng(s);
    const int kmax = 2 + static_cast<int>(U(rng) * (kcap - 2));
    const double decay = 0.5 + 1.5 * U(rng);
    auto rf = [&](Support sup) { return random_field(n, kmax, sup, rng, decay); };

    // every fourth trial probes the Sobolev extremals with a narrow bump
    const GridFunction fs = t % 4 == 3 ? bump(n, 0.02 + 0.3 * U(rng)) : rf(Support::real);
    record(0, safe_ratio(std::pow(linf_norm(fs), 2), l2_norm(fs) * l2_norm(derivative(fs))), s);

    const GridFunction f = rf(Support::full), g = rf(Support::full), h = rf(Support::full);
    const GridFunction fp = derivative(f), gp = derivative(g);
    record(1, safe_ratio(quad::hardy_sup(f), std::pow(l2_norm(fp), 2)), s);

    const GridFunction phi = 0.5 * rf(Support::full);
    const GridFunction nz = phi.map([](cplx z) { return std::exp(z); });
    record(2,
           safe_ratio(hhalf_norm(g), linf_norm(1.0 / nz) * (hhalf_norm(nz * g) +
                                                            l2_norm(derivative(nz)) * l2_norm(g))),
           s);

    const GridFunction A1 = rf(Support::real), A2 = rf(Support::real);
    const double a1i = linf_norm(derivative(A1)), a2i = linf_norm(derivative(A2));
    const double a12 = l2_norm(derivative(A1));
    const GridFunction c1a = c1_operator({A1}, f);
    const GridFunction c1b = c1_operator({A1, A2}, f);
    const GridFunction c2b = c2_operator({A1, A2}, f);
    record(3, safe_ratio(l2_norm(c1a), a1i * l2_norm(f)), s);
    record(4, safe_ratio(l2_norm(c1b), a1i * a2i * l2_norm(f)), s);
    record(5, safe_ratio(l2_norm(c1b), a12 * a2i * linf_norm(f)), s);
    record(6, safe_ratio(l2_norm(c2b), a1i * a2i * l2_norm(f)), s);
    record(7, safe_ratio(l2_norm(c2b), a12 * a2i * linf_norm(f)), s);
    record(8, safe_ratio(l2_norm(c2b), linf_norm(A1) * a2i * l2_norm(fp)), s);

    const GridFunction cfg = commutator_h(f, g);
    record(9, safe_ratio(l2_norm(cfg), hhalf_norm(f) * l2_norm(g)), s);
    record(10, safe_ratio(l2_norm(commutator_h_dg(f, g)), l2_norm(fp) * hhalf_norm(g)), s);
    const GridFunction br = double_bracket_spectral(f, g, h);
    record(11, safe_ratio(l2_norm(br), l2_norm(fp) * l2_norm(gp) * l2_norm(h)), s);
    record(12, safe_ratio(linf_norm(cfg), l2_norm(fp) * l2_norm(g)), s);
    const GridFunction dc = f * commutator_h(g, h) - commutator_h(g, f * h);
    record(13, safe_ratio(l2_norm(derivative(dc)), l2_norm(fp) * l2_norm(gp) * l2_norm(h)), s);
    record(14, safe_ratio(linf_norm(br), l2_norm(fp) * linf_norm(gp) * l2_norm(h)), s);
  }

  rep.passed = true;
  for (auto& r : rep.results) {
    if (baseline && baseline->contains(r.name)) r.baseline = (*baseline)[r.name].get<double>();
    r.passed = std::isfinite(r.max_ratio) && r.max_ratio <= r.bound &&
               (!r.baseline || r.max_ratio <= 1.2 * *r.baseline);
    rep.passed = rep.passed && r.passed;
  }
  return rep;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return nlohmann::json::parse(in);
}

}  // namespace cw
