#include "crestwave/initial_data.hpp"

#include <cmath>
#include <sstream>

#include "crestwave/dynamics.hpp"
#include "crestwave/errors.hpp"
#include "crestwave/spectral.hpp"

namespace cw {

const char* to_string(Family f) {
  switch (f) {
    case Family::flat: return "flat";
    case Family::smooth_wave: return "smooth_wave";
    case Family::near_crest: return "near_crest";
  }
  return "unknown";
}

Family family_from_string(const std::string& s) {
  if (s == "flat") return Family::flat;
  if (s == "smooth_wave") return Family::smooth_wave;
  if (s == "near_crest") return Family::near_crest;
  throw DomainError("unknown data family '" + s + "'");
}

WaveState InitialData::to_state(GuardSettings guards) const {
  return WaveState(0.0, P0, Zt0, guards);
}

ValidationRecord validate(const InitialData& d, double tolerance, double jacobian_min) {
  ValidationRecord v;
  v.tolerance = tolerance;
  const GridFunction Ztbar = d.Zt0.conj();
  const GridFunction Zalpha = 1.0 + derivative(d.P0);
  v.holo_Zt = holo_residual(Ztbar);
  v.holo_Zalpha = holo_residual(Zalpha - 1.0);
  v.mean_Zt = std::abs(mean(Ztbar));
  v.min_Zalpha = std::abs(Zalpha[0]);
  for (const cplx& z : Zalpha.values()) v.min_Zalpha = std::min(v.min_Zalpha, std::abs(z));

  auto fail = [&](const std::string& why) {
    if (v.failure.empty()) v.failure = why;
  };
  // the families are graphs over the period; anything else is out of scope
  const std::size_t n = d.P0.size();
  for (std::size_t j = 0; j < n && v.graph_like; ++j) {
    const double x0 = GridFunction::node(j, n) + d.P0[j].real();
    const double x1 = (j + 1 < n ? GridFunction::node(j + 1, n) : kTwoPi) + d.P0[(j + 1) % n].real();
    v.graph_like = x1 > x0;
  }
  if (!v.graph_like) fail("interface is not a graph over the period");
  if (!(v.min_Zalpha > jacobian_min)) {
    fail("min |Z_alpha| below the Jacobian threshold");
  } else {
    const GridFunction inv = 1.0 / Zalpha;
    v.holo_invZalpha = holo_residual(inv - 1.0);
    try {
      GuardSettings g;
      g.jacobian_min = jacobian_min;
      const WaveState s(0.0, d.P0, d.Zt0, g);
      const GridFunction lhs = Zalpha.conj() * (s.Ztt() + kI);
      v.a1_consistency = linf_norm(lhs - kI * s.A1());
    } catch (const CrestwaveError& e) {
      fail(e.what());
    }
  }
  if (!(v.holo_Zt < tolerance)) fail("conj(Z_t) is not a holomorphic trace");
  if (!(v.holo_Zalpha < tolerance)) fail("Z_alpha - 1 is not a holomorphic trace");
  if (!(v.mean_Zt < tolerance)) fail("conj(Z_t) has nonzero mean");
  if (!(v.a1_consistency < tolerance)) fail("Z_tt inconsistent with A1");
  v.passed = v.failure.empty();
  return v;
}

namespace {

InitialData finish(InitialData d) {
  d.validation = validate(d);
  if (!d.validation.passed)
    throw ValidationError(std::string(to_string(d.family)) + ": " + d.validation.failure);
  return d;
}

}  // namespace

InitialData make_flat(std::size_t n) {
  InitialData d;
  d.P0 = GridFunction(n);
  d.Zt0 = GridFunction(n);
  d.family = Family::flat;
  d.params.a = 0.0;
  return finish(std::move(d));
}

InitialData make_smooth_wave(std::size_t n, double a, int m, double velocity) {
  require_grid_size(n);
  if (m < 1 || m > dealias_kmax(n)) throw DomainError("smooth_wave mode out of band");
  if (!std::isfinite(a) || !std::isfinite(velocity))
    throw DomainError("smooth_wave parameters must be finite");
  InitialData d;
  d.family = Family::smooth_wave;
  d.params.a = a;
  d.params.m = m;
  d.params.velocity = velocity;
  const double md = m;
  d.P0 = GridFunction::sample(n, [&](double x) { return a * std::polar(1.0, -md * x); });
  const cplx amp = velocity * (-kI) * std::sqrt(md) * a;
  d.Zt0 = GridFunction::sample(n, [&](double x) { return amp * std::polar(1.0, md * x); });
  return finish(std::move(d));
}

namespace {

// Coefficients of (1 - q e^{-i alpha})^s for modes -0..-kmax (index j <-> k = -j).
std::vector<double> binomial_series(double s, double q, int kmax) {
  std::vector<double> c(kmax + 1);
  c[0] = 1.0;
  for (int j = 1; j <= kmax; ++j) c[j] = c[j - 1] * q * (j - 1 - s) / j;
  return c;
}

}  // namespace

double near_crest_invZalpha_sup(double r, double q) { return std::pow(1.0 + q, 1.0 - r); }

InitialData make_near_crest(std::size_t n, double r, double q, double velocity) {
  require_grid_size(n);
  if (!(r > 0.0 && r < 0.5)) throw DomainError("near_crest requires 0 < r < 1/2");
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("near_crest requires 0 <= q < 1");
  InitialData d;
  d.family = Family::near_crest;
  d.params.r = r;
  d.params.q = q;
  d.params.velocity = velocity;
  const int kmax = dealias_kmax(n);
  const auto zc = binomial_series(r - 1.0, q, kmax);
  const auto ic = binomial_series(1.0 - r, q, kmax);
  std::vector<cplx> Pc(n), Vc(n);
  for (int j = 1; j <= kmax; ++j) {
    const std::size_t idx = n - static_cast<std::size_t>(j);
    Pc[idx] = zc[j] / cplx(0.0, -static_cast<double>(j));
    Vc[idx] = velocity * ic[j];
  }
  d.P0 = to_grid(Spectrum(std::move(Pc)));
  d.Zt0 = to_grid(Spectrum(std::move(Vc))).conj();
  return finish(std::move(d));
}

InitialData mollify(const InitialData& d, double eps) {
  if (!(eps > 0.0)) throw DomainError("mollification depth must be positive");
  auto smooth = [eps](int k) { return cplx(std::exp(-std::abs(k) * eps), 0.0); };
  InitialData out = d;
  out.P0 = apply_multiplier(d.P0, smooth);
  out.Zt0 = apply_multiplier(d.Zt0.conj(), smooth).conj();
  out.params.eps += eps;
  return finish(std::move(out));
}

}  // namespace cw
