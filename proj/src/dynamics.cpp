#include "crestwave/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "crestwave/errors.hpp"
#include "crestwave/spectral.hpp"

namespace cw {

StateRate rhs(const WaveState& s) {
  const auto& d = s.derived();
  return {s.Zt() - d.b * d.Zalpha, d.Ztt - d.b * d.dZt};
}

int dealias_kmax(std::size_t n) { return static_cast<int>(n / 3); }

WaveState apply_filter(const WaveState& s, const FilterSettings& f) {
  const int kmax = dealias_kmax(s.size());
  const int nq = -static_cast<int>(s.size() / 2);
  auto filt = [&](const GridFunction& g, bool holo_part) {
    Spectrum c = to_spectrum(g);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int k = c.wavenumber(i);
      if (f.dealias && std::abs(k) > kmax) c[i] = 0.0;
      if (f.eps_filter > 0.0 && std::abs(c[i]) < f.eps_filter) c[i] = 0.0;
      if (f.projection) {
        // P keeps k <= 0; Z_t keeps k > 0 so that conj(Z_t) = H conj(Z_t)
        const bool keep = holo_part ? (k <= 0 && k != nq) : (k > 0);
        if (!keep) c[i] = 0.0;
      }
    }
    return to_grid(c);
  };
  if (!f.dealias && f.eps_filter <= 0.0 && !f.projection) return s;
  return WaveState(s.t(), filt(s.P(), true), filt(s.Zt(), false), s.guards());
}

namespace {

WaveState axpy(const WaveState& s, double h, const StateRate& k) {
  return WaveState(s.t() + h, s.P() + h * k.dP, s.Zt() + h * k.dZt, s.guards());
}

}  // namespace

StepResult step_rk4_stages(const WaveState& s, double dt, const FilterSettings& f) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const StateRate k1 = rhs(s);
  const WaveState s2 = axpy(s, 0.5 * dt, k1);
  const StateRate k2 = rhs(s2);
  const WaveState s3 = axpy(s, 0.5 * dt, k2);
  const StateRate k3 = rhs(s3);
  const WaveState s4 = axpy(s, dt, k3);
  const StateRate k4 = rhs(s4);
  const double w = dt / 6.0;
  GridFunction P = s.P() + w * (k1.dP + 2.0 * k2.dP + 2.0 * k3.dP + k4.dP);
  GridFunction Zt = s.Zt() + w * (k1.dZt + 2.0 * k2.dZt + 2.0 * k3.dZt + k4.dZt);
  WaveState next(s.t() + dt, std::move(P), std::move(Zt), s.guards());
  return {apply_filter(next, f), {s.b(), s2.b(), s3.b(), s4.b()}};
}

WaveState step_rk4(const WaveState& s, double dt, const FilterSettings& f) {
  return step_rk4_stages(s, dt, f).state;
}

double cfl_dt(const WaveState& s, double c_cfl) {
  if (!(c_cfl > 0.0)) throw DomainError("CFL number must be positive");
  const double bmax = linf_norm(s.b());
  const double speed = bmax > 1.0 ? 1.0 / bmax : 1.0;
  return c_cfl * speed * kTwoPi / static_cast<double>(s.size());
}

MarkerSet::MarkerSet(std::vector<double> h) : h_(std::move(h)) { check_ordering(); }

MarkerSet MarkerSet::uniform(std::size_t m) {
  std::vector<double> h(m);
  for (std::size_t i = 0; i < m; ++i)
    h[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
  return MarkerSet(std::move(h));
}

double MarkerSet::wrapped(std::size_t i) const {
  double x = std::fmod(h_[i], kTwoPi);
  return x < 0.0 ? x + kTwoPi : x;
}

void MarkerSet::check_ordering() const {
  for (std::size_t i = 0; i < h_.size(); ++i) {
    if (!std::isfinite(h_[i])) throw MarkerCollisionError("non-finite marker position");
    const bool last = i + 1 == h_.size();
    const double next = last ? h_[0] + kTwoPi : h_[i + 1];
    if (!(next > h_[i]) && h_.size() > 1) {
      std::ostringstream os;
      os << "markers " << i << " and " << (last ? 0 : i + 1) << " crossed";
      throw MarkerCollisionError(os.str());
    }
  }
}

MarkerSet advance_markers(const MarkerSet& markers,
                          const std::array<GridFunction, 4>& stage_b, double dt) {
  std::array<Spectrum, 4> sb;
  for (int i = 0; i < 4; ++i) sb[i] = to_spectrum(stage_b[i]);
  auto vel = [&](int stage, double x) { return interpolate(sb[stage], x).real(); };
  std::vector<double> h = markers.positions();
  for (double& x : h) {
    const double k1 = vel(0, x);
    const double k2 = vel(1, x + 0.5 * dt * k1);
    const double k3 = vel(2, x + 0.5 * dt * k2);
    const double k4 = vel(3, x + dt * k3);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return MarkerSet(std::move(h));
}

}  // namespace cw
