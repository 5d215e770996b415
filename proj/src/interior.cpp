#include "crestwave/interior.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "crestwave/errors.hpp"
#include "crestwave/spectral.hpp"

namespace cw {

GridFunction extend_boundary_field(const GridFunction& f, double y, double holo_tol) {
  if (!(y < 0.0)) throw DomainError("interior height must be negative");
  const GridFunction fluct = f - mean(f);
  const double res = holo_residual(fluct);
  if (res > holo_tol * (1.0 + l2_norm(f))) {
    std::ostringstream os;
    os << "trace is not holomorphic: ||(I - H) f|| = " << res;
    throw HolomorphicityError(os.str(), res);
  }
  return apply_multiplier(f, [y](int k) {
    return k <= 0 ? cplx(std::exp(std::abs(static_cast<double>(k)) * y), 0.0) : cplx{};
  });
}

GridFunction psi_t_over_psi_z_trace(const WaveState& s) {
  return s.Zt() * s.invZalpha() - s.b();
}

GridFunction psi_t_over_psi_z(const WaveState& s, double y, double holo_tol) {
  return extend_boundary_field(psi_t_over_psi_z_trace(s), y, holo_tol);
}

GridFunction F_t_interior(const WaveState&, const StateRate& rate, double y,
                          double holo_tol) {
  return extend_boundary_field(rate.dZt.conj(), y, holo_tol);
}

namespace {

GridFunction abs2(const GridFunction& f) {
  return f.map([](cplx z) { return cplx(std::norm(z), 0.0); });
}

GridFunction pressure_from(const GridFunction& F, const GridFunction& Zt_sq, double y) {
  return -0.5 * abs2(F) - y + 0.5 * poisson_extend(Zt_sq, y).real();
}

}  // namespace

GridFunction pressure(const WaveState& s, double y, double holo_tol) {
  const GridFunction F = extend_boundary_field(s.Zt().conj(), y, holo_tol);
  return pressure_from(F, abs2(s.Zt()), y);
}

InteriorSlice interior_slice(const WaveState& s, const StateRate& rate, double y,
                             double holo_tol) {
  InteriorSlice sl;
  sl.y = y;
  const auto& d = s.derived();
  sl.F = extend_boundary_field(s.Zt().conj(), y, holo_tol);
  sl.Fz = extend_boundary_field(d.dZt.conj(), y, holo_tol);
  sl.Psi_z = extend_boundary_field(d.Zalpha, y, holo_tol);
  sl.invPsi_z = 1.0 / sl.Psi_z;
  sl.Psi_t = extend_boundary_field(rate.dP, y, holo_tol);
  sl.Psi_t_over_Psi_z = psi_t_over_psi_z(s, y, holo_tol);
  sl.F_t = F_t_interior(s, rate, y, holo_tol);
  sl.pressure = pressure_from(sl.F, abs2(s.Zt()), y);
  return sl;
}

std::string slice_csv(const InteriorSlice& sl) {
  std::string out = "alpha";
  const char* names[] = {"F", "Fz", "Psi_z", "invPsi_z", "Psi_t", "Psi_t_over_Psi_z",
                         "F_t", "pressure"};
  for (const char* n : names) out += std::string(",") + n + "_re," + n + "_im";
  out += '\n';
  const GridFunction* f[] = {&sl.F,     &sl.Fz,  &sl.Psi_z,          &sl.invPsi_z,
                             &sl.Psi_t, &sl.Psi_t_over_Psi_z, &sl.F_t, &sl.pressure};
  char buf[64];
  for (std::size_t j = 0; j < sl.F.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", sl.F.node(j));
    out += buf;
    for (const GridFunction* g : f) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", (*g)[j].real(), (*g)[j].imag());
      out += buf;
    }
    out += '\n';
  }
  return out;
}

EulerResidual euler_residual(const WaveState& s, const StateRate& rate,
                             const std::vector<double>& heights, double dy,
                             double holo_tol) {
  EulerResidual out;
  const GridFunction Zt_sq = abs2(s.Zt());
  const GridFunction Ztbar = s.Zt().conj();
  for (double y : heights) {
    if (!(y + dy < 0.0)) throw DomainError("height too close to the boundary for d_y");
    const InteriorSlice sl = interior_slice(s, rate, y, holo_tol);
    const GridFunction P_up =
        pressure_from(extend_boundary_field(Ztbar, y + dy, holo_tol), Zt_sq, y + dy);
    const GridFunction P_dn =
        pressure_from(extend_boundary_field(Ztbar, y - dy, holo_tol), Zt_sq, y - dy);
    const GridFunction Py = (P_up - P_dn) * (1.0 / (2.0 * dy));
    const GridFunction Px = derivative(sl.pressure);
    const GridFunction lhs = sl.Psi_z * sl.F_t - sl.Psi_t * sl.Fz +
                             sl.F.conj() * sl.Fz - kI * sl.Psi_z;
    const double r = l2_norm(lhs + Px - kI * Py);
    out.heights.push_back(y);
    out.residuals.push_back(r);
    out.max = std::max(out.max, r);
  }
  return out;
}

double laplacian_residual(const WaveState& s, double y, double dy, double holo_tol) {
  if (!(y + 2.0 * dy < 0.0)) throw DomainError("height too close to the boundary");
  auto P = [&](double yy) { return pressure(s, yy, holo_tol); };
  const GridFunction Pyy =
      (-1.0 * P(y + 2 * dy) + 16.0 * P(y + dy) - 30.0 * P(y) + 16.0 * P(y - dy) -
       P(y - 2 * dy)) *
      (1.0 / (12.0 * dy * dy));
  const GridFunction Pxx = derivative(P(y), 2);
  const GridFunction Fz = extend_boundary_field(s.derived().dZt.conj(), y, holo_tol);
  return linf_norm(Pxx + Pyy + 2.0 * abs2(Fz));
}

const std::vector<std::string>& DomainEnergy::names() {
  static const std::vector<std::string> n = {
      "Fz_L2sq",           "invPsi_d_invPsi_Fz_L2sq", "d_invPsi_L2sq",
      "invPsi_Linfsq",     "invPsi2_d_invPsi_Fz_Hhalfsq", "invPsi_Fz_Hhalfsq",
      "invPsi_d_invPsi_d_invPsi_L2sq"};
  return n;
}

namespace {

std::vector<double> e1_terms(const GridFunction& Fz, const GridFunction& invPsi) {
  auto sq = [](double x) { return x * x; };
  const GridFunction w = derivative(invPsi * Fz);
  return {
      sq(l2_norm(Fz)),
      sq(l2_norm(invPsi * w)),
      sq(l2_norm(derivative(invPsi))),
      sq(linf_norm(invPsi)),
      sq(hhalf_norm(invPsi * invPsi * w)),
      sq(hhalf_norm(invPsi * Fz)),
      sq(l2_norm(invPsi * derivative(invPsi * derivative(invPsi)))),
  };
}

}  // namespace

DomainEnergy domain_energy_E1(const WaveState& s, const std::vector<double>& heights,
                              double holo_tol) {
  const auto& d = s.derived();
  const GridFunction Fz_trace = d.dZt.conj();
  DomainEnergy e;
  for (double y : heights) {
    const GridFunction Fz = extend_boundary_field(Fz_trace, y, holo_tol);
    const GridFunction Psi = extend_boundary_field(d.Zalpha, y, holo_tol);
    e.by_height.push_back(e1_terms(Fz, 1.0 / Psi));
  }
  const std::vector<double> trace = e1_terms(Fz_trace, d.invZalpha);
  e.by_height.push_back(trace);
  e.terms = trace;
  for (std::size_t h = 0; h + 1 < e.by_height.size(); ++h) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const double v = e.by_height[h][i];
      if (v > trace[i] * (1.0 + 1e-12) + 1e-14) e.boundary_realizes_sup = false;
      e.terms[i] = std::max(e.terms[i], v);
    }
  }
  for (double t : e.terms) e.total += t;
  return e;
}

}  // namespace cw
