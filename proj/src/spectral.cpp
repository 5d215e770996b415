#include "crestwave/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "crestwave/errors.hpp"

namespace cw {
namespace {

int nyquist(std::size_t n) { return -static_cast<int>(n / 2); }

double sgn(int k) { return k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0); }

}  // namespace

GridFunction apply_multiplier(const GridFunction& f,
                              const std::function<cplx(int)>& symbol) {
  Spectrum s = to_spectrum(f);
  s.apply(symbol);
  return to_grid(s);
}

GridFunction derivative(const GridFunction& f) {
  const int nq = nyquist(f.size());
  return apply_multiplier(f, [nq](int k) {
    return k == nq ? cplx{} : cplx(0.0, static_cast<double>(k));
  });
}

GridFunction derivative(const GridFunction& f, int order) {
  if (order < 0) throw DomainError("derivative order must be nonnegative");
  if (order == 0) return f;
  const int nq = nyquist(f.size());
  return apply_multiplier(f, [nq, order](int k) {
    return k == nq ? cplx{} : std::pow(cplx(0.0, static_cast<double>(k)), order);
  });
}

GridFunction hilbert(const GridFunction& f) {
  const int nq = nyquist(f.size());
  return apply_multiplier(
      f, [nq](int k) { return k == nq ? cplx{} : cplx(-sgn(k), 0.0); });
}

GridFunction proj_holo(const GridFunction& f) {
  const int nq = nyquist(f.size());
  return apply_multiplier(f, [nq](int k) {
    if (k == 0 || k == nq) return cplx(0.5, 0.0);
    return cplx(k < 0 ? 1.0 : 0.0, 0.0);
  });
}

GridFunction proj_anti(const GridFunction& f) {
  const int nq = nyquist(f.size());
  return apply_multiplier(f, [nq](int k) {
    if (k == 0 || k == nq) return cplx(0.5, 0.0);
    return cplx(k > 0 ? 1.0 : 0.0, 0.0);
  });
}

double hhalf_norm(const GridFunction& f) {
  const Spectrum s = to_spectrum(f);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    acc += std::abs(s.wavenumber(i)) * std::norm(s[i]);
  return std::sqrt(kTwoPi * acc);
}

double sobolev_norm(const GridFunction& f, double s) {
  if (s < 0) throw DomainError("sobolev exponent must be nonnegative");
  const Spectrum c = to_spectrum(f);
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double k = c.wavenumber(i);
    acc += std::pow(1.0 + k * k, s) * std::norm(c[i]);
  }
  return std::sqrt(kTwoPi * acc);
}

GridFunction poisson_extend(const GridFunction& f, double y) {
  if (!(y < 0.0)) throw DomainError("poisson_extend requires y < 0");
  return apply_multiplier(f, [y](int k) {
    return cplx(std::exp(-std::abs(static_cast<double>(k)) * std::abs(y)), 0.0);
  });
}

double l2_norm(const GridFunction& f) {
  double acc = 0.0;
  for (const cplx& v : f.values()) acc += std::norm(v);
  return std::sqrt(acc * f.spacing());
}

double linf_norm(const GridFunction& f) {
  double m = 0.0;
  for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

cplx mean(const GridFunction& f) {
  cplx acc{};
  for (const cplx& v : f.values()) acc += v;
  return acc / static_cast<double>(f.size());
}

cplx integral(const GridFunction& f) { return mean(f) * kTwoPi; }

double min_real(const GridFunction& f) {
  double m = f[0].real();
  for (const cplx& v : f.values()) m = std::min(m, v.real());
  return m;
}

double max_abs_imag(const GridFunction& f) {
  double m = 0.0;
  for (const cplx& v : f.values()) m = std::max(m, std::abs(v.imag()));
  return m;
}

double holo_residual(const GridFunction& f) { return l2_norm(f - hilbert(f)); }

cplx interpolate(const Spectrum& s, double x) {
  const int nq = nyquist(s.size());
  cplx acc{};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int k = s.wavenumber(i);
    if (k == nq) continue;
    acc += s[i] * std::polar(1.0, k * x);
  }
  return acc;
}

cplx interpolate(const GridFunction& f, double x) {
  return interpolate(to_spectrum(f), x);
}

GridFunction truncate_modes(const GridFunction& f, int cutoff) {
  return apply_multiplier(f, [cutoff](int k) {
    return std::abs(k) >= cutoff ? cplx{} : cplx(1.0, 0.0);
  });
}

double tail_energy_fraction(const GridFunction& f, int kmin) {
  const Spectrum s = to_spectrum(f);
  double total = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double e = std::norm(s[i]);
    total += e;
    if (std::abs(s.wavenumber(i)) > kmin) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace cw
