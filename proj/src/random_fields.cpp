#include "crestwave/random_fields.hpp"

#include <cmath>

#include "crestwave/errors.hpp"
#include "crestwave/spectral.hpp"

namespace cw {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

GridFunction random_field(std::size_t n, int kmax, Support support, Rng& rng,
                          double decay, double norm) {
  require_grid_size(n);
  if (kmax < 1 || kmax >= static_cast<int>(n / 2)) throw DomainError("kmax out of band");
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> c(n);
  Spectrum s(std::move(c));
  for (int k = -kmax; k <= kmax; ++k) {
    const double w = std::pow(1.0 + std::abs(k), -decay);
    const double re = g(rng), im = g(rng);
    bool keep = true;
    switch (support) {
      case Support::full: break;
      case Support::mean_zero:
      case Support::real: keep = k != 0; break;
      case Support::holomorphic: keep = k < 0; break;
    }
    if (keep) s[s.index(k)] = w * cplx(re, im);
  }
  GridFunction f = to_grid(s);
  if (support == Support::real) f = f.real() - mean(f.real());
  const double l2 = l2_norm(f);
  if (l2 == 0.0) return f;
  return f * (norm / l2);
}

WaveState random_admissible_state(std::size_t n, int kmax, Rng& rng, double slope,
                                  double speed) {
  GridFunction dP = random_field(n, kmax, Support::holomorphic, rng, 1.5);
  dP *= slope / linf_norm(dP);
  // integrate mode by mode: P' = dP with modes k < 0
  const int nq = -static_cast<int>(n / 2);
  GridFunction P = apply_multiplier(dP, [nq](int k) {
    return (k == 0 || k == nq) ? cplx{} : 1.0 / cplx(0.0, static_cast<double>(k));
  });
  GridFunction Ztbar = random_field(n, kmax, Support::holomorphic, rng, 1.5);
  Ztbar *= speed / linf_norm(Ztbar);
  return WaveState(0.0, std::move(P), Ztbar.conj());
}

}  // namespace cw
