#include <doctest.h>

#include <cmath>

#include "crestwave/errors.hpp"
#include "crestwave/grid_function.hpp"
#include "crestwave/quadrature.hpp"
#include "crestwave/random_fields.hpp"
#include "crestwave/spectral.hpp"

using namespace cw;

namespace {

GridFunction mode(std::size_t n, int k, cplx amp = 1.0) {
  return GridFunction::sample(n, [k, amp](double x) { return amp * std::polar(1.0, k * x); });
}

// Periodic Hilbert transform by the trapezoid rule on the cotangent kernel,
// with the removable diagonal replaced by its limit. Independent of the FFT.
GridFunction hilbert_by_cot(const GridFunction& f) {
  const std::size_t n = f.size();
  const GridFunction df = derivative(f);
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc = -df[j];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const double u = GridFunction::node(j, n) - GridFunction::node(k, n);
      acc += (f[k] - f[j]) * 0.5 / std::tan(0.5 * u);
    }
    // f(x) itself integrates to zero against the odd kernel
    out[j] = acc * f.spacing() / (kPi * kI);
  }
  return GridFunction(std::move(out));
}

}  // namespace

TEST_CASE("grid size must be a power of two of at least 16") {
  CHECK_NOTHROW(require_grid_size(16));
  CHECK_NOTHROW(require_grid_size(1024));
  CHECK_THROWS_AS(require_grid_size(8), DomainError);
  CHECK_THROWS_AS(require_grid_size(48), DomainError);
}

TEST_CASE("physical to spectral round trip") {
  Rng rng(7);
  for (std::size_t n : {16u, 128u, 1024u}) {
    const GridFunction f = random_field(n, static_cast<int>(n / 2 - 1), Support::full, rng);
    const GridFunction g = to_grid(to_spectrum(f));
    CHECK(l2_norm(g - f) <= 1e-13 * l2_norm(f));
  }
}

TEST_CASE("spectrum of a real function is conjugate symmetric") {
  Rng rng(3);
  const GridFunction f = random_field(64, 20, Support::real, rng);
  const Spectrum s = to_spectrum(f);
  for (int k = 1; k < 32; ++k) CHECK(std::abs(s.mode(-k) - std::conj(s.mode(k))) < 1e-15);
}

TEST_CASE("spectral derivative") {
  const std::size_t n = 64;
  const GridFunction s = GridFunction::sample(n, [](double x) { return cplx(std::sin(x)); });
  const GridFunction c = GridFunction::sample(n, [](double x) { return cplx(std::cos(x)); });
  CHECK(linf_norm(derivative(s) - c) < 1e-14);
  CHECK(linf_norm(derivative(GridFunction(n, 3.5))) == 0.0);
  CHECK(linf_norm(derivative(mode(n, 3)) - mode(n, 3, 3.0 * kI)) < 1e-12);
  CHECK(linf_norm(derivative(mode(n, -5), 3) - mode(n, -5, 125.0 * kI)) < 1e-10);

  SUBCASE("Nyquist mode is dropped") {
    const GridFunction nyq = mode(n, static_cast<int>(n / 2));
    CHECK(linf_norm(derivative(nyq)) < 1e-12);
    CHECK(linf_norm(hilbert(nyq)) < 1e-13);
  }
}

TEST_CASE("Hilbert transform on single modes") {
  const std::size_t n = 256;
  CHECK(linf_norm(hilbert(GridFunction(n, 1.0))) == 0.0);
  for (int k : {1, 4, 17}) {
    CHECK(linf_norm(hilbert(mode(n, -k)) - mode(n, -k)) < 1e-13);
    CHECK(linf_norm(hilbert(mode(n, k)) + mode(n, k)) < 1e-13);
    // the cotangent-kernel quadrature agrees with the multiplier
    CHECK(linf_norm(hilbert_by_cot(mode(n, -k)) - mode(n, -k)) < 1e-8);
    CHECK(linf_norm(hilbert_by_cot(mode(n, k)) + mode(n, k)) < 1e-8);
  }
}

TEST_CASE("Hilbert transform properties on random fields") {
  Rng rng(11);
  const std::size_t n = 512;
  for (int trial = 0; trial < 20; ++trial) {
    const GridFunction f = random_field(n, 40, Support::mean_zero, rng);
    CHECK(linf_norm(hilbert(hilbert(f)) - f) < 1e-12);
    CHECK(linf_norm(hilbert(f) - quad::hilbert_pv(f)) < 1e-8);
    const GridFunction r = random_field(n, 40, Support::real, rng);
    // real input goes to purely imaginary output
    CHECK(linf_norm(hilbert(r).real()) < 1e-14);
    // i H d/dx is a nonnegative operator
    CHECK((kI * integral(hilbert(derivative(r)) * r.conj())).real() >= -1e-12);
  }
}

TEST_CASE("(I - H) g = 0 exactly when g has modes k < 0 only") {
  Rng rng(5);
  const GridFunction g = random_field(128, 30, Support::holomorphic, rng);
  CHECK(holo_residual(g) < 1e-14);
  CHECK(holo_residual(g + 1.0) > 1.0);  // the mean is not annihilated
  CHECK(holo_residual(g + mode(128, 2, 0.1)) == doctest::Approx(2.0 * 0.1 * std::sqrt(kTwoPi)).epsilon(1e-12));
}

TEST_CASE("holomorphic and antiholomorphic projections") {
  const std::size_t n = 64;
  CHECK(linf_norm(proj_holo(mode(n, -1)) - mode(n, -1)) < 1e-15);
  CHECK(linf_norm(proj_anti(mode(n, -1))) < 1e-15);
  CHECK(linf_norm(proj_holo(mode(n, 1))) < 1e-15);
  CHECK(linf_norm(proj_anti(mode(n, 1)) - mode(n, 1)) < 1e-15);
  Rng rng(2);
  const GridFunction f = random_field(n, 31, Support::full, rng);
  CHECK(linf_norm(proj_holo(f) + proj_anti(f) - f) < 1e-15);
  CHECK(linf_norm(proj_holo(f) - proj_anti(f) - hilbert(f)) < 1e-15);
  // modes are scaled by 0, 1/2 or 1; the mean makes P_H only idempotent off k = 0
  const GridFunction g = f - mean(f);
  CHECK(linf_norm(proj_holo(proj_holo(g)) - proj_holo(g)) < 1e-15);
}

TEST_CASE("H^1/2 seminorm") {
  const std::size_t n = 128;
  CHECK(hhalf_norm(GridFunction(n, 2.0)) == 0.0);
  for (int k : {-7, 1, 3})
    CHECK(hhalf_norm(mode(n, k)) == doctest::Approx(std::sqrt(kTwoPi * std::abs(k))).epsilon(1e-13));
  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const GridFunction f = random_field(n, 24, Support::full, rng);
    const double a = hhalf_norm(f);
    CHECK(std::abs(a - quad::hhalf_double_integral(f)) < 1e-6 * a);
    // pairing form i int (H f') conj(f)
    const double pairing = (kI * integral(hilbert(derivative(f)) * f.conj())).real();
    CHECK(pairing == doctest::Approx(a * a).epsilon(1e-12));
  }
}

TEST_CASE("Sobolev norms") {
  const std::size_t n = 64;
  Rng rng(17);
  const GridFunction f = random_field(n, 20, Support::full, rng);
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-13));
  CHECK(sobolev_norm(mode(n, 4), 1.0) == doctest::Approx(std::sqrt(kTwoPi * 17.0)).epsilon(1e-13));
  double prev = 0.0;
  for (double s : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    const double v = sobolev_norm(f, s);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("L2 norm is the unnormalised integral over one period") {
  CHECK(l2_norm(GridFunction(32, 1.0)) == doctest::Approx(std::sqrt(kTwoPi)));
  CHECK(std::abs(integral(mode(32, 3))) < 1e-14);
}

TEST_CASE("Poisson extension") {
  const std::size_t n = 256;
  CHECK_THROWS_AS(poisson_extend(GridFunction(n, 1.0), 0.0), DomainError);
  CHECK_THROWS_AS(poisson_extend(GridFunction(n, 1.0), 0.3), DomainError);
  CHECK(linf_norm(poisson_extend(GridFunction(n, cplx(2.0, -1.0)), -0.7) - cplx(2.0, -1.0)) < 1e-14);
  for (int k : {-3, 1, 5}) {
    const GridFunction e = poisson_extend(mode(n, k), -1.0);
    CHECK(linf_norm(e - mode(n, k, std::exp(-std::abs(k)))) < 1e-14);
    // periodized Poisson kernel by direct summation
    CHECK(linf_norm(quad::poisson_pv(mode(n, k), -1.0) - e) < 1e-8);
  }
  Rng rng(19);
  const GridFunction f = random_field(n, 60, Support::full, rng);
  for (double y : {-0.01, -0.1, -1.0}) CHECK(l2_norm(poisson_extend(f, y)) <= l2_norm(f));
  CHECK(linf_norm(poisson_extend(f, -1e-12) - f) < 1e-9);
}

TEST_CASE("trigonometric interpolation is exact for band-limited functions") {
  const std::size_t n = 64;
  const GridFunction f = mode(n, 3, 0.5) + mode(n, -7, cplx(0.0, 2.0)) + 1.0;
  for (double x : {0.1, 1.234, 5.9}) {
    const cplx exact = 0.5 * std::polar(1.0, 3 * x) + 2.0 * kI * std::polar(1.0, -7 * x) + 1.0;
    CHECK(std::abs(interpolate(f, x) - exact) < 1e-13);
  }
}

TEST_CASE("mode truncation and tail fraction") {
  const std::size_t n = 64;
  const GridFunction f = mode(n, 2) + mode(n, -20, 2.0);
  CHECK(linf_norm(truncate_modes(f, 10) - mode(n, 2)) < 1e-13);
  CHECK(tail_energy_fraction(f, 15) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(tail_energy_fraction(GridFunction(n), 3) == 0.0);
}

TEST_CASE("Sobolev ratio stays below 2 on random mean-zero functions") {
  Rng rng(23);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const GridFunction f = random_field(256, 2 + trial % 60, Support::mean_zero, rng);
    const double ratio = std::pow(linf_norm(f), 2) / (l2_norm(f) * l2_norm(derivative(f)));
    worst = std::max(worst, ratio);
  }
  CHECK(worst <= 2.0 + 1e-6);
  CHECK(worst > 0.0);
}

TEST_CASE("Hardy ratio is bounded on random functions") {
  Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction f = random_field(128, 4 + 3 * trial, Support::full, rng);
    const double ratio = quad::hardy_sup(f) / std::pow(l2_norm(derivative(f)), 2);
    CHECK(std::isfinite(ratio));
    CHECK(ratio <= 10.0);
  }
}
