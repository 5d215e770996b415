#include "crestwave/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "crestwave/errors.hpp"
#include "crestwave/singular_ops.hpp"
#include "crestwave/spectral.hpp"

namespace cw::quad {

GridFunction cot_pv(const GridFunction& f) {
  const std::size_t n = f.size();
  const PvKernelEval d(f);
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    // S_1(x-y)(f(y)-f(x)) tends to -f'(x) on the diagonal
    cplx acc = -d(j, j);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) acc -= d(j, k);
    out[j] = f.spacing() * acc;
  }
  return GridFunction(std::move(out));
}

GridFunction hilbert_pv(const GridFunction& f) {
  return cot_pv(f) * (1.0 / (kPi * kI));
}

GridFunction commutator_pv(const GridFunction& f, const GridFunction& g) {
  const std::size_t n = f.size();
  const PvKernelEval d(f);
  const cplx pref = f.spacing() / (kPi * kI);
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += d(j, k) * g[k];
    out[j] = pref * acc;
  }
  return GridFunction(std::move(out));
}

namespace {

// Row integrals int |f(x_j)-f(y)|^2 S_2(x_j-y) dy
std::vector<double> squared_difference_rows(const GridFunction& f) {
  const std::size_t n = f.size();
  const PvKernelEval d(f);
  std::vector<double> S2(n, 0.0);
  for (std::size_t s = 1; s < n; ++s)
    S2[s] = periodized_kernel(2, GridFunction::node(s, n));
  std::vector<double> rows(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = std::norm(d(j, j));
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) acc += std::norm(d.delta(j, k)) * S2[(j + n - k) % n];
    rows[j] = f.spacing() * acc;
  }
  return rows;
}

}  // namespace

double hhalf_double_integral(const GridFunction& f) {
  const auto rows = squared_difference_rows(f);
  double acc = 0.0;
  for (double r : rows) acc += r;
  return std::sqrt(std::max(0.0, acc * f.spacing() / kTwoPi));
}

GridFunction a1_double_integral(const GridFunction& Zt) {
  const auto rows = squared_difference_rows(Zt);
  std::vector<cplx> out(rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) out[j] = 1.0 + rows[j] / kTwoPi;
  return GridFunction(std::move(out));
}

double hardy_sup(const GridFunction& f) {
  const auto rows = squared_difference_rows(f);
  return *std::max_element(rows.begin(), rows.end());
}

GridFunction poisson_pv(const GridFunction& f, double y) {
  if (!(y < 0.0)) throw DomainError("poisson_pv requires y < 0");
  const std::size_t n = f.size();
  const double sh = std::sinh(-y), ch = std::cosh(y);
  std::vector<double> K(n);
  for (std::size_t s = 0; s < n; ++s)
    K[s] = sh / (kTwoPi * (ch - std::cos(GridFunction::node(s, n))));
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += K[(j + n - k) % n] * f[k];
    out[j] = f.spacing() * acc;
  }
  return GridFunction(std::move(out));
}

}  // namespace cw::quad
