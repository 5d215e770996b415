#include "crestwave/singular_ops.hpp"

#include <cmath>

#include "crestwave/errors.hpp"
#include "crestwave/quadrature.hpp"
#include "crestwave/spectral.hpp"

namespace cw {

double periodized_kernel(int p, double u) {
  const double c = 1.0 / std::tan(0.5 * u);
  const double c2 = c * c;
  switch (p) {
    case 1: return 0.5 * c;
    case 2: return 0.25 * (1.0 + c2);
    case 3: return 0.125 * c * (1.0 + c2);
    case 4: return (1.0 + 3.0 * c2) * (1.0 + c2) / 48.0;
    default: throw DomainError("periodized kernel order must be 1..4");
  }
}

PvKernelEval::PvKernelEval(const GridFunction& f)
    : n_(f.size()), f_(f), df_(cw::derivative(f)), half_cot_(f.size(), 0.0) {
  for (std::size_t m = 1; m < n_; ++m)
    half_cot_[m] = periodized_kernel(1, GridFunction::node(m, n_));
}

GridFunction commutator_h(const GridFunction& f, const GridFunction& g) {
  return f * hilbert(g) - hilbert(f * g);
}

GridFunction commutator_h_dg(const GridFunction& f, const GridFunction& g) {
  return commutator_h(f, derivative(g));
}

GridFunction double_bracket(const GridFunction& f, const GridFunction& g,
                            const GridFunction& h) {
  const std::size_t n = f.size();
  const PvKernelEval df(f), dg(g);
  const cplx pref = f.spacing() / (kPi * kI);
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc = df(j, j) * dg(j, j) * h[j];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      acc += (df(j, k) * dg(j, k) + 0.25 * df.delta(j, k) * dg.delta(j, k)) * h[k];
    }
    out[j] = pref * acc;
  }
  return GridFunction(std::move(out));
}

GridFunction double_bracket_spectral(const GridFunction& f, const GridFunction& g,
                                     const GridFunction& h) {
  auto dH = [](const GridFunction& u) { return derivative(hilbert(u)); };
  return -(f * g * dH(h)) + f * dH(g * h) + g * dH(f * h) - dH(f * g * h);
}

namespace {

void require_arity(const std::vector<GridFunction>& A) {
  if (A.empty()) throw DomainError("operator needs at least one A_i");
  if (A.size() > 3) throw DomainError("operator supports at most three A_i");
}

}  // namespace

GridFunction c1_operator(const std::vector<GridFunction>& A, const GridFunction& f) {
  require_arity(A);
  const std::size_t n = f.size();
  const int m = static_cast<int>(A.size());
  std::vector<GridFunction> dA, ddA;
  for (const auto& a : A) {
    dA.push_back(derivative(a));
    ddA.push_back(derivative(a, 2));
  }
  std::vector<double> Sm1(n, 0.0), S1(n, 0.0);
  for (std::size_t s = 1; s < n; ++s) {
    const double u = GridFunction::node(s, n);
    Sm1[s] = periodized_kernel(m + 1, u);
    S1[s] = periodized_kernel(1, u);
  }
  const double h = f.spacing();
  // pv int S_1(x-y) f(y) dy, computed without FFTs
  const GridFunction cotf = quad::cot_pv(f);
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx lead = 1.0;
    for (int i = 0; i < m; ++i) lead *= dA[i][j];
    // limit of K - lead*S_1 on the diagonal
    cplx diag = 0.0;
    for (int i = 0; i < m; ++i) {
      cplx term = ddA[i][j];
      for (int l = 0; l < m; ++l)
        if (l != i) term *= dA[l][j];
      diag -= 0.5 * term;
    }
    cplx acc = diag * f[j];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const std::size_t s = (j + n - k) % n;
      cplx prod = 1.0;
      for (int i = 0; i < m; ++i) prod *= A[i][j] - A[i][k];
      acc += (prod * Sm1[s] - lead * S1[s]) * f[k];
    }
    out[j] = h * acc + lead * cotf[j];
  }
  return GridFunction(std::move(out));
}

GridFunction c2_operator(const std::vector<GridFunction>& A, const GridFunction& f) {
  require_arity(A);
  const std::size_t n = f.size();
  const int m = static_cast<int>(A.size());
  const GridFunction df = derivative(f);
  std::vector<GridFunction> dA;
  for (const auto& a : A) dA.push_back(derivative(a));
  std::vector<double> Sm(n, 0.0);
  for (std::size_t s = 1; s < n; ++s)
    Sm[s] = periodized_kernel(m, GridFunction::node(s, n));
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx diag = 1.0;
    for (int i = 0; i < m; ++i) diag *= dA[i][j];
    cplx acc = diag * df[j];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      cplx prod = 1.0;
      for (int i = 0; i < m; ++i) prod *= A[i][j] - A[i][k];
      acc += prod * Sm[(j + n - k) % n] * df[k];
    }
    out[j] = f.spacing() * acc;
  }
  return GridFunction(std::move(out));
}

}  // namespace cw
