#pragma once
// Singularity-removed trapezoid evaluations of the principal-value and
// hypersingular integrals. These are independent of the FFT multipliers and
// serve as oracles for them.

#include "crestwave/grid_function.hpp"

namespace cw::quad {

// (1/(pi i)) pv int S_1(x-y) f(y) dy
GridFunction hilbert_pv(const GridFunction& f);
// (1/(pi i)) int (f(x)-f(y)) S_1(x-y) g(y) dy
GridFunction commutator_pv(const GridFunction& f, const GridFunction& g);
// (1/2pi) double integral of |f(x)-f(y)|^2 S_2(x-y), returned as a norm
double hhalf_double_integral(const GridFunction& f);
// 1 + (1/2pi) int |Zt(x)-Zt(y)|^2 S_2(x-y) dy
GridFunction a1_double_integral(const GridFunction& Zt);
// sup_x int |f(x)-f(y)|^2 S_2(x-y) dy
double hardy_sup(const GridFunction& f);
// int S_1(x-y)(f(y)-f(x)) dy, i.e. pi i H f
GridFunction cot_pv(const GridFunction& f);
// K_y * f with the periodized Poisson kernel, by direct summation
GridFunction poisson_pv(const GridFunction& f, double y);

}  // namespace cw::quad
