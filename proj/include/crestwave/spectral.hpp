#pragma once
// FFT-backed calculus on periodic grid functions: derivatives, the Hilbert
// transform H (symbol -sgn k), holomorphic projections, norms and the
// Poisson extension into the lower half-plane.

#include <functional>

#include "crestwave/grid_function.hpp"

namespace cw {

// Multiply mode k by symbol(k). The Nyquist mode is passed through the same
// symbol; callers decide how to treat it.
GridFunction apply_multiplier(const GridFunction& f,
                              const std::function<cplx(int)>& symbol);

// Mode k times ik, Nyquist zeroed.
GridFunction derivative(const GridFunction& f);
GridFunction derivative(const GridFunction& f, int order);

// Mode k times -sgn(k); mean and Nyquist mode go to zero.
GridFunction hilbert(const GridFunction& f);

// (I + H)/2 and (I - H)/2. P_H keeps k < 0, halves k = 0 and the Nyquist mode.
GridFunction proj_holo(const GridFunction& f);
GridFunction proj_anti(const GridFunction& f);

// sqrt(2 pi sum |k| |c_k|^2)
double hhalf_norm(const GridFunction& f);
// sqrt(2 pi sum (1 + k^2)^s |c_k|^2)
double sobolev_norm(const GridFunction& f, double s);

// Mode k times e^{-|k||y|}. Throws DomainError unless y < 0.
GridFunction poisson_extend(const GridFunction& f, double y);

// Discrete norms and averages (trapezoid rule on the period).
double l2_norm(const GridFunction& f);
double linf_norm(const GridFunction& f);
cplx mean(const GridFunction& f);
cplx integral(const GridFunction& f);
double min_real(const GridFunction& f);
double max_abs_imag(const GridFunction& f);

// ||(I - H) f||_2: zero exactly when f has only modes k <= 0 and zero mean,
// i.e. f is the boundary value of a function holomorphic in the lower
// half-plane vanishing at depth.
double holo_residual(const GridFunction& f);

// Trigonometric interpolant evaluated off-grid (Nyquist mode dropped).
cplx interpolate(const Spectrum& s, double x);
cplx interpolate(const GridFunction& f, double x);

// Zero every mode with |k| >= cutoff.
GridFunction truncate_modes(const GridFunction& f, int cutoff);

// Fraction of spectral energy sum |c_k|^2 carried by modes with |k| > kmin.
double tail_energy_fraction(const GridFunction& f, int kmin);

}  // namespace cw
