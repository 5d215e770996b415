#pragma once
// The evolved pair (P, Z_t) with Z = alpha + P, plus lazily computed derived
// fields in the Riemann-mapping frame.

#include <memory>

#include "crestwave/grid_function.hpp"

namespace cw {

struct GuardSettings {
  double tol_A1 = 1e-10;        // A1 >= 1 - tol_A1 expected pointwise
  double jacobian_min = 1e-6;   // min |Z_alpha| allowed on the grid
};

// Independent formula routes, exposed so they can be cross-checked.
// A1 = 1 - Im [Z_t, H] conj(Z_t)'
GridFunction a1_commutator_form(const GridFunction& Zt);
// b = Re [Z_t, H](1/Z_alpha - 1) + 2 Re Z_t
GridFunction b_commutator_form(const GridFunction& Zt, const GridFunction& invZalpha);
// b = Re (I - H)(Z_t / Z_alpha)
GridFunction b_projection_form(const GridFunction& Zt, const GridFunction& invZalpha);
// Z_tt = i A1 / conj(Z_alpha) - i
GridFunction ztt_from_a1(const GridFunction& A1, const GridFunction& Zalpha);
// Z_tt = i (A1/|Z_alpha|^2) Z_alpha - i
GridFunction ztt_from_frakA(const GridFunction& A1, const GridFunction& Zalpha);

class WaveState {
 public:
  struct Derived {
    GridFunction Zalpha;     // 1 + P'
    GridFunction invZalpha;  // 1 / Z_alpha
    GridFunction dZt;        // Z_t'
    GridFunction A1;
    GridFunction frakA;      // A1 / |Z_alpha|^2
    GridFunction b;
    GridFunction Ztt;
    double min_Zalpha = 0.0;
    double min_A1 = 0.0;
  };

  WaveState() = default;
  WaveState(double t, GridFunction P, GridFunction Zt, GuardSettings guards = {});

  double t() const { return t_; }
  std::size_t size() const { return P_.size(); }
  const GridFunction& P() const { return P_; }
  const GridFunction& Zt() const { return Zt_; }
  const GuardSettings& guards() const { return guards_; }
  GridFunction Z() const;

  void set_time(double t) { t_ = t; }
  void set_P(GridFunction P);
  void set_Zt(GridFunction Zt);
  void set_guards(GuardSettings g);

  // Throws JacobianGuardError or A1ViolationError when a guard trips.
  // Not safe to call concurrently on the same object.
  const Derived& derived() const;
  const GridFunction& Zalpha() const { return derived().Zalpha; }
  const GridFunction& invZalpha() const { return derived().invZalpha; }
  const GridFunction& A1() const { return derived().A1; }
  const GridFunction& b() const { return derived().b; }
  const GridFunction& Ztt() const { return derived().Ztt; }
  const GridFunction& at_over_a() const;

 private:
  double t_ = 0.0;
  GridFunction P_, Zt_;
  GuardSettings guards_;
  mutable std::shared_ptr<const Derived> cache_;
  mutable std::shared_ptr<const GridFunction> at_cache_;
};

// Free-function views over the cache.
GridFunction compute_A1(const WaveState& s);
GridFunction compute_b(const WaveState& s);
GridFunction compute_Ztt(const WaveState& s);
// a_t/a composed with h^{-1}:
//   -Im(2[Z_t,H] conj(Z_tt)' + 2[Z_tt,H] conj(Z_t)' - [Z_t,Z_t; D conj(Z_t)]) / A1
GridFunction compute_at_over_a(const WaveState& s);

}  // namespace cw
