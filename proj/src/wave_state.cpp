#include "crestwave/wave_state.hpp"

#include <cmath>
#include <sstream>

#include "crestwave/errors.hpp"
#include "crestwave/singular_ops.hpp"
#include "crestwave/spectral.hpp"

namespace cw {

GridFunction a1_commutator_form(const GridFunction& Zt) {
  const GridFunction c = commutator_h_dg(Zt, Zt.conj());
  return c.map([](cplx z) { return cplx(1.0 - z.imag(), 0.0); });
}

GridFunction b_commutator_form(const GridFunction& Zt, const GridFunction& invZalpha) {
  return (commutator_h(Zt, invZalpha - 1.0) + 2.0 * Zt).real();
}

GridFunction b_projection_form(const GridFunction& Zt, const GridFunction& invZalpha) {
  const GridFunction q = Zt * invZalpha;
  return (q - hilbert(q)).real();
}

GridFunction ztt_from_a1(const GridFunction& A1, const GridFunction& Zalpha) {
  return kI * A1 / Zalpha.conj() - kI;
}

GridFunction ztt_from_frakA(const GridFunction& A1, const GridFunction& Zalpha) {
  const GridFunction frakA = A1 / (Zalpha * Zalpha.conj());
  return kI * frakA * Zalpha - kI;
}

WaveState::WaveState(double t, GridFunction P, GridFunction Zt, GuardSettings guards)
    : t_(t), P_(std::move(P)), Zt_(std::move(Zt)), guards_(guards) {
  if (P_.size() != Zt_.size()) throw DomainError("P and Z_t grid sizes differ");
}

GridFunction WaveState::Z() const {
  return P_ + GridFunction::sample(size(), [](double a) { return cplx(a, 0.0); });
}

void WaveState::set_P(GridFunction P) {
  if (P.size() != Zt_.size()) throw DomainError("grid size mismatch");
  P_ = std::move(P);
  cache_.reset();
  at_cache_.reset();
}

void WaveState::set_Zt(GridFunction Zt) {
  if (Zt.size() != P_.size()) throw DomainError("grid size mismatch");
  Zt_ = std::move(Zt);
  cache_.reset();
  at_cache_.reset();
}

void WaveState::set_guards(GuardSettings g) {
  guards_ = g;
  cache_.reset();
  at_cache_.reset();
}

const WaveState::Derived& WaveState::derived() const {
  if (cache_) return *cache_;
  auto d = std::make_shared<Derived>();
  d->Zalpha = 1.0 + derivative(P_);
  d->min_Zalpha = std::abs(d->Zalpha[0]);
  for (const cplx& z : d->Zalpha.values())
    d->min_Zalpha = std::min(d->min_Zalpha, std::abs(z));
  if (!(d->min_Zalpha > guards_.jacobian_min)) {
    std::ostringstream os;
    os << "min |Z_alpha| = " << d->min_Zalpha << " at t = " << t_;
    throw JacobianGuardError(os.str(), d->min_Zalpha);
  }
  d->invZalpha = 1.0 / d->Zalpha;
  d->dZt = derivative(Zt_);
  d->A1 = a1_commutator_form(Zt_);
  d->min_A1 = min_real(d->A1);
  if (!(d->min_A1 >= 1.0 - 10.0 * guards_.tol_A1)) {
    std::ostringstream os;
    os << "min A1 = " << d->min_A1 << " at t = " << t_;
    throw A1ViolationError(os.str(), d->min_A1);
  }
  d->frakA = d->A1 * d->invZalpha * d->invZalpha.conj();
  d->b = b_commutator_form(Zt_, d->invZalpha);
  d->Ztt = kI * d->A1 / d->Zalpha.conj() - kI;
  cache_ = std::move(d);
  return *cache_;
}

const GridFunction& WaveState::at_over_a() const {
  if (at_cache_) return *at_cache_;
  const Derived& d = derived();
  const GridFunction Ztbar = Zt_.conj();
  const GridFunction dZtbar = d.dZt.conj();
  const GridFunction DZtbar = d.invZalpha * dZtbar;
  const GridFunction num = 2.0 * commutator_h_dg(Zt_, d.Ztt.conj()) +
                           2.0 * commutator_h(d.Ztt, dZtbar) -
                           double_bracket_spectral(Zt_, Zt_, DZtbar);
  GridFunction at = num.map([](cplx z) { return cplx(-z.imag(), 0.0); }) / d.A1;
  at_cache_ = std::make_shared<const GridFunction>(std::move(at));
  return *at_cache_;
}

GridFunction compute_A1(const WaveState& s) { return s.A1(); }
GridFunction compute_b(const WaveState& s) { return s.b(); }
GridFunction compute_Ztt(const WaveState& s) { return s.Ztt(); }
GridFunction compute_at_over_a(const WaveState& s) { return s.at_over_a(); }

}  // namespace cw
