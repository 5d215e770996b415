#include "crestwave/grid_function.hpp"

#include <cmath>
#include <string>

#include "crestwave/errors.hpp"
#include "fft.hpp"

namespace cw {

void require_grid_size(std::size_t n) {
  if (n < 16 || (n & (n - 1)) != 0)
    throw DomainError("grid size must be a power of two >= 16, got " +
                      std::to_string(n));
}

GridFunction::GridFunction(std::size_t n, cplx fill) : values_(n, fill) {
  require_grid_size(n);
}

GridFunction::GridFunction(std::vector<cplx> values) : values_(std::move(values)) {
  require_grid_size(values_.size());
}

GridFunction GridFunction::conj() const {
  return map([](cplx z) { return std::conj(z); });
}
GridFunction GridFunction::real() const {
  return map([](cplx z) { return cplx(z.real(), 0.0); });
}
GridFunction GridFunction::imag() const {
  return map([](cplx z) { return cplx(z.imag(), 0.0); });
}
GridFunction GridFunction::abs() const {
  return map([](cplx z) { return cplx(std::abs(z), 0.0); });
}

GridFunction GridFunction::shifted(std::ptrdiff_t s) const {
  const auto n = static_cast<std::ptrdiff_t>(size());
  std::vector<cplx> v(values_.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) v[j] = values_[((j + s) % n + n) % n];
  return GridFunction(std::move(v));
}

namespace {
void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw DomainError("grid size mismatch");
}
}  // namespace

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  require_same(size(), o.size());
  for (std::size_t j = 0; j < size(); ++j) values_[j] += o.values_[j];
  return *this;
}
GridFunction& GridFunction::operator-=(const GridFunction& o) {
  require_same(size(), o.size());
  for (std::size_t j = 0; j < size(); ++j) values_[j] -= o.values_[j];
  return *this;
}
GridFunction& GridFunction::operator*=(const GridFunction& o) {
  require_same(size(), o.size());
  for (std::size_t j = 0; j < size(); ++j) values_[j] *= o.values_[j];
  return *this;
}
GridFunction& GridFunction::operator/=(const GridFunction& o) {
  require_same(size(), o.size());
  for (std::size_t j = 0; j < size(); ++j) values_[j] /= o.values_[j];
  return *this;
}
GridFunction& GridFunction::operator+=(cplx c) {
  for (auto& v : values_) v += c;
  return *this;
}
GridFunction& GridFunction::operator-=(cplx c) {
  for (auto& v : values_) v -= c;
  return *this;
}
GridFunction& GridFunction::operator*=(cplx c) {
  for (auto& v : values_) v *= c;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(GridFunction a, const GridFunction& b) { return a *= b; }
GridFunction operator/(GridFunction a, const GridFunction& b) { return a /= b; }
GridFunction operator+(GridFunction a, cplx c) { return a += c; }
GridFunction operator+(cplx c, GridFunction a) { return a += c; }
GridFunction operator-(GridFunction a, cplx c) { return a -= c; }
GridFunction operator-(cplx c, const GridFunction& a) {
  return a.map([c](cplx z) { return c - z; });
}
GridFunction operator*(GridFunction a, cplx c) { return a *= c; }
GridFunction operator*(cplx c, GridFunction a) { return a *= c; }
GridFunction operator/(cplx c, const GridFunction& a) {
  return a.map([c](cplx z) { return c / z; });
}
GridFunction operator-(const GridFunction& a) {
  return a.map([](cplx z) { return -z; });
}

Spectrum::Spectrum(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  require_grid_size(c_.size());
}

bool Spectrum::has_mode(int k) const {
  const int half = static_cast<int>(size() / 2);
  return k >= -half && k < half;
}

std::size_t Spectrum::index(int k) const {
  if (!has_mode(k)) throw DomainError("wavenumber outside grid band");
  return k >= 0 ? static_cast<std::size_t>(k)
                : static_cast<std::size_t>(k + static_cast<int>(size()));
}

cplx Spectrum::mode(int k) const { return has_mode(k) ? c_[index(k)] : cplx{}; }

Spectrum to_spectrum(const GridFunction& f) {
  std::vector<cplx> c(f.size());
  detail::dft_forward(f.data(), c.data(), f.size());
  return Spectrum(std::move(c));
}

GridFunction to_grid(const Spectrum& s) {
  std::vector<cplx> v(s.size());
  detail::dft_inverse(s.coefficients().data(), v.data(), s.size());
  return GridFunction(std::move(v));
}

}  // namespace cw
