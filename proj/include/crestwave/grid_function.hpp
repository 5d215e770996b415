#pragma once
// Periodic complex samples on the uniform grid alpha_j = 2*pi*j/n, and the
// matching discrete Fourier coefficients.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace cw {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Throws DomainError unless n >= 16 and n is a power of two.
void require_grid_size(std::size_t n);

class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(std::size_t n, cplx fill = {});
  explicit GridFunction(std::vector<cplx> values);

  template <class F>
  static GridFunction sample(std::size_t n, F&& f) {
    std::vector<cplx> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f(node(j, n));
    return GridFunction(std::move(v));
  }

  static double node(std::size_t j, std::size_t n) {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(n);
  }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double node(std::size_t j) const { return node(j, size()); }
  double spacing() const { return kTwoPi / static_cast<double>(size()); }

  const cplx& operator[](std::size_t j) const { return values_[j]; }
  std::span<const cplx> values() const { return values_; }
  const cplx* data() const { return values_.data(); }

  template <class F>
  GridFunction map(F&& f) const {
    std::vector<cplx> v(values_.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(values_[j]);
    return GridFunction(std::move(v));
  }

  GridFunction conj() const;
  GridFunction real() const;
  GridFunction imag() const;
  GridFunction abs() const;
  // Samples shifted by s grid points: result[j] = f[j + s].
  GridFunction shifted(std::ptrdiff_t s) const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(const GridFunction& o);
  GridFunction& operator/=(const GridFunction& o);
  GridFunction& operator+=(cplx c);
  GridFunction& operator-=(cplx c);
  GridFunction& operator*=(cplx c);

 private:
  std::vector<cplx> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(GridFunction a, const GridFunction& b);
GridFunction operator/(GridFunction a, const GridFunction& b);
GridFunction operator+(GridFunction a, cplx c);
GridFunction operator+(cplx c, GridFunction a);
GridFunction operator-(GridFunction a, cplx c);
GridFunction operator-(cplx c, const GridFunction& a);
GridFunction operator*(GridFunction a, cplx c);
GridFunction operator*(cplx c, GridFunction a);
GridFunction operator/(cplx c, const GridFunction& a);
GridFunction operator-(const GridFunction& a);

// Coefficients c_k of f(alpha) = sum_k c_k e^{i k alpha}, stored in FFT order:
// index i holds k = i for i < n/2 and k = i - n otherwise (so k = -n/2 is the
// Nyquist mode).
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<cplx> coeffs);

  std::size_t size() const { return c_.size(); }
  static int wavenumber(std::size_t idx, std::size_t n) {
    return idx < n / 2 ? static_cast<int>(idx)
                       : static_cast<int>(idx) - static_cast<int>(n);
  }
  int wavenumber(std::size_t idx) const { return wavenumber(idx, size()); }
  std::size_t index(int k) const;
  bool has_mode(int k) const;

  cplx& operator[](std::size_t idx) { return c_[idx]; }
  const cplx& operator[](std::size_t idx) const { return c_[idx]; }
  // Coefficient of e^{ik alpha}; zero when k is outside the grid band.
  cplx mode(int k) const;
  std::span<const cplx> coefficients() const { return c_; }

  template <class F>
  void apply(F&& symbol) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] *= symbol(wavenumber(i));
  }

 private:
  std::vector<cplx> c_;
};

Spectrum to_spectrum(const GridFunction& f);
GridFunction to_grid(const Spectrum& s);

}  // namespace cw
