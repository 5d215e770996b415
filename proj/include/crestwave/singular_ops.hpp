#pragma once
// Commutators with H and the multilinear singular integrals built from
// periodized difference quotients.

#include <vector>

#include "crestwave/grid_function.hpp"

namespace cw {

// Periodization sum_n 1/(u + 2 pi n)^p for p = 1..4, written through
// c = cot(u/2). p = 1 is the principal-value kernel cot(u/2)/2.
double periodized_kernel(int p, double u);

// Periodized difference quotient of f,
//   d(j,k) = (f_j - f_k) / (2 tan((alpha_j - alpha_k)/2)),  d(j,j) = f'(alpha_j).
// Entries are produced on demand from a length-n cotangent table so the
// O(n^2) table never has to be stored.
class PvKernelEval {
 public:
  explicit PvKernelEval(const GridFunction& f);

  std::size_t size() const { return f_.size(); }
  cplx operator()(std::size_t j, std::size_t k) const {
    if (j == k) return df_[j];
    return (f_[j] - f_[k]) * half_cot_[(j + n_ - k) % n_];
  }
  // Raw difference f_j - f_k.
  cplx delta(std::size_t j, std::size_t k) const { return f_[j] - f_[k]; }
  // cot(u/2)/2 at u = 2 pi m / n, m != 0.
  double half_cot(std::size_t m) const { return half_cot_[m % n_]; }
  const GridFunction& values() const { return f_; }
  const GridFunction& derivative() const { return df_; }

 private:
  std::size_t n_;
  GridFunction f_;
  GridFunction df_;
  std::vector<double> half_cot_;
};

// [f, H] g = f H g - H(f g)
GridFunction commutator_h(const GridFunction& f, const GridFunction& g);
// [f, H] dg/dalpha
GridFunction commutator_h_dg(const GridFunction& f, const GridFunction& g);

// [f, g; h](x) = (1/(pi i)) int (f(x)-f(y))(g(x)-g(y)) S_2(x-y) h(y) dy.
// Quadrature on the difference-quotient tables: the csc^2 kernel splits as
// d_f d_g + (df)(dg)/4 with diagonal f' g' h.  O(n^2).
GridFunction double_bracket(const GridFunction& f, const GridFunction& g,
                            const GridFunction& h);
// Same operator through H: -f g (Hh)' + f (H(gh))' + g (H(fh))' - (H(fgh))'.
GridFunction double_bracket_spectral(const GridFunction& f, const GridFunction& g,
                                     const GridFunction& h);

// C1(A_1..A_m, f)(x) = pv int prod_i (A_i(x) - A_i(y)) S_{m+1}(x-y) f(y) dy
// C2(A_1..A_m, f)(x) =    int prod_i (A_i(x) - A_i(y)) S_m(x-y) f'(y) dy
// O(n^2) quadrature; DomainError on an empty list or m > 3.
GridFunction c1_operator(const std::vector<GridFunction>& A, const GridFunction& f);
GridFunction c2_operator(const std::vector<GridFunction>& A, const GridFunction& f);

}  // namespace cw
