#pragma once
// Thin FFTW wrapper. Plans are cached per thread and per size; plan creation
// and destruction are serialized because the FFTW planner is not reentrant.

#include <cstddef>

#include "crestwave/grid_function.hpp"

namespace cw::detail {

// out[k] = (1/n) sum_j in[j] e^{-2 pi i jk/n}
void dft_forward(const cplx* in, cplx* out, std::size_t n);
// out[j] = sum_k in[k] e^{2 pi i jk/n}
void dft_inverse(const cplx* in, cplx* out, std::size_t n);

}  // namespace cw::detail
