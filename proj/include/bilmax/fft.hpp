#pragma once

#include <complex>

#include "bilmax/field.hpp"

namespace bilmax {

/// Continuous-transform approximation with kernel e^{-2 pi i x.xi}; the result
/// lives on grid.dual() and carries the h^dim quadrature weight.
Field fft_forward(const Field& f);

/// Inverse of fft_forward; kernel e^{+2 pi i x.xi} with weight (1/L)^dim.
Field fft_inverse(const Field& F);

namespace detail {

// Unweighted centered DFT on a dim-dimensional cube of side n:
//   out[k] = sum_i in[i] exp(sign * 2 pi i (i - n/2).(k - n/2) / n).
// in and out must not alias.
void centered_dft(const std::complex<double>* in, std::complex<double>* out, int dim,
                  Index n, int sign);

}  // namespace detail

}  // namespace bilmax
