#pragma once

#include "bilmax/coeff_tree.hpp"

namespace bilmax {

// Index split of a coefficient tree by k = mu[0..n) and l = mu[n..2n):
//   M2: |l| <= N,  M1: |k| >= N and |l| > N,  M3: |k| < N and |l| > N.
struct DiagonalSplit {
  CoeffTree m1;
  CoeffTree m2;
  CoeffTree m3;
  long N = 0;
  double support_diameter = 0.0;
};

/// Throws InvalidSplitError unless N_split > 10 d, d the support diameter of
/// a level-0 wavelet in 2n variables.
DiagonalSplit diagonal_split(const CoeffTree& coeffs, const WaveletSystem& sys, long N_split);

}  // namespace bilmax
