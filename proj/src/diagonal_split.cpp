#include "bilmax/diagonal_split.hpp"

#include <cmath>

namespace bilmax {

DiagonalSplit diagonal_split(const CoeffTree& coeffs, const WaveletSystem& sys, long N_split) {
  const int dims = coeffs.dims();
  const int n = dims / 2;
  const double d = sys.support_diameter(dims);
  if (!(static_cast<double>(N_split) > 10.0 * d))
    throw InvalidSplitError("split threshold " + std::to_string(N_split) +
                            " must exceed 10 d = " + std::to_string(10.0 * d));
  const double N = static_cast<double>(N_split);
  std::vector<CoeffTree::Entry> e1, e2, e3;
  for (const auto& entry : coeffs.entries()) {
    double k2 = 0.0, l2 = 0.0;
    for (int a = 0; a < n; ++a) {
      const double k = entry.first.mu[static_cast<std::size_t>(a)];
      const double l = entry.first.mu[static_cast<std::size_t>(n + a)];
      k2 += k * k;
      l2 += l * l;
    }
    // Squared norms of integer vectors are exact, so compare squares.
    if (l2 <= N * N)
      e2.push_back(entry);
    else if (k2 >= N * N)
      e1.push_back(entry);
    else
      e3.push_back(entry);
  }
  DiagonalSplit out;
  out.m1 = CoeffTree(dims, std::move(e1), coeffs.j());
  out.m2 = CoeffTree(dims, std::move(e2), coeffs.j());
  out.m3 = CoeffTree(dims, std::move(e3), coeffs.j());
  out.N = N_split;
  out.support_diameter = d;
  return out;
}

}  // namespace bilmax
