#pragma once

#include <vector>

#include "bilmax/coeff_tree.hpp"

namespace bilmax {

// Level set U_tau = {2^{-tau-1} A < |b| <= 2^{-tau} A} split into heavy columns
// (U1: every column with at least N1 members) and the rest (U2). A column is
// the xi-factor of the index: gamma, the first n mask bits and k = mu[0..n).
// With tau == tau_max the band is the bottom one, {|b| <= 2^{-tau} A}.
struct ColumnPartition {
  int tau = 0;
  double A = 0.0;
  double r = 4.0;
  long N1 = 1;
  double N2 = 0.0;
  double B = 0.0;
  std::vector<WaveletIndex> U_tau;
  std::vector<WaveletIndex> U1;
  std::vector<WaveletIndex> U2;

  /// #P1 U1, the number of distinct heavy columns.
  std::size_t heavy_columns() const;
  /// Count bound implied by the band's lower edge: 2^r N2.
  double guaranteed_column_bound() const;
};

struct ColumnKey {
  int gamma = 0;
  std::uint32_t xi_mask = 0;
  std::array<std::int32_t, kMaxAxes / 2> k{};

  friend auto operator<=>(const ColumnKey&, const ColumnKey&) = default;
};

ColumnKey column_of(const WaveletIndex& idx);

ColumnPartition column_partition(const CoeffTree& tree, int tau, double A, long N1,
                                 double r = 4.0, int tau_max = -1);

/// N1 = ceil(2^{tau r / 2}).
long balanced_N1(int tau, double r);

}  // namespace bilmax
