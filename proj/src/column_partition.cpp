#include "bilmax/column_partition.hpp"

#include <cmath>
#include <map>
#include <set>

namespace bilmax {

ColumnKey column_of(const WaveletIndex& idx) {
  const int n = idx.dims / 2;
  ColumnKey key;
  key.gamma = idx.gamma;
  key.xi_mask = idx.mask & ((1u << n) - 1u);
  for (int a = 0; a < n; ++a)
    key.k[static_cast<std::size_t>(a)] = idx.mu[static_cast<std::size_t>(a)];
  return key;
}

std::size_t ColumnPartition::heavy_columns() const {
  std::set<ColumnKey> cols;
  for (const auto& idx : U1) cols.insert(column_of(idx));
  return cols.size();
}

double ColumnPartition::guaranteed_column_bound() const { return std::pow(2.0, r) * N2; }

ColumnPartition column_partition(const CoeffTree& tree, int tau, double A, long N1, double r,
                                 int tau_max) {
  if (tau < 0) throw InvalidParameterError("tau must be >= 0");
  if (N1 < 1) throw InvalidParameterError("N1 must be >= 1");
  if (!(r >= 1.0)) throw InvalidParameterError("r must be >= 1");
  if (A < tree.linf() * (1.0 - 1e-12))
    throw InvalidParameterError("amplitude A must dominate every coefficient");
  ColumnPartition part;
  part.tau = tau;
  part.A = A;
  part.r = r;
  part.N1 = N1;
  part.B = tree.lr(r);
  const double top = std::ldexp(A, -tau);
  const double bottom = std::ldexp(A, -tau - 1);
  const bool last_band = tau == tau_max;
  part.N2 = top > 0.0 ? std::pow(part.B, r) * std::pow(top, -r) / static_cast<double>(N1) : 0.0;

  std::map<ColumnKey, std::size_t> counts;
  for (const auto& [idx, value] : tree.entries()) {
    const double b = std::abs(value);
    if (b <= top && (last_band || b > bottom)) {
      part.U_tau.push_back(idx);
      ++counts[column_of(idx)];
    }
  }
  for (const auto& idx : part.U_tau) {
    if (counts[column_of(idx)] >= static_cast<std::size_t>(N1))
      part.U1.push_back(idx);
    else
      part.U2.push_back(idx);
  }
  return part;
}

long balanced_N1(int tau, double r) {
  return static_cast<long>(std::ceil(std::pow(2.0, tau * r / 2.0) - 1e-12));
}

}  // namespace bilmax
