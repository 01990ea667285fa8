#pragma once

#include "bilmax/symbol.hpp"

namespace bilmax {

/// C-infinity transition: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);
double smooth_step_derivative(double t);

enum class PartitionFlavor { hormander, riesz };

// Radial partitions of unity.
//
// hormander: phi_hat = 1 on [0, 1], 0 beyond 2; psi_0 = phi_hat(rho/2) and
//   psi_j = phi_hat(2^{-j-1} rho) - phi_hat(2^{-j} rho), supported on
//   [2^j, 2^{j+2}].
// riesz: with u = 1 - rho and beta = 1 on [0, 1/2], 0 beyond 1,
//   psi_0 = 1 - beta(2u) (supported in rho <= 3/4) and
//   psi_j = beta(2^j u) - beta(2^{j+1} u), supported on
//   [1 - 2^{-j}, 1 - 2^{-j-2}].
class DyadicPartition {
 public:
  static DyadicPartition hormander() { return DyadicPartition(PartitionFlavor::hormander); }
  static DyadicPartition riesz() { return DyadicPartition(PartitionFlavor::riesz); }

  PartitionFlavor flavor() const { return flavor_; }

  double phi_hat(double rho) const;
  double psi(int j, double rho) const;
  double psi_derivative(int j, double rho) const;
  Annulus annulus(int j) const;

  /// Radius below which sum_{j <= j_max} psi_j is identically 1.
  double covered_radius(int j_max) const;

 private:
  explicit DyadicPartition(PartitionFlavor flavor) : flavor_(flavor) {}
  PartitionFlavor flavor_;
};

}  // namespace bilmax
