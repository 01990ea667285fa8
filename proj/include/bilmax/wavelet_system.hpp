#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bilmax/grid.hpp"

namespace bilmax {

// Daubechies pair of order k: psi_M has vanishing moments of orders 0..k,
// which takes the filter with k+1 moments (length 2k+2). Both functions live
// on [0, 2k+1] and are tabulated at x = i 2^{-R}.
struct WaveletSystem {
  int order = 0;
  int resolution = 0;
  std::vector<double> filter;
  std::vector<double> highpass;
  Eigen::ArrayXd phi;
  Eigen::ArrayXd psi;

  /// Right end of the common support [0, 2k+1].
  int support_length() const { return static_cast<int>(filter.size()) - 1; }
  double table_spacing() const { return std::ldexp(1.0, -resolution); }
  /// Diameter of the support cube of a level-0 function in `dims` variables.
  double support_diameter(int dims) const;

  /// psi_F (mother = false) or psi_M (mother = true) at x; exact on the
  /// dyadic table, linear interpolation between nodes.
  double factor(bool mother, double x) const;
};

/// k in 2..10; resolution R >= 10.
WaveletSystem build_wavelet_system(int k, int resolution = 12);

/// Dilation level, factor mask and translation of one tensor basis function.
struct WaveletIndex {
  int gamma = 0;
  /// Bit a set means axis a carries psi_M; otherwise psi_F.
  std::uint32_t mask = 0;
  int dims = 2;
  std::array<std::int32_t, kMaxAxes> mu{};

  bool valid() const { return gamma >= 0 && dims >= 1 && dims <= kMaxAxes &&
                              (gamma == 0 || mask != 0) && mask < (1u << dims); }
  bool mother(int axis) const { return (mask >> axis) & 1u; }
  /// "F"/"M" per axis.
  std::string mask_string() const;

  friend bool operator==(const WaveletIndex&, const WaveletIndex&) = default;
  friend auto operator<=>(const WaveletIndex&, const WaveletIndex&) = default;
};

/// 2^{gamma dims / 2} prod_a psi_{G_a}(2^gamma x_a - mu_a).
double tensor_wavelet_eval(const WaveletSystem& sys, const WaveletIndex& idx, const Point& x);

}  // namespace bilmax
