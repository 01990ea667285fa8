#pragma once

#include <vector>

#include "bilmax/coeff_tree.hpp"
#include "bilmax/field.hpp"
#include "bilmax/fit.hpp"
#include "bilmax/symbol.hpp"
#include "bilmax/zoo.hpp"

namespace bilmax {

// Axis-aligned lattice origin + i * spacing, i = 0..points-1, shared by all
// 2n axes of a frequency domain.
struct Lattice {
  int dims = 2;
  Index points = 0;
  double spacing = 1.0;
  double origin = 0.0;

  double coordinate(Index i) const { return origin + static_cast<double>(i) * spacing; }
  static Lattice from_grid(const Grid& grid);
  /// Symmetric lattice i * 2^{-p}, |i| <= ceil(radius 2^p).
  static Lattice covering(int dims, double radius, int spacing_exponent);
};

// Coefficients <m, w> for every tensor basis function with gamma <= gamma_max:
// scaling and wavelet functions at gamma = 0, wavelets above. Inner products
// are Riemann sums over the lattice points inside the symbol's support; the
// real part of m is analyzed.
CoeffTree analyze(const Symbol& m, const WaveletSystem& sys, int gamma_max, const Lattice& lattice);
CoeffTree analyze(const Symbol& m, const WaveletSystem& sys, int gamma_max, const Grid& grid);
/// Lattice spacing 2^{-p} with p = max(spacing_exponent, gamma_max + 2).
CoeffTree analyze(const AnnularPiece& piece, const WaveletSystem& sys, int gamma_max,
                  int spacing_exponent = 0);

/// sum_w a_w w sampled on a grid of dimension tree.dims().
Field reconstruct(const CoeffTree& tree, const WaveletSystem& sys, const Grid& grid);

/// Largest |a_w| per level; scaling functions are left out when asked.
std::vector<double> sup_by_level(const CoeffTree& tree, int gamma_max, bool exclude_scaling = true);

struct CoeffDecayProfile {
  std::vector<int> js;
  std::vector<int> gammas;
  /// sup[j_index][gamma] over wavelet coefficients.
  std::vector<std::vector<double>> sup;
  /// Joint fit log2 sup = c + a j + b gamma; each report holds the partial
  /// residuals along its own axis.
  DecayFitReport j_fit;
  DecayFitReport gamma_fit;
  /// Single-axis fits: j-slope at each fixed gamma, gamma-slope at each fixed j.
  std::vector<DecayFitReport> j_slopes_at_gamma;
  std::vector<DecayFitReport> gamma_slopes_at_j;
};

// Cor.-2.3 style comparison: j-slope against -lambda and gamma-slope against
// -(s + n - 2n/r).
CoeffDecayProfile coeff_decay_profile(const std::vector<CoeffTree>& trees, double r, double s,
                                      int n, double lambda, int gamma_max,
                                      double tolerance = 0.3);

}  // namespace bilmax
