#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "bilmax/bilinear.hpp"
#include "bilmax/ensemble.hpp"
#include "bilmax/fit.hpp"
#include "bilmax/square_function.hpp"
#include "bilmax/zoo.hpp"

namespace bilmax {

// C(j, gamma) = n (j+gamma) 2^{-j(lambda-1)} 2^{gamma(1+n/2-s)} for r = 4 and
// 2^{-j(lambda-1)} 2^{gamma(1+2n/r-s)} for 1 < r < 4, up to an unspecified
// constant.
double predicted_bound_C(int j, int gamma, double lambda, double r, double s, int n);

/// Bochner-Riesz piece m_j (or M_j when rescaled) of the radial partition.
AnnularPiece bochner_riesz_piece(int n, double lambda, int j, bool rescaled);

/// (2 pi / nodes) sum_k e^{-2 pi i r cos(theta_k)}, the transform of arc length
/// on the unit circle at a point of radius r.
double circle_measure_transform(double r, int nodes = 4096);

struct BesselIdentityReport {
  double order_shift = 0.0;
  double normalize_at = 1.0;
  /// Ratio quadrature / profile at normalize_at.
  double constant = 0.0;
  double max_deviation = 0.0;
  std::vector<double> radii;
  std::vector<double> quadrature;
  std::vector<double> profile;
};

// Circle-measure transform against the radial profile of m_alpha(1, shift),
// matched by one constant fitted at r = normalize_at.
BesselIdentityReport bessel_identity_check(const std::vector<double>& radii,
                                           double order_shift = 0.0, int nodes = 4096,
                                           double normalize_at = 1.0);

struct ConvergenceRow {
  double t = 0.0;
  double sup_error = 0.0;
};

struct ConvergenceTable {
  double lambda = 0.0;
  std::vector<ConvergenceRow> rows;
  /// Each error at most (1 + slack) times the previous one.
  bool non_increasing(double slack) const;
};

// sup |A_t(f,g) - f g| for Bochner-Riesz means A_t along a decreasing t_list.
// Throws ResolutionError once lambda (t rho_max)^2 < 1e-14, where the dilated
// symbol equals 1 to working precision on the spectra.
ConvergenceTable convergence_study(double lambda, int n, const Field& f, const Field& g,
                                   const std::vector<double>& t_list);

struct KernelDecayReport {
  std::vector<double> bin_center;
  std::vector<double> envelope;
  double max_imag_ratio = 0.0;
  DecayFitReport fit;
};

// |K| against R = 1 + |y| + |z| on log-spaced bins of [r_lo, r_hi]; the
// envelope is the per-bin maximum and the fit regresses log2 envelope on
// log2 R.
KernelDecayReport kernel_decay(const Symbol& m, const Grid& freq_grid, double r_lo, double r_hi,
                               int bins, double bound, double tolerance);

struct FtcReport {
  std::vector<Index> points;
  std::vector<std::complex<double>> direct;
  std::vector<std::complex<double>> integrated;
  double max_rel_error = 0.0;
};

// S_t(f,g) against the midpoint rule for int_{s_lo}^t B~_s ds/s, with s_lo the
// lower end of the effective dilation range (B~_s vanishes below it).
FtcReport ftc_check(const AnnularPiece& piece, const Field& f, const Field& g, double t,
                    std::size_t nodes, const std::vector<Index>& points);

/// Dilation grid over the effective s-range of a piece for the given spectra.
DilationGrid effective_grid(const AnnularPiece& piece, const Band& band_f, const Band& band_g,
                            int per_octave, bool midpoint);

struct MajorizationReport {
  double constant = 0.0;
  Index argmax = 0;
};

/// max over points of maximal / (Mf Mg), ignoring points where Mf Mg is below
/// floor_rel times its maximum.
MajorizationReport majorization_constant(const Field& maximal, const Field& Mf, const Field& Mg,
                                         double floor_rel = 1e-6);

struct PieceNormDecay {
  std::vector<int> js;
  std::vector<RatioStatistics> stats;
  DecayFitReport fit;
};

struct PieceNormOptions {
  double lambda = 3.0;
  int j_lo = 2;
  int j_hi = 7;
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  int per_octave = 16;
  double extent = 8.0;
  double tolerance = 0.5;
};

// max over unit pairs of ||T_j(f,g)||_{L^1}, T_j the maximal operator of the
// rescaled Bochner-Riesz piece M_j (n = 1) with inputs on 2^{j-1} <= |xi| <= 2^{j+1}.
PieceNormDecay piece_norm_decay(const PieceNormOptions& opt);

}  // namespace bilmax
