#include "bilmax/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bilmax/fft.hpp"
#include "bilmax/norms.hpp"
#include "bilmax/parallel.hpp"

namespace bilmax {

namespace {
constexpr double pi = std::numbers::pi;
}

double predicted_bound_C(int j, int gamma, double lambda, double r, double s, int n) {
  if (!(r > 1.0 && r <= 4.0)) throw InvalidParameterError("predicted bound needs r in (1, 4]");
  const double decay_j = std::exp2(-j * (lambda - 1.0));
  if (r == 4.0) return n * (j + gamma) * decay_j * std::exp2(gamma * (1.0 + n / 2.0 - s));
  return decay_j * std::exp2(gamma * (1.0 + 2.0 * n / r - s));
}

AnnularPiece bochner_riesz_piece(int n, double lambda, int j, bool rescaled) {
  AnnularPiece piece = dyadic_piece(bochner_riesz_symbol(n, lambda), DyadicPartition::riesz(), j);
  return rescaled ? rescale(piece) : piece;
}

double circle_measure_transform(double r, int nodes) {
  if (nodes < 4) throw InvalidParameterError("circle quadrature needs at least 4 nodes");
  const double step = 2.0 * pi / nodes;
  double acc = 0.0;
  for (int k = 0; k < nodes; ++k) acc += std::cos(2.0 * pi * r * std::cos(k * step));
  return acc * step;
}

BesselIdentityReport bessel_identity_check(const std::vector<double>& radii, double order_shift,
                                           int nodes, double normalize_at) {
  const Symbol m = m_alpha_symbol(1, order_shift);
  BesselIdentityReport rep;
  rep.order_shift = order_shift;
  rep.normalize_at = normalize_at;
  const double p = m.radial_value(normalize_at);
  if (std::abs(p) < 1e-8) throw NumericError("profile vanishes at the normalization radius");
  rep.constant = circle_measure_transform(normalize_at, nodes) / p;
  rep.radii = radii;
  for (double r : radii) {
    const double q = circle_measure_transform(r, nodes);
    const double p = m.radial_value(r);
    rep.quadrature.push_back(q);
    rep.profile.push_back(p);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(q - rep.constant * p));
  }
  return rep;
}

bool ConvergenceTable::non_increasing(double slack) const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].sup_error > (1.0 + slack) * rows[i - 1].sup_error) return false;
  return true;
}

ConvergenceTable convergence_study(double lambda, int n, const Field& f, const Field& g,
                                   const std::vector<double>& t_list) {
  if (!(lambda > 0.0)) throw InvalidParameterError("lambda must be positive");
  if (f.grid().dim != n) throw InvalidGridError("inputs must live on an n-dimensional grid");
  for (std::size_t i = 1; i < t_list.size(); ++i)
    if (!(t_list[i] < t_list[i - 1])) throw InvalidParameterError("t_list must decrease");
  const Symbol m = bochner_riesz_symbol(n, lambda);
  const Band bf = spectral_band(f), bg = spectral_band(g);
  const double rho_max = std::hypot(bf.hi, bg.hi);
  const Field F = fft_forward(f), G = fft_forward(g);
  const Field product = hadamard(f, g);

  ConvergenceTable table;
  table.lambda = lambda;
  table.rows.resize(t_list.size());
  for (double t : t_list)
    if (lambda * std::pow(t * rho_max, 2) < 1e-14 && rho_max > 0.0)
      throw ResolutionError("t = " + std::to_string(t) +
                            " is below what the grid distinguishes from the identity symbol");
  parallel_for(t_list.size(), [&](std::size_t i) {
    const Field A = apply_bilinear_hat(m, F, G, t_list[i]);
    table.rows[i] = {t_list[i], max_abs(A - product)};
  });
  return table;
}

KernelDecayReport kernel_decay(const Symbol& m, const Grid& freq_grid, double r_lo, double r_hi,
                               int bins, double bound, double tolerance) {
  if (!(r_hi > r_lo && r_lo > 0.0) || bins < 2)
    throw InvalidParameterError("kernel decay needs 0 < r_lo < r_hi and at least 2 bins");
  const Field K = kernel(m, freq_grid);
  const Grid& sg = K.grid();
  const int n = sg.dim / 2;
  const double top = max_abs(K);
  KernelDecayReport rep;
  std::vector<double> env(static_cast<std::size_t>(bins), 0.0);
  const double a = std::log(r_lo), step = (std::log(r_hi) - a) / bins;
  double imag = 0.0;
  for (Index i = 0; i < sg.size(); ++i) {
    imag = std::max(imag, std::abs(K[i].imag()));
    const Point p = sg.point(i);
    const double R = 1.0 + p.head(n).norm() + p.tail(n).norm();
    if (R < r_lo || R >= r_hi) continue;
    const auto b = static_cast<std::size_t>((std::log(R) - a) / step);
    if (b < env.size()) env[b] = std::max(env[b], std::abs(K[i]));
  }
  rep.max_imag_ratio = top > 0.0 ? imag / top : 0.0;
  std::vector<double> x;
  for (int b = 0; b < bins; ++b) {
    if (env[static_cast<std::size_t>(b)] <= 0.0) continue;
    const double center = std::exp(a + (b + 0.5) * step);
    rep.bin_center.push_back(center);
    rep.envelope.push_back(env[static_cast<std::size_t>(b)]);
    x.push_back(std::log2(center));
  }
  rep.fit = fit_log2_slope("log2(1+|y|+|z|)", x, rep.envelope, bound, tolerance);
  return rep;
}

DilationGrid effective_grid(const AnnularPiece& piece, const Band& band_f, const Band& band_g,
                            int per_octave, bool midpoint) {
  const DilationRange range = effective_dilation_range(piece.annulus(), band_f, band_g);
  if (!std::isfinite(range.t_hi) || !(range.t_lo > 0.0))
    throw InvalidParameterError("effective dilation range is unbounded for these bands");
  if (!midpoint) return DilationGrid::per_octave(range.t_lo, range.t_hi, per_octave);
  const auto count = static_cast<std::size_t>(
      std::max(2.0, std::ceil(per_octave * std::log2(range.t_hi / range.t_lo))));
  return DilationGrid::log_midpoint(range.t_lo, range.t_hi, count);
}

FtcReport ftc_check(const AnnularPiece& piece, const Field& f, const Field& g, double t,
                    std::size_t nodes, const std::vector<Index>& points) {
  const DilationRange range =
      effective_dilation_range(piece.annulus(), spectral_band(f), spectral_band(g));
  const Field F = fft_forward(f), G = fft_forward(g);
  const Field direct = apply_bilinear_hat(piece.symbol, F, G, t);
  FtcReport rep;
  rep.points = points;
  rep.integrated.assign(points.size(), 0.0);
  if (range.t_lo < t) {
    const DilationGrid sg = DilationGrid::log_midpoint(range.t_lo, t, nodes);
    const Symbol tilde = radial_derivative_symbol(piece);
    std::vector<std::vector<std::complex<double>>> at(sg.count());
    parallel_for(sg.count(), [&](std::size_t k) {
      const Field B = apply_bilinear_hat(tilde, F, G, sg.t_values()[k]);
      for (Index p : points) at[k].push_back(B[p]);
    });
    for (const auto& vals : at)
      for (std::size_t p = 0; p < points.size(); ++p) rep.integrated[p] += sg.log_weight() * vals[p];
  }
  for (std::size_t p = 0; p < points.size(); ++p) {
    rep.direct.push_back(direct[points[p]]);
    const double denom = std::abs(rep.direct.back());
    const double err = std::abs(rep.direct.back() - rep.integrated[p]);
    rep.max_rel_error =
        std::max(rep.max_rel_error, denom > 0.0 ? err / denom : std::numeric_limits<double>::infinity());
  }
  return rep;
}

MajorizationReport majorization_constant(const Field& maximal, const Field& Mf, const Field& Mg,
                                         double floor_rel) {
  const Eigen::ArrayXd denom = Mf.modulus() * Mg.modulus();
  const double floor = floor_rel * denom.maxCoeff();
  const Eigen::ArrayXd num = maximal.modulus();
  MajorizationReport rep;
  for (Index i = 0; i < num.size(); ++i) {
    if (denom[i] <= floor) continue;
    const double ratio = num[i] / denom[i];
    if (ratio > rep.constant) {
      rep.constant = ratio;
      rep.argmax = i;
    }
  }
  return rep;
}

PieceNormDecay piece_norm_decay(const PieceNormOptions& opt) {
  if (opt.j_hi - opt.j_lo < 1) throw FitError("piece-norm decay needs two or more j values");
  PieceNormDecay out;
  std::vector<double> xs, maxima;
  for (int j = opt.j_lo; j <= opt.j_hi; ++j) {
    const AnnularPiece piece = bochner_riesz_piece(1, opt.lambda, j, true);
    const Band band{std::ldexp(1.0, j - 1), std::ldexp(1.0, j + 1)};
    const auto points = fft_friendly_size(
        static_cast<Index>(std::ceil(2.0 * opt.extent * band.hi * 1.15)));
    TrialEnsemble ens;
    ens.seed = opt.seed * 1000003ULL + static_cast<std::uint64_t>(j);
    ens.count = opt.trials;
    ens.grid = Grid::make(1, points, opt.extent);
    ens.band_f = band;
    ens.band_g = band;
    const DilationGrid tg = effective_grid(piece, band, band, opt.per_octave, false);
    const RatioStatistics st = norm_ratio_estimate(
        [&](const Field& f, const Field& g) { return maximal_operator(piece.symbol, f, g, tg).maximal; },
        ens);
    out.js.push_back(j);
    out.stats.push_back(st);
    xs.push_back(j);
    maxima.push_back(st.max);
  }
  out.fit = fit_log2_slope("j", xs, maxima, -(opt.lambda - 1.0) / 2.0, opt.tolerance);
  return out;
}

}  // namespace bilmax
