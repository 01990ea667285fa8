#include "catch_amalgamated.hpp"

#include <bilmax/experiments.hpp>
#include <bilmax/fft.hpp>
#include <bilmax/norms.hpp>

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace bilmax;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

Field gaussian(const Grid& g, double center, double width) {
  return Field::sample(g, [=](const Point& x) {
    const double d = x[0] - center;
    return std::exp(-pi * d * d / (width * width));
  });
}

TrialEnsemble small_ensemble(std::uint64_t seed) {
  TrialEnsemble ens;
  ens.seed = seed;
  ens.count = 6;
  ens.grid = Grid::make(1, 256, 16.0);
  ens.band_f = {1.0, 2.0};
  ens.band_g = {0.5, 3.0};
  return ens;
}

}  // namespace

TEST_CASE("predicted bound curve", "[harness]") {
  CHECK(predicted_bound_C(0, 0, 2.0, 4.0, 1.5, 1) == 0.0);
  CHECK(predicted_bound_C(1, 0, 2.0, 2.0, 2.6, 1) == Approx(0.5).epsilon(1e-15));
  CHECK(predicted_bound_C(2, 3, 3.0, 4.0, 2.0, 1) ==
        Approx(5.0 / 16.0 * std::pow(2.0, -1.5)).epsilon(1e-14));
  CHECK(predicted_bound_C(1, 2, 3.0, 3.0, 2.6, 2) ==
        Approx(std::pow(2.0, -2.0) * std::pow(2.0, 2.0 * (1.0 + 4.0 / 3.0 - 2.6))).epsilon(1e-14));
  for (double r : {2.0, 4.0})
    for (int j = 1; j < 10; ++j)
      CHECK(predicted_bound_C(j + 1, 2, 2.5, r, 2.0, 1) < predicted_bound_C(j, 2, 2.5, r, 2.0, 1));
  CHECK_THROWS_AS(predicted_bound_C(1, 1, 2.0, 1.0, 2.0, 1), InvalidParameterError);
  CHECK_THROWS_AS(predicted_bound_C(1, 1, 2.0, 4.5, 2.0, 1), InvalidParameterError);
}

TEST_CASE("log2 slope fits", "[fit]") {
  std::vector<double> x, y;
  for (int k = 0; k < 6; ++k) {
    x.push_back(k);
    y.push_back(std::exp2(3.0 - 1.5 * k));
  }
  const DecayFitReport r = fit_log2_slope("j", x, y, -1.4, 0.0);
  CHECK(r.slope == Approx(-1.5).epsilon(1e-12));
  CHECK(r.intercept == Approx(3.0).epsilon(1e-12));
  CHECK(r.residual_rms < 1e-12);
  CHECK(r.verdict);
  CHECK(r.recompute_verdict() == r.verdict);
  CHECK(r.log2_values.size() == x.size());

  CHECK_FALSE(fit_log2_slope("j", x, y, -1.6, 0.05).verdict);
  CHECK(fit_log2_slope("j", x, y, -1.6, 0.15, SlopeCheck::within).verdict);
  CHECK_FALSE(fit_log2_slope("j", x, y, -1.2, 0.15, SlopeCheck::within).verdict);

  DecayFitReport edited = r;
  edited.bound = -2.0;
  CHECK_FALSE(edited.recompute_verdict());

  // Noisy data: the residual is the RMS of the log2 misfit.
  const std::vector<double> noisy{1.0, 0.25, 0.125, 0.0625};
  const LinearFit lf = least_squares({0, 1, 2, 3}, {0.0, -2.0, -3.0, -4.0});
  const DecayFitReport nr = fit_log2_slope("g", {0, 1, 2, 3}, noisy, 0.0, 0.0);
  CHECK(nr.slope == Approx(lf.slope).epsilon(1e-12));
  CHECK(nr.residual_rms == Approx(lf.residual_rms).epsilon(1e-12));
  CHECK(nr.residual_rms > 0.1);

  CHECK_THROWS_AS(fit_log2_slope("j", {0, 1}, {1.0, 0.0}, 0.0, 0.1), FitError);
  CHECK_THROWS_AS(fit_log2_slope("j", {1, 1}, {1.0, 2.0}, 0.0, 0.1), FitError);
  CHECK_THROWS_AS(fit_log2_slope("j", {1}, {1.0}, 0.0, 0.1), FitError);
}

TEST_CASE("trial ensembles are reproducible and normalized", "[ensemble]") {
  const TrialEnsemble ens = small_ensemble(11);
  const auto [f1, g1] = ens.draw(3);
  const auto [f2, g2] = ens.draw(3);
  CHECK(max_abs(f1 - f2) == 0.0);
  CHECK(max_abs(g1 - g2) == 0.0);
  const auto [f3, g3] = ens.draw(4);
  CHECK(max_abs(f1 - f3) > 1e-3);
  CHECK(max_abs(small_ensemble(12).draw(3).first - f1) > 1e-3);

  for (std::size_t i = 0; i < ens.count; ++i) {
    const auto [f, g] = ens.draw(i);
    CHECK(lp_norm(f, 2.0) == Approx(1.0).epsilon(1e-12));
    CHECK(lp_norm(g, 2.0) == Approx(1.0).epsilon(1e-12));
    // Spectrum confined to the band.
    const Field F = fft_forward(f);
    const Grid dual = F.grid();
    double outside = 0.0;
    for (Index k = 0; k < dual.size(); ++k) {
      const double r = dual.point(k).norm();
      if (r < ens.band_f.lo || r > ens.band_f.hi) outside = std::max(outside, std::abs(F[k]));
    }
    CHECK(outside <= 1e-12 * max_abs(F));
  }
  CHECK_THROWS_AS(random_band_limited(ens.grid, {0.0, 20.0}, 1, 0), ResolutionError);
}

TEST_CASE("norm ratio estimates", "[ensemble]") {
  const TrialEnsemble ens = small_ensemble(5);
  const Symbol one = Symbol::constant(2, 1.0);

  const RatioStatistics prod =
      norm_ratio_estimate([&](const Field& f, const Field& g) { return apply_bilinear(one, f, g, 1.0); }, ens);
  REQUIRE(prod.ratios.size() == ens.count);
  for (double r : prod.ratios) CHECK(r <= 1.0 + 1e-10);
  CHECK(prod.max == *std::max_element(prod.ratios.begin(), prod.ratios.end()));
  CHECK(prod.mean <= prod.max);
  CHECK(prod.median <= prod.q90);
  CHECK(prod.q90 <= prod.max);

  // ||f f||_1 = ||f||_2^2 = 1: equality in Cauchy-Schwarz.
  const RatioStatistics eq =
      norm_ratio_estimate([&](const Field& f, const Field&) { return apply_bilinear(one, f, f, 1.0); }, ens);
  for (double r : eq.ratios) CHECK(r == Approx(1.0).epsilon(1e-10));

  const Symbol zero = Symbol::constant(2, 0.0);
  const RatioStatistics z =
      norm_ratio_estimate([&](const Field& f, const Field& g) { return apply_bilinear(zero, f, g, 1.0); }, ens);
  for (double r : z.ratios) CHECK(r == 0.0);

  TrialEnsemble empty = ens;
  empty.count = 0;
  CHECK_THROWS_AS(norm_ratio_estimate([&](const Field& f, const Field&) { return f; }, empty),
                  InvalidParameterError);

  const RatioStatistics s = summarize({4.0, 1.0, 3.0, 2.0});
  CHECK(s.max == 4.0);
  CHECK(s.mean == 2.5);
  CHECK(s.ratios == std::vector<double>{4.0, 1.0, 3.0, 2.0});
}

TEST_CASE("Bochner-Riesz piece norms decay in j", "[ensemble]") {
  PieceNormOptions opt;
  opt.j_lo = 2;
  opt.j_hi = 4;
  opt.trials = 4;
  opt.per_octave = 8;
  const PieceNormDecay d = piece_norm_decay(opt);
  REQUIRE(d.js == std::vector<int>{2, 3, 4});
  CHECK(d.fit.slope < 0.0);
  CHECK(d.fit.x.size() == 3);

  const PieceNormDecay again = piece_norm_decay(opt);
  for (std::size_t i = 0; i < d.stats.size(); ++i) CHECK(again.stats[i].ratios == d.stats[i].ratios);

  opt.j_hi = opt.j_lo;
  CHECK_THROWS_AS(piece_norm_decay(opt), FitError);
}

TEST_CASE("Bochner-Riesz means converge to the product", "[convergence]") {
  std::vector<double> ts;
  for (int k = 0; k <= 6; ++k) ts.push_back(std::ldexp(1.0, -k));
  auto study = [&](Index points) {
    const Grid g = Grid::make(1, points, 32.0);
    return convergence_study(3.0, 1, gaussian(g, 0.0, 1.0), gaussian(g, 0.5, std::sqrt(2.0)), ts);
  };
  const ConvergenceTable coarse = study(256);
  const ConvergenceTable oracle = study(1024);
  REQUIRE(coarse.rows.size() == ts.size());
  CHECK(coarse.rows.back().t == ts.back());
  CHECK(coarse.rows.back().sup_error < 1e-2);
  CHECK(coarse.rows.back().sup_error <= 2.0 * oracle.rows.back().sup_error);
  CHECK(coarse.non_increasing(0.05));
  CHECK(oracle.non_increasing(0.05));

  const Grid g = Grid::make(1, 256, 32.0);
  const ConvergenceTable zero = convergence_study(3.0, 1, Field::zeros(g), gaussian(g, 0.0, 1.0), ts);
  for (const auto& row : zero.rows) CHECK(row.sup_error == 0.0);

  CHECK_THROWS_AS(convergence_study(3.0, 1, gaussian(g, 0.0, 1.0), gaussian(g, 0.0, 1.0), {1e-9}),
                  ResolutionError);
  CHECK_THROWS_AS(convergence_study(3.0, 1, gaussian(g, 0.0, 1.0), gaussian(g, 0.0, 1.0), {0.25, 0.5}),
                  InvalidParameterError);
  CHECK_THROWS_AS(convergence_study(0.0, 1, gaussian(g, 0.0, 1.0), gaussian(g, 0.0, 1.0), ts),
                  InvalidParameterError);

  ConvergenceTable rising;
  rising.rows = {{0.5, 1.0}, {0.25, 1.04}, {0.125, 1.2}};
  CHECK_FALSE(rising.non_increasing(0.05));
  CHECK(rising.non_increasing(0.2));
}

TEST_CASE("circle measure transform matches the Bessel profile", "[bessel]") {
  for (double r : {0.0, 0.3, 1.0, 2.7, 8.0})
    CHECK(circle_measure_transform(r) ==
          Approx(2.0 * pi * boost::math::cyl_bessel_j(0, 2.0 * pi * r)).margin(1e-12));

  std::vector<double> radii;
  for (int i = 0; i < 80; ++i) radii.push_back(0.1 + i * (8.0 - 0.1) / 79.0);
  const BesselIdentityReport rep = bessel_identity_check(radii);
  CHECK(rep.max_deviation < 1e-8);
  CHECK(rep.radii == radii);
  CHECK(rep.quadrature.size() == radii.size());
  CHECK(rep.constant == Approx(circle_measure_transform(1.0) / m_alpha_symbol(1, 0.0).radial_value(1.0)));

  const BesselIdentityReport at_zero = bessel_identity_check({0.0});
  CHECK(at_zero.quadrature[0] == Approx(2.0 * pi).epsilon(1e-14));
  CHECK(at_zero.max_deviation < 1e-10);

  // J_{1/2}(2 pi) = 0, so the shifted profile cannot be normalized at r = 1.
  CHECK_THROWS_AS(bessel_identity_check(radii, 0.5), NumericError);
  const BesselIdentityReport control = bessel_identity_check(radii, 0.5, 4096, 0.0);
  CHECK(control.normalize_at == 0.0);
  CHECK(control.max_deviation > 1e-3);
  CHECK(bessel_identity_check(radii, 0.0, 4096, 0.0).max_deviation < 1e-8);
  CHECK_THROWS_AS(circle_measure_transform(1.0, 2), InvalidParameterError);
}

TEST_CASE("kernel decay of Bochner-Riesz symbols", "[kernel]") {
  const Grid freq = Grid::make(2, 256, 8.0);
  const KernelDecayReport rep = kernel_decay(bochner_riesz_symbol(1, 2.0), freq, 2.0, 12.0, 10, -3.5, 0.4);
  CHECK(rep.max_imag_ratio < 1e-12);
  CHECK(rep.fit.verdict);
  CHECK(rep.bin_center.size() == rep.envelope.size());
  CHECK(std::is_sorted(rep.bin_center.begin(), rep.bin_center.end()));
  CHECK_THROWS_AS(kernel_decay(bochner_riesz_symbol(1, 2.0), freq, 2.0, 1.0, 10, -3.5, 0.4),
                  InvalidParameterError);
}

TEST_CASE("FTC check through the harness", "[tilde]") {
  const TrialEnsemble ens = small_ensemble(21);
  const auto [f, g] = ens.draw(0);
  const AnnularPiece piece = bochner_riesz_piece(1, 3.0, 1, false);
  const DilationRange range = effective_dilation_range(piece.annulus(), spectral_band(f), spectral_band(g));
  const double t = 2.0 * range.t_lo;
  const Field S = apply_bilinear(piece.symbol, f, g, t);
  std::vector<Index> points;
  for (Index i = 0; i < S.size(); ++i)
    if (std::abs(S[i]) >= 0.1 * max_abs(S)) points.push_back(i);
  REQUIRE(points.size() >= 10);
  std::mt19937_64 rng(3);
  std::shuffle(points.begin(), points.end(), rng);
  points.resize(10);
  const FtcReport rep = ftc_check(piece, f, g, t, 64, points);
  CHECK(rep.max_rel_error < 1e-2);
  for (std::size_t p = 0; p < points.size(); ++p) CHECK(std::abs(rep.direct[p] - S[points[p]]) < 1e-12);

  // Below the effective range the integral is empty and so is S_t.
  const FtcReport low = ftc_check(piece, f, g, 0.5 * range.t_lo, 16, {points[0]});
  CHECK(std::abs(low.integrated[0]) == 0.0);
  CHECK(std::abs(low.direct[0]) < 1e-12);
}

TEST_CASE("effective dilation grids", "[dilation]") {
  const AnnularPiece piece = bochner_riesz_piece(1, 3.0, 3, true);
  const Band band{4.0, 16.0};
  const DilationRange range = effective_dilation_range(piece.annulus(), band, band);
  const DilationGrid ends = effective_grid(piece, band, band, 8, false);
  CHECK(ends.t_min() == Approx(range.t_lo));
  CHECK(ends.t_max() == Approx(range.t_hi));
  CHECK_FALSE(ends.midpoint());
  const DilationGrid mids = effective_grid(piece, band, band, 8, true);
  CHECK(mids.midpoint());
  CHECK(mids.t_min() > range.t_lo);
  CHECK(mids.t_max() < range.t_hi);
  CHECK(mids.log_weight() * mids.count() == Approx(std::log(range.t_hi / range.t_lo)));
  CHECK_THROWS_AS(effective_grid(piece, {0.0, 2.0}, {0.0, 2.0}, 8, false), InvalidParameterError);
}

TEST_CASE("majorization constants", "[majorization]") {
  const Grid g = Grid::make(1, 64, 8.0);
  const Field Mf = Field::sample(g, [](const Point& x) { return 1.0 + x[0] * x[0]; });
  const Field Mg = Field::sample(g, [](const Point& x) { return std::exp(-x[0] * x[0]); });
  const Field maximal(g, 0.5 * (Mf.values() * Mg.values()));
  const MajorizationReport rep = majorization_constant(maximal, Mf, Mg);
  CHECK(rep.constant == Approx(0.5).epsilon(1e-14));

  Field::Values spiked = maximal.values();
  spiked[0] = 1.0;  // Mf Mg is ~2e-6 of its peak at the grid corner
  CHECK(majorization_constant(Field(g, spiked), Mf, Mg, 1e-5).constant == Approx(0.5).epsilon(1e-14));
  const MajorizationReport loose = majorization_constant(Field(g, spiked), Mf, Mg, 0.0);
  CHECK(loose.constant > 1e3);
  CHECK(loose.argmax == 0);
}
