#include "catch_amalgamated.hpp"

#include <bilmax/bilinear.hpp>
#include <bilmax/fft.hpp>
#include <bilmax/norms.hpp>
#include <bilmax/square_function.hpp>
#include <bilmax/zoo.hpp>

#include <cmath>
#include <numbers>
#include <algorithm>
#include <random>

using namespace bilmax;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;

// Random field whose transform lives in lo <= |xi| <= hi.
Field band_limited(const Grid& g, double lo, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const Grid dual = g.dual();
  Field::Values spec(dual.size());
  for (Index i = 0; i < dual.size(); ++i) {
    const double r = dual.point(i).norm();
    spec[i] = (r >= lo && r <= hi) ? cd(nd(rng), nd(rng)) : cd(0.0);
  }
  return fft_inverse(Field(dual, spec));
}

Field random_field(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Field::Values v(g.size());
  for (auto& z : v) z = {nd(rng), nd(rng)};
  return Field(g, v);
}

double rel_err(const Field& a, const Field& b) { return max_abs(a - b) / max_abs(b); }

Field packet(const Grid& g, double x0, double freq, double width) {
  return Field::sample(g, [=](const Point& x) {
    const double d = (x - Point::Constant(x.size(), x0)).squaredNorm();
    return std::exp(-pi * d / (width * width)) * std::polar(1.0, 2.0 * pi * freq * x.sum());
  });
}

}  // namespace

TEST_CASE("constant symbol reproduces the pointwise product", "[bilinear]") {
  const Grid g = Grid::make(1, 128, 16.0);
  const Symbol one = Symbol::constant(2, 1.0);
  for (unsigned seed : {1u, 2u}) {
    const Field f = band_limited(g, 0.0, 2.0, seed), h = random_field(g, seed + 10);
    for (double t : {0.3, 1.0, 4.0})
      CHECK(rel_err(apply_bilinear(one, f, h, t), hadamard(f, h)) < 1e-8);
  }
}

TEST_CASE("separable symbols factor into linear multipliers", "[bilinear]") {
  const Grid g = Grid::make(1, 128, 16.0);
  const Field f = band_limited(g, 0.0, 3.0, 3), h = band_limited(g, 0.5, 2.5, 4);
  auto m1 = [](double x) { return std::exp(-x * x); };
  auto m2 = [](double y) { return 1.0 / (1.0 + y * y); };
  const Symbol m = Symbol::general(2, [&](const Point& z) { return cd(m1(z[0]) * m2(z[1])); }, {}, "sep");
  for (double t : {0.5, 1.7}) {
    const Symbol a = Symbol::general(1, [&](const Point& z) { return cd(m1(t * z[0])); }, {}, "a");
    const Symbol b = Symbol::general(1, [&](const Point& z) { return cd(m2(t * z[0])); }, {}, "b");
    const Field expect = hadamard(apply_freq_multiplier(f, a), apply_freq_multiplier(h, b));
    CHECK(max_abs(apply_bilinear(m, f, h, t) - expect) < 1e-9 * max_abs(expect));
  }
}

TEST_CASE("bilinear evaluation matches a direct double sum", "[bilinear]") {
  const Grid g = Grid::make(1, 64, 8.0);
  const Field f = random_field(g, 5), h = packet(g, 0.5, 1.0, 1.0);
  const Symbol m = Symbol::general(
      2, [](const Point& z) { return cd(std::exp(-0.3 * (z[0] - z[1]) * (z[0] - z[1])) * std::cos(z[0] * z[1]), 0.2 * z[0]); },
      {}, "generic");
  const double t = 0.7;
  const Field S = apply_bilinear(m, f, h, t);
  // Transforms by direct quadrature, then the double Riemann sum in (xi, eta).
  const Grid dual = g.dual();
  std::vector<cd> F(g.points), G(g.points);
  for (Index k = 0; k < g.points; ++k) {
    const double xi = dual.coordinate(k);
    for (Index i = 0; i < g.points; ++i) {
      F[k] += f[i] * std::polar(1.0, -2.0 * pi * g.coordinate(i) * xi) * g.spacing();
      G[k] += h[i] * std::polar(1.0, -2.0 * pi * g.coordinate(i) * xi) * g.spacing();
    }
  }
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<Index> pick(0, g.points - 1);
  for (int trial = 0; trial < 5; ++trial) {
    const Index i = pick(rng);
    const double x = g.coordinate(i);
    cd acc = 0.0;
    for (Index a = 0; a < g.points; ++a)
      for (Index b = 0; b < g.points; ++b) {
        Point z(2);
        z << t * dual.coordinate(a), t * dual.coordinate(b);
        acc += m(z) * F[a] * G[b] * std::polar(1.0, 2.0 * pi * x * (dual.coordinate(a) + dual.coordinate(b)));
      }
    acc *= dual.spacing() * dual.spacing();
    CHECK(std::abs(S[i] - acc) <= 1e-6 * std::abs(acc));
  }
}

TEST_CASE("bilinearity", "[bilinear]") {
  const Grid g = Grid::make(1, 128, 16.0);
  const Symbol m = bochner_riesz_symbol(1, 2.0);
  const Field f1 = band_limited(g, 0.0, 2.0, 7), f2 = band_limited(g, 0.0, 2.0, 8);
  const Field h = band_limited(g, 0.0, 2.0, 9);
  const cd a(1.5, -0.5), b(-0.25, 2.0);
  const Field lhs = apply_bilinear(m, a * f1 + b * f2, h, 0.8);
  const Field rhs = a * apply_bilinear(m, f1, h, 0.8) + b * apply_bilinear(m, f2, h, 0.8);
  CHECK(max_abs(lhs - rhs) <= 1e-10 * max_abs(rhs));
}

TEST_CASE("dilation covariance", "[bilinear]") {
  // S_t(f, g)(x) = S_1(f(t .), g(t .))(x / t): sample the dilated inputs on the
  // grid of extent L / t, whose nodes are the original nodes divided by t.
  const Symbol m = bochner_riesz_symbol(1, 3.0);
  auto f = [](double x) { return std::exp(-pi * x * x / 4.0) * std::polar(1.0, 1.3 * x); };
  auto h = [](double x) { return std::exp(-pi * (x - 1.0) * (x - 1.0) / 2.0); };
  for (double t : {0.5, 2.0}) {
    const Grid g = Grid::make(1, 256, 32.0);
    const Grid gt = Grid::make(1, 256, 32.0 / t);
    const Field ff = Field::sample(g, [&](const Point& x) { return f(x[0]); });
    const Field hh = Field::sample(g, [&](const Point& x) { return h(x[0]); });
    const Field ft = Field::sample(gt, [&](const Point& x) { return f(t * x[0]); });
    const Field ht = Field::sample(gt, [&](const Point& x) { return h(t * x[0]); });
    const Field lhs = apply_bilinear(m, ff, hh, t);
    const Field rhs = apply_bilinear(m, ft, ht, 1.0);
    double err = 0.0;
    for (Index i = 0; i < g.points; ++i) err = std::max(err, std::abs(lhs[i] - rhs[i]));
    CHECK(err <= 1e-6 * max_abs(lhs));
  }
}

TEST_CASE("maximal operator over dilation grids", "[bilinear]") {
  const Grid g = Grid::make(1, 128, 16.0);
  const Field f = band_limited(g, 0.0, 2.0, 11), h = band_limited(g, 0.0, 2.0, 12);
  const Symbol br = bochner_riesz_symbol(1, 2.0);

  const auto single = maximal_operator(br, f, h, DilationGrid::log_uniform(0.6, 0.6, 1));
  CHECK(max_abs(single.maximal - abs(apply_bilinear(br, f, h, 0.6))) == 0.0);

  const auto ident = maximal_operator(Symbol::constant(2, 1.0), f, h, DilationGrid::per_octave(0.25, 2.0, 4));
  CHECK(rel_err(ident.maximal, abs(hadamard(f, h))) < 1e-8);

  const DilationGrid tg = DilationGrid::per_octave(0.25, 4.0, 4);
  const auto coarse = maximal_operator(br, f, h, tg, true);
  const auto fine = maximal_operator(br, f, h, tg.refined());
  for (Index i = 0; i < g.size(); ++i) REQUIRE(fine.maximal[i].real() >= coarse.maximal[i].real());
  REQUIRE(coarse.per_t.size() == tg.count());
  Eigen::ArrayXd pmax = Eigen::ArrayXd::Zero(g.size());
  for (const auto& p : coarse.per_t) pmax = pmax.max(p.modulus());
  CHECK((pmax - coarse.maximal.modulus()).abs().maxCoeff() == 0.0);
  CHECK(coarse.l1_norms.size() == tg.count());
  CHECK(std::string(BilinearResult::kCaveat).find("lower bound") != std::string::npos);
}

TEST_CASE("dilation grids", "[dilation]") {
  const DilationGrid d = DilationGrid::per_octave(0.125, 8.0, 16);
  CHECK(d.count() == 6 * 16 + 1);
  CHECK(d.t_min() == 0.125);
  CHECK(d.t_max() == 8.0);
  for (std::size_t i = 1; i < d.count(); ++i)
    CHECK(std::abs(std::log(d.t_values()[i] / d.t_values()[i - 1]) - d.log_weight()) < 1e-12);
  const DilationGrid r = d.refined();
  CHECK(r.count() == 2 * d.count() - 1);
  for (std::size_t i = 0; i < d.count(); ++i) CHECK(r.t_values()[2 * i] == d.t_values()[i]);
  const DilationGrid mid = DilationGrid::log_midpoint(1.0, std::exp(2.0), 8);
  CHECK(mid.midpoint());
  CHECK(mid.log_weight() == Approx(0.25));
  CHECK(mid.t_values().front() == Approx(std::exp(0.125)));
  CHECK_THROWS_AS(DilationGrid::log_uniform(1.0, 2.0, 0), InvalidParameterError);
  CHECK_THROWS_AS(DilationGrid::log_uniform(-1.0, 2.0, 4), InvalidParameterError);
}

TEST_CASE("dilations outside the faithful range are flagged", "[dilation]") {
  const Grid g = Grid::make(1, 64, 8.0);
  const Field f = band_limited(g, 0.0, 1.0, 13);
  const AnnularPiece piece = dyadic_piece(bochner_riesz_symbol(1, 2.0), DyadicPartition::riesz(), 3);
  Diagnostics ok, bad;
  const DilationRange range = valid_dilation_range(piece.symbol, g);
  REQUIRE(range.t_lo < range.t_hi);
  apply_bilinear(piece.symbol, f, f, std::sqrt(range.t_lo * range.t_hi), &ok);
  apply_bilinear(piece.symbol, f, f, 4.0 * range.t_hi, &bad);
  CHECK(ok.clean());
  CHECK_FALSE(bad.clean());
  CHECK_THROWS_AS(apply_bilinear(piece.symbol, f, band_limited(Grid::make(1, 32, 8.0), 0, 1, 1), 1.0),
                  InvalidGridError);
}

TEST_CASE("tilde operators", "[tilde]") {
  const Grid g = Grid::make(1, 128, 16.0);
  const Field f = band_limited(g, 0.0, 2.0, 14), h = band_limited(g, 0.0, 2.0, 15);
  const AnnularPiece constant{0, PieceFlavor::hormander, Symbol::constant(2, 2.0)};
  CHECK(max_abs(tilde_operator(constant, f, h, 0.9)) < 1e-12 * max_abs(f) * max_abs(h));

  const Symbol quad = Symbol::radial(2, {[](double r) { return r * r; }, [](double r) { return 2.0 * r; }},
                                     {0.0, 3.0}, "rho2");
  const AnnularPiece qp{0, PieceFlavor::hormander, quad};
  for (double t : {0.5, 1.0}) {
    const Field lhs = tilde_operator(qp, f, h, t);
    const Field rhs = 2.0 * apply_bilinear(quad, f, h, t);
    CHECK(max_abs(lhs - rhs) <= 1e-8 * max_abs(rhs));
  }
}

TEST_CASE("fundamental theorem of calculus in the dilation", "[tilde]") {
  const Grid g = Grid::make(1, 128, 16.0);
  const Field f = band_limited(g, 1.0, 2.0, 16), h = band_limited(g, 1.0, 2.0, 17);
  const AnnularPiece piece = dyadic_piece(bochner_riesz_symbol(1, 3.0), DyadicPartition::riesz(), 1);
  // B_s vanishes once the annulus, dilated by 1/s, lies beyond the bands.
  const double s_lo = piece.annulus().inner / (2.0 * std::sqrt(2.0)) * 0.99;
  const double t = 2.0 * s_lo;
  const DilationGrid sg = DilationGrid::log_midpoint(s_lo, t, 64);
  Field::Values integral = Field::Values::Zero(g.size());
  for (double s : sg.t_values()) integral += tilde_operator(piece, f, h, s).values() * sg.log_weight();
  const Field S = apply_bilinear(piece.symbol, f, h, t);
  std::vector<Index> strong;
  for (Index i = 0; i < g.size(); ++i)
    if (std::abs(S[i]) >= 0.1 * max_abs(S)) strong.push_back(i);
  REQUIRE(strong.size() >= 10);
  std::mt19937_64 rng(18);
  std::shuffle(strong.begin(), strong.end(), rng);
  for (int k = 0; k < 10; ++k) {
    const Index i = strong[static_cast<std::size_t>(k)];
    CHECK(std::abs(integral[i] - S[i]) <= 0.01 * std::abs(S[i]));
  }
}

TEST_CASE("g-functions", "[square]") {
  const Grid g = Grid::make(1, 128, 16.0);
  const Field f = band_limited(g, 1.0, 2.0, 19), h = band_limited(g, 1.0, 2.0, 20);
  const AnnularPiece piece = dyadic_piece(bochner_riesz_symbol(1, 3.0), DyadicPartition::riesz(), 2);
  const DilationRange eff = effective_dilation_range(piece.annulus(), spectral_band(f), spectral_band(h));
  REQUIRE(eff.t_lo < eff.t_hi);
  const DilationGrid sg = DilationGrid::log_midpoint(eff.t_lo, eff.t_hi, 128);

  CHECK(max_abs(g_function(piece, Field::zeros(g), h, sg)) == 0.0);
  // Dilations too small for the annulus to reach the bands.
  const DilationGrid below = DilationGrid::log_midpoint(0.5 * eff.t_lo * 0.5, 0.5 * eff.t_lo, 16);
  CHECK(max_abs(g_function(piece, f, h, below)) < 1e-12 * max_abs(f) * max_abs(h));

  Diagnostics clean, truncated;
  const Field G = g_function(piece, f, h, sg, &clean);
  CHECK(clean.clean());
  CHECK(max_abs(G) > 0.0);
  const double mid = std::sqrt(eff.t_lo * eff.t_hi);
  g_function(piece, f, h, DilationGrid::log_midpoint(mid, eff.t_hi, 64), &truncated);
  CHECK_FALSE(truncated.clean());
  CHECK_THROWS_AS(g_function(piece, f, h, DilationGrid::per_octave(0.5, 1.0, 4)), InvalidParameterError);
}

TEST_CASE("square-function domination", "[square]") {
  const Grid g = Grid::make(1, 128, 16.0);
  const AnnularPiece piece = dyadic_piece(bochner_riesz_symbol(1, 3.0), DyadicPartition::riesz(), 2);
  for (unsigned seed = 0; seed < 3; ++seed) {
    const Field f = band_limited(g, 0.5, 2.0, 30 + seed), h = band_limited(g, 0.5, 2.0, 40 + seed);
    const DilationRange eff = effective_dilation_range(piece.annulus(), spectral_band(f), spectral_band(h));
    const auto chk = square_function_check(piece, f, h, DilationGrid::log_midpoint(eff.t_lo, eff.t_hi, 256));
    CHECK(chk.holds);
    CHECK(chk.worst_excess <= 0.0);
  }
}

TEST_CASE("convolution kernels", "[kernel]") {
  const Grid freq = Grid::make(2, 64, 8.0);
  const Field K = kernel(Symbol::gaussian(2), freq);
  double err = 0.0;
  for (Index i = 0; i < K.size(); ++i)
    err = std::max(err, std::abs(K[i] - std::exp(-pi * K.grid().point(i).squaredNorm())));
  CHECK(err < 1e-8);
  const Field KB = kernel(bochner_riesz_symbol(1, 2.0), Grid::make(2, 128, 4.0));
  CHECK(KB.values().imag().abs().maxCoeff() < 1e-10 * max_abs(KB));
}

TEST_CASE("Hardy-Littlewood maximal function", "[hl]") {
  const Grid g = Grid::make(1, 128, 16.0);
  CHECK(rel_err(hl_maximal(Field::sample(g, [](const Point&) { return cd(-2.0, 0.0); })),
                Field::sample(g, [](const Point&) { return cd(2.0); })) < 1e-14);
  const Field f = random_field(g, 21);
  const Field M = hl_maximal(f);
  for (Index i = 0; i < g.size(); ++i) CHECK(M[i].real() >= std::abs(f[i]) - 1e-14);

  const Field ind = Field::sample(g, [](const Point& x) { return std::abs(x[0]) <= 0.5 ? 1.0 : 0.0; });
  const Index at = g.points / 2 + static_cast<Index>(std::lround(3.0 / g.spacing()));
  // Brute force over every radius k h.
  double best = 0.0;
  for (Index k = 1; k <= g.points / 2; ++k) {
    double sum = 0.0;
    int count = 0;
    for (Index j = 0; j < g.points; ++j)
      if (std::abs(j - at) <= k) {
        sum += std::abs(ind[j]);
        ++count;
      }
    best = std::max(best, sum / count);
  }
  const Field Mi = hl_maximal(ind);
  CHECK(Mi[at].real() == Approx(best).epsilon(1e-14));
  CHECK(std::abs(Mi[at].real() - 1.0 / 7.0) <= 1.0 / 7.0 * 2.0 * g.spacing());

  const Grid g2 = Grid::make(2, 32, 8.0);
  const Field f2 = random_field(g2, 22);
  const Field M2 = hl_maximal(f2);
  for (Index i = 0; i < g2.size(); ++i) CHECK(M2[i].real() >= std::abs(f2[i]) - 1e-14);
}
