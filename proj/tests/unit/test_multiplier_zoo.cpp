#include "catch_amalgamated.hpp"

#include <bilmax/bessel.hpp>
#include <bilmax/norms.hpp>
#include <bilmax/zoo.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace bilmax;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

double series_j0(double z) {
  long double term = 1.0L, sum = 1.0L;
  const long double q = -(long double)z * z / 4.0L;
  for (int k = 1; k < 50; ++k) {
    term *= q / ((long double)k * k);
    sum += term;
  }
  return static_cast<double>(sum);
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Point radial_point(int dim, double rho, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Point p(dim);
  for (int a = 0; a < dim; ++a) p[a] = nd(rng);
  return Point(p * (rho / p.norm()));
}

}  // namespace

TEST_CASE("Bessel function special values", "[bessel]") {
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_j(1.0, 0.0) == 0.0);
  double lo = 2.0, hi = 3.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (series_j0(lo) * series_j0(mid) <= 0.0 ? hi : lo) = mid;
  }
  CHECK(std::abs(0.5 * (lo + hi) - 2.404825557695773) < 1e-12);
  CHECK(std::abs(bessel_j(0.0, 2.404825557695773)) < 1e-9);
  CHECK_THROWS_AS(bessel_j(-0.5, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(1.0, -1.0), DomainError);
}

TEST_CASE("Bessel function matches an independent implementation", "[bessel]") {
  double worst = 0.0;
  for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 2.3, 3.0, 4.75, 7.0}) {
    for (double z = 0.0; z <= 200.0; z += 0.173) {
      worst = std::max(worst, std::abs(bessel_j(nu, z) - boost::math::cyl_bessel_j(nu, z)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("scaled Bessel function is continuous at the origin", "[bessel]") {
  for (double nu : {0.0, 1.0, 2.5}) {
    const double limit = 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
    CHECK(bessel_j_scaled(nu, 0.0) == Approx(limit).epsilon(1e-14));
    CHECK(bessel_j_scaled(nu, 1e-4) == Approx(limit).epsilon(1e-8));
    CHECK(bessel_j_scaled(nu, 3.0) ==
          Approx(boost::math::cyl_bessel_j(nu, 3.0) / std::pow(3.0, nu)).epsilon(1e-10));
  }
}

TEST_CASE("m_alpha values at the origin", "[zoo]") {
  const Point o1 = Point::Zero(2), o2 = Point::Zero(4);
  CHECK(std::abs(m_alpha_symbol(1, 0.0)(o1) - 1.0) < 1e-15);
  CHECK(std::abs(m_alpha_symbol(2, 0.0)(o2) - pi) < 1e-14);
  const double nu = 1.0 + 0.5 - 1.0;
  CHECK(std::abs(m_alpha_symbol(1, 0.5)(o1) - std::pow(pi, nu) / std::tgamma(nu + 1.0)) < 1e-14);
  CHECK_THROWS_AS(m_alpha_symbol(1, -0.5), DomainError);
}

TEST_CASE("m_alpha for n = 1, alpha = 0 is the circle average transform", "[zoo]") {
  const Symbol m = m_alpha_symbol(1, 0.0);
  const int nodes = 4096;
  auto circle = [&](double r) {
    double acc = 0.0;
    for (int k = 0; k < nodes; ++k) acc += std::cos(2.0 * pi * r * std::cos(2.0 * pi * k / nodes));
    return acc / nodes;
  };
  const double c = m.radial_value(1.0) / circle(1.0);
  double worst = 0.0;
  for (double r = 0.0; r <= 8.0; r += 0.05) worst = std::max(worst, std::abs(m.radial_value(r) - c * circle(r)));
  CHECK(c == Approx(1.0).epsilon(1e-12));
  CHECK(worst < 1e-8);
}

TEST_CASE("m_alpha decays like |zeta|^{-(n + alpha - 1/2)}", "[zoo]") {
  for (auto [n, alpha] : {std::pair{1, 0.0}, std::pair{1, 1.0}, std::pair{2, 0.5}}) {
    const Symbol m = m_alpha_symbol(n, alpha);
    REQUIRE(m.decay_exponent().has_value());
    const double a = *m.decay_exponent();
    CHECK(a == n + alpha - 0.5);
    double near = 0.0, all = 0.0;
    for (double r = 1.0; r <= 100.0; r += 0.01) {
      const double v = std::abs(m.radial_value(r)) * std::pow(r, a);
      all = std::max(all, v);
      if (r <= 10.0) near = std::max(near, v);
    }
    CHECK(all <= 1.05 * near);
    double faster = 0.0;
    for (double r = 90.0; r <= 100.0; r += 0.01)
      faster = std::max(faster, std::abs(m.radial_value(r)) * std::pow(r, a + 0.25));
    CHECK(faster > 2.0 * near);
  }
}

TEST_CASE("Bochner-Riesz symbol values", "[zoo]") {
  const Symbol m = bochner_riesz_symbol(1, 2.0);
  CHECK(m(Point::Zero(2)) == std::complex<double>(1.0));
  CHECK(m(Point::Unit(2, 0)) == std::complex<double>(0.0));
  CHECK(std::abs(m(Point(Point::Unit(2, 1) * 0.5)) - 0.5625) < 1e-15);
  CHECK(m(Point(Point::Ones(2))) == std::complex<double>(0.0));
  CHECK_THROWS_AS(bochner_riesz_symbol(1, 0.0), InvalidParameterError);
}

TEST_CASE("decay class flags are recorded without refusing", "[zoo]") {
  const auto ok = decay_class(1, 2.0, 3.0, 4.0, 2.6);
  CHECK(ok.warnings().empty());
  CHECK(ok.derivative_order_checked == 2);
  const auto bad = decay_class(1, 1.0, 0.5, 4.0, 1.0);
  CHECK_FALSE(bad.decay_hypothesis());
  CHECK_FALSE(bad.lambda_hypothesis());
  CHECK_FALSE(bad.smoothness_hypothesis());
  CHECK(bad.warnings().size() == 3);
}

TEST_CASE("smooth step is a C-infinity transition", "[partition]") {
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(0.5) == Approx(0.5).epsilon(1e-15));
  for (double t = 0.01; t < 1.0; t += 0.01) {
    CHECK(smooth_step(t) + smooth_step(1.0 - t) == Approx(1.0).epsilon(1e-14));
    const double fd = (smooth_step(t + 1e-6) - smooth_step(t - 1e-6)) / 2e-6;
    CHECK(smooth_step_derivative(t) == Approx(fd).epsilon(1e-6).margin(1e-9));
  }
}

TEST_CASE("partitions sum to one on the covered region", "[partition]") {
  std::mt19937_64 rng(42);
  for (auto part : {DyadicPartition::hormander(), DyadicPartition::riesz()}) {
    const int J = 8;
    const double R = part.covered_radius(J);
    std::uniform_real_distribution<double> ud(0.0, R);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const double rho = ud(rng);
      double sum = 0.0;
      for (int j = 0; j <= J; ++j) sum += part.psi(j, rho);
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("Hormander partial sums telescope", "[partition]") {
  const auto part = DyadicPartition::hormander();
  CHECK(part.phi_hat(0.0) == 1.0);
  CHECK(part.phi_hat(1.0) == 1.0);
  CHECK(part.phi_hat(2.0) == 0.0);
  for (int J : {0, 2, 5})
    for (double rho = 0.0; rho < std::ldexp(1.0, J + 3); rho += 0.0137) {
      double sum = 0.0;
      for (int j = 0; j <= J; ++j) sum += part.psi(j, rho);
      CHECK(std::abs(sum - part.phi_hat(std::ldexp(rho, -J - 1))) < 1e-13);
    }
}

TEST_CASE("partition pieces vanish outside their annuli", "[partition]") {
  std::mt19937_64 rng(7);
  for (auto part : {DyadicPartition::hormander(), DyadicPartition::riesz()}) {
    for (int j = 0; j <= 8; ++j) {
      const Annulus a = part.annulus(j);
      const double top = part.flavor() == PartitionFlavor::riesz ? 1.5 : std::ldexp(1.0, j + 4);
      std::uniform_real_distribution<double> ud(0.0, top);
      int checked = 0;
      while (checked < 10000) {
        const double rho = ud(rng);
        if (a.contains(rho)) continue;
        ++checked;
        REQUIRE(std::abs(part.psi(j, rho)) < 1e-12);
      }
    }
  }
}

TEST_CASE("annular pieces vanish outside their declared annulus", "[zoo]") {
  std::mt19937_64 rng(8);
  const Symbol br = bochner_riesz_symbol(1, 3.0);
  const Symbol ma = m_alpha_symbol(1, 1.0);
  std::vector<AnnularPiece> pieces;
  for (int j = 0; j <= 6; ++j) {
    pieces.push_back(dyadic_piece(br, DyadicPartition::riesz(), j));
    pieces.push_back(rescale(pieces.back()));
    pieces.push_back(dyadic_piece(ma, DyadicPartition::hormander(), j));
  }
  for (const auto& piece : pieces) {
    const Annulus& a = piece.annulus();
    const double top = std::isfinite(a.outer) ? 2.0 * a.outer : 2.0 * a.inner + 4.0;
    std::uniform_real_distribution<double> ud(0.0, top);
    int checked = 0;
    while (checked < 10000) {
      const double rho = ud(rng);
      if (a.contains(rho)) continue;
      ++checked;
      REQUIRE(std::abs(piece.symbol(radial_point(2, rho, rng))) < 1e-12);
    }
  }
}

TEST_CASE("dyadic pieces sum back to the symbol", "[zoo]") {
  const Symbol br = bochner_riesz_symbol(1, 2.0);
  const auto riesz = dyadic_pieces(br, DyadicPartition::riesz(), 9);
  const Symbol ma = m_alpha_symbol(1, 0.5);
  const auto horm = dyadic_pieces(ma, DyadicPartition::hormander(), 5);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 2000; ++k) {
    std::uniform_real_distribution<double> u1(0.0, DyadicPartition::riesz().covered_radius(9));
    Point z = radial_point(2, u1(rng), rng);
    std::complex<double> sum = 0.0;
    for (const auto& p : riesz) sum += p.symbol(z);
    REQUIRE(std::abs(sum - br(z)) < 1e-10);
    std::uniform_real_distribution<double> u2(0.0, DyadicPartition::hormander().covered_radius(5));
    z = radial_point(2, u2(rng), rng);
    sum = 0.0;
    for (const auto& p : horm) sum += p.symbol(z);
    REQUIRE(std::abs(sum - ma(z)) < 1e-10);
  }
  CHECK(std::abs(dyadic_piece(Symbol::constant(2, 1.0), DyadicPartition::hormander(), 0)
                     .symbol(Point::Zero(2)) - 1.0) < 1e-15);
}

TEST_CASE("dyadic pieces refuse unresolved annuli", "[zoo]") {
  const Symbol br = bochner_riesz_symbol(1, 2.0);
  CHECK_NOTHROW(dyadic_pieces(br, DyadicPartition::riesz(), 5, 1.0 / 1024));
  CHECK_THROWS_AS(dyadic_pieces(br, DyadicPartition::riesz(), 8, 1.0 / 1024), ResolutionError);
}

TEST_CASE("rescaled pieces satisfy the dilation identity", "[zoo]") {
  const Symbol br = bochner_riesz_symbol(1, 3.0);
  std::mt19937_64 rng(11);
  for (int j = 1; j <= 6; ++j) {
    const AnnularPiece mj = dyadic_piece(br, DyadicPartition::riesz(), j);
    const AnnularPiece Mj = rescale(mj);
    CHECK(Mj.flavor == PieceFlavor::riesz_rescaled);
    CHECK(Mj.annulus().inner == Approx(std::ldexp(mj.annulus().inner, j)));
    const double scale = std::ldexp(1.0, j);
    std::uniform_real_distribution<double> ud(mj.annulus().inner, mj.annulus().outer);
    double gscale = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double r = mj.annulus().inner + mj.annulus().width() * k / 1000.0;
      gscale = std::max(gscale, mj.symbol.gradient(Point(Point::Unit(2, 0) * r)).norm());
    }
    for (int k = 0; k < 100; ++k) {
      const Point z = radial_point(2, ud(rng), rng);
      const Point Z = z * scale;
      CHECK(std::abs(Mj.symbol(Z) - mj.symbol(z)) < 1e-12);
      // grad m_j(z) = 2^j grad M_j(2^j z), with grad M_j by central differences.
      const double h = 1e-5 * Mj.annulus().width();
      for (int a = 0; a < 2; ++a) {
        Point zp = Z, zm = Z;
        zp[a] += h;
        zm[a] -= h;
        const std::complex<double> fd = (Mj.symbol(zp) - Mj.symbol(zm)) / (2.0 * h);
        const std::complex<double> g = mj.symbol.gradient(z)[a];
        CHECK(std::abs(g - scale * fd) <= 1e-6 * gscale);
      }
    }
  }
}

TEST_CASE("radial derivative symbols", "[zoo]") {
  const Symbol quad = Symbol::general(
      2, [](const Point& z) { return std::complex<double>(z.squaredNorm()); }, {0.0, 4.0}, "r2");
  const Symbol dq = radial_derivative_symbol(quad);
  for (double r : {0.3, 1.0, 2.5}) {
    const Point z(Point::Unit(2, 0) * r);
    CHECK(std::abs(dq(z) - 2.0 * r * r) < 1e-6 * r * r);
  }
  const Symbol dc = radial_derivative_symbol(Symbol::constant(2, 3.0));
  CHECK(std::abs(dc(Point(Point::Ones(2)))) < 1e-12);
  const Symbol dbr = radial_derivative_symbol(bochner_riesz_symbol(1, 2.0));
  CHECK(std::abs(dbr(Point(Point::Unit(2, 1) * 0.5)) + 0.75) < 1e-14);
  const AnnularPiece piece = dyadic_piece(bochner_riesz_symbol(1, 2.0), DyadicPartition::riesz(), 3);
  const Symbol dp = radial_derivative_symbol(piece);
  const double rho = 0.9;
  const double fd = (piece.symbol.radial_value(rho + 1e-7) - piece.symbol.radial_value(rho - 1e-7)) / 2e-7;
  CHECK(dp.radial_value(rho) == Approx(rho * fd).epsilon(1e-6));
}

TEST_CASE("Bochner-Riesz piece derivatives scale like 2^{-j(lambda - k)}", "[zoo]") {
  const double lambda = 3.0;
  const Symbol br = bochner_riesz_symbol(1, lambda);
  for (int order = 0; order <= 2; ++order) {
    std::vector<double> js, logs;
    for (int j = 2; j <= 7; ++j) {
      const AnnularPiece p = dyadic_piece(br, DyadicPartition::riesz(), j);
      const Annulus a = p.annulus();
      const double h = a.width() * 1e-4;
      auto f = [&](double r) { return p.symbol.radial_value(r); };
      double worst = 0.0;
      for (int k = 0; k <= 4000; ++k) {
        const double r = a.inner + a.width() * k / 4000.0;
        double v = f(r);
        if (order == 1) v = (f(r + h) - f(r - h)) / (2 * h);
        if (order == 2) v = (f(r + h) - 2 * f(r) + f(r - h)) / (h * h);
        worst = std::max(worst, std::abs(v));
      }
      js.push_back(j);
      logs.push_back(std::log2(worst));
    }
    CHECK(std::abs(slope(js, logs) + (lambda - order)) <= 0.25);
  }
}

TEST_CASE("L2 norms of Bochner-Riesz pieces decay like 2^{-j(lambda + 1/2)}", "[zoo]") {
  const double lambda = 2.0;
  const Symbol br = bochner_riesz_symbol(1, lambda);
  const auto part = DyadicPartition::riesz();
  std::vector<double> js, lattice, quad;
  for (int j = 3; j <= 8; ++j) {
    const AnnularPiece p = dyadic_piece(br, part, j);
    const Annulus a = p.annulus();
    auto integrand = [&](double r) {
      const double v = std::pow(1.0 - r * r, lambda) * part.psi(j, r);
      return v * v * 2.0 * pi * r;
    };
    const double q = std::sqrt(
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, a.inner, a.outer, 15, 1e-13));
    const double l = lp_norm_on_lattice(p.symbol, std::ldexp(1.0, -j) / 32.0, 2.0);
    CHECK(l == Approx(q).epsilon(2e-3));
    js.push_back(j);
    lattice.push_back(std::log2(l));
    quad.push_back(std::log2(q));
  }
  CHECK(std::abs(slope(js, quad) + (lambda + 0.5)) <= 0.15);
  CHECK(std::abs(slope(js, lattice) + (lambda + 0.5)) <= 0.15);
}

TEST_CASE("radial L2 norms agree with a composite Simpson rule", "[zoo]") {
  const auto part = DyadicPartition::riesz();
  for (double lambda : {2.0, 3.0}) {
    const Symbol br = bochner_riesz_symbol(1, lambda);
    for (int j = 3; j <= 8; ++j) {
      const AnnularPiece p = dyadic_piece(br, part, j);
      const Annulus a = p.annulus();
      const int cells = 20000;
      const double h = (a.outer - a.inner) / cells;
      double acc = 0.0;
      for (int i = 0; i <= cells; ++i) {
        const double r = a.inner + i * h;
        const double v = std::pow(1.0 - r * r, lambda) * part.psi(j, r);
        const double w = (i == 0 || i == cells) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * v * v * r;
      }
      const double simpson = std::sqrt(2.0 * pi * acc * h / 3.0);
      CHECK(radial_lp_norm(p.symbol, 2.0) == Approx(simpson).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(radial_lp_norm(bochner_riesz_symbol(1, 2.0), 0.5), InvalidParameterError);
  CHECK_THROWS_AS(radial_lp_norm(Symbol::gaussian(2), 2.0), InvalidParameterError);
}

TEST_CASE("smooth bump symbol", "[zoo]") {
  const Symbol b = smooth_bump_symbol(1, 2.0);
  CHECK(b.radial_value(0.0) == Approx(1.0));
  CHECK(b.radial_value(2.0) == 0.0);
  CHECK(b.radial_value(1.0) == Approx(std::exp(1.0 - 1.0 / 0.75)));
  for (double r : {0.3, 1.0, 1.7, 1.95}) {
    const double e = 1e-6;
    const double fd = (b.radial_value(r + e) - b.radial_value(r - e)) / (2.0 * e);
    CHECK(b.radial_profile()->derivative(r) == Approx(fd).epsilon(1e-6).margin(1e-9));
  }
  CHECK(b.support().outer == 2.0);
}
