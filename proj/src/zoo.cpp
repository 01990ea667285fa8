#include "bilmax/zoo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bilmax/bessel.hpp"

namespace bilmax {

namespace {

constexpr double kOriginSeriesRadius = 1e-3;

Annulus intersect(const Annulus& a, const Annulus& b) {
  Annulus out{std::max(a.inner, b.inner), std::min(a.outer, b.outer)};
  if (out.outer < out.inner) out.outer = out.inner;
  return out;
}

}  // namespace

std::vector<std::string> DecayClassParams::warnings() const {
  std::vector<std::string> out;
  if (!decay_hypothesis()) {
    std::ostringstream os;
    os << "a = " << a << " does not exceed n/2 + 1 = " << n / 2.0 + 1.0;
    out.push_back(os.str());
  }
  if (!lambda_hypothesis()) {
    std::ostringstream os;
    os << "lambda = " << lambda << " does not exceed 1";
    out.push_back(os.str());
  }
  if (!(r > 1.0 && r <= 4.0)) {
    std::ostringstream os;
    os << "r = " << r << " lies outside (1, 4]";
    out.push_back(os.str());
  }
  if (!smoothness_hypothesis()) {
    std::ostringstream os;
    os << "s = " << s << " does not exceed 2n/r + 1 = " << 2.0 * n / r + 1.0;
    out.push_back(os.str());
  }
  return out;
}

DecayClassParams decay_class(int n, double a, double lambda, double r, double s) {
  if (n < 1) throw InvalidParameterError("dimension n must be >= 1");
  return DecayClassParams{n, a, n / 2 + 2, lambda, r, s};
}

Symbol m_alpha_symbol(int n, double alpha) {
  if (n < 1) throw InvalidParameterError("dimension n must be >= 1");
  const double nu = n + alpha - 1.0;
  if (nu < 0.0) throw DomainError("m_alpha needs n + alpha - 1 >= 0");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  // rho^{-nu} J_nu(2 pi rho) = (2 pi)^nu (J_nu(z) / z^nu), z = 2 pi rho.
  const double scale = std::pow(two_pi, nu);
  RadialProfile profile{
      [nu, scale](double rho) { return scale * bessel_j_scaled(nu, two_pi * rho); },
      [nu, scale](double rho) {
        if (rho < kOriginSeriesRadius)
          return -two_pi * scale * two_pi * rho * bessel_j_scaled(nu + 1.0, two_pi * rho);
        return -two_pi * bessel_j(nu + 1.0, two_pi * rho) / std::pow(rho, nu);
      }};
  std::ostringstream name;
  name << "m_alpha(n=" << n << ",alpha=" << alpha << ")";
  return Symbol::radial(2 * n, std::move(profile), {}, name.str())
      .with_decay_exponent(n + alpha - 0.5)
      .with_feature_width(0.25);
}

Symbol bochner_riesz_symbol(int n, double lambda) {
  if (n < 1) throw InvalidParameterError("dimension n must be >= 1");
  if (!(lambda > 0.0)) throw InvalidParameterError("Bochner-Riesz order must be positive");
  RadialProfile profile{
      [lambda](double rho) { return rho >= 1.0 ? 0.0 : std::pow(1.0 - rho * rho, lambda); },
      [lambda](double rho) {
        return rho >= 1.0 ? 0.0 : -2.0 * lambda * rho * std::pow(1.0 - rho * rho, lambda - 1.0);
      }};
  std::ostringstream name;
  name << "bochner_riesz(n=" << n << ",lambda=" << lambda << ")";
  return Symbol::radial(2 * n, std::move(profile), {0.0, 1.0}, name.str())
      .with_decay_exponent(lambda);
}

Symbol smooth_bump_symbol(int n, double radius) {
  if (n < 1) throw InvalidParameterError("dimension n must be >= 1");
  if (!(radius > 0.0)) throw InvalidParameterError("bump radius must be positive");
  RadialProfile profile{
      [radius](double rho) {
        const double u = rho / radius;
        return u >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - u * u));
      },
      [radius](double rho) {
        const double u = rho / radius;
        if (u >= 1.0) return 0.0;
        const double q = 1.0 - u * u;
        return -2.0 * u / (q * q * radius) * std::exp(1.0 - 1.0 / q);
      }};
  std::ostringstream name;
  name << "bump(n=" << n << ",radius=" << radius << ")";
  return Symbol::radial(2 * n, std::move(profile), {0.0, radius}, name.str())
      .with_feature_width(0.5 * radius);
}

std::string to_string(PieceFlavor flavor) {
  switch (flavor) {
    case PieceFlavor::hormander: return "hormander";
    case PieceFlavor::riesz: return "riesz";
    case PieceFlavor::riesz_rescaled: return "riesz_rescaled";
  }
  return "unknown";
}

AnnularPiece dyadic_piece(const Symbol& m, const DyadicPartition& partition, int j) {
  if (j < 0) throw InvalidParameterError("piece index must be >= 0");
  const Annulus support = intersect(m.support(), partition.annulus(j));
  const PieceFlavor flavor = partition.flavor() == PartitionFlavor::hormander
                                 ? PieceFlavor::hormander
                                 : PieceFlavor::riesz;
  const std::string name = m.name() + "_" + std::to_string(j);
  Symbol piece = [&] {
    if (const RadialProfile* prof = m.radial_profile()) {
      RadialProfile p{[prof = *prof, partition, j](double rho) {
                        const double w = partition.psi(j, rho);
                        return w == 0.0 ? 0.0 : prof.value(rho) * w;
                      },
                      {}};
      if (prof->derivative)
        p.derivative = [prof = *prof, partition, j](double rho) {
          const double w = partition.psi(j, rho);
          const double dw = partition.psi_derivative(j, rho);
          if (w == 0.0 && dw == 0.0) return 0.0;
          return prof.derivative(rho) * w + prof.value(rho) * dw;
        };
      return Symbol::radial(m.freq_dim(), std::move(p), support, name);
    }
    return Symbol::general(
        m.freq_dim(),
        [m, partition, j](const Point& z) {
          const double w = partition.psi(j, z.norm());
          return w == 0.0 ? Symbol::Complex(0.0) : m(z) * w;
        },
        support, name);
  }();
  if (auto a = m.decay_exponent()) piece = piece.with_decay_exponent(*a);
  return AnnularPiece{j, flavor, std::move(piece)};
}

std::vector<AnnularPiece> dyadic_pieces(const Symbol& m, const DyadicPartition& partition,
                                        int j_max, double freq_spacing) {
  if (j_max < 0) throw InvalidParameterError("j_max must be >= 0");
  if (freq_spacing > 0.0) {
    const Annulus top = partition.annulus(j_max);
    const double width = j_max == 0 ? top.outer : top.width();
    const double thinnest = partition.flavor() == PartitionFlavor::riesz && j_max > 0
                                ? std::ldexp(1.0, -j_max - 2)
                                : width;
    if (thinnest < 4.0 * freq_spacing)
      throw ResolutionError("piece " + std::to_string(j_max) + " has width " +
                            std::to_string(thinnest) + ", under 4 cells of spacing " +
                            std::to_string(freq_spacing));
  }
  std::vector<AnnularPiece> pieces;
  pieces.reserve(static_cast<std::size_t>(j_max) + 1);
  for (int j = 0; j <= j_max; ++j) pieces.push_back(dyadic_piece(m, partition, j));
  return pieces;
}

AnnularPiece rescale(const AnnularPiece& piece) {
  if (piece.flavor == PieceFlavor::riesz_rescaled) return piece;
  const int j = piece.j;
  const double up = std::ldexp(1.0, j);
  const double down = std::ldexp(1.0, -j);
  const Symbol& m = piece.symbol;
  Annulus support{m.support().inner * up, m.support().outer * up};
  const std::string name = m.name() + "_rescaled";
  Symbol out = [&] {
    if (const RadialProfile* prof = m.radial_profile()) {
      RadialProfile p{[v = prof->value, down](double rho) { return v(rho * down); }, {}};
      if (prof->derivative)
        p.derivative = [d = prof->derivative, down](double rho) { return down * d(rho * down); };
      return Symbol::radial(m.freq_dim(), std::move(p), support, name);
    }
    return Symbol::general(
        m.freq_dim(), [m, down](const Point& z) { return m(Point(z * down)); }, support, name);
  }();
  out = out.with_feature_width(m.feature_width() * up);
  if (auto a = m.decay_exponent()) out = out.with_decay_exponent(*a);
  return AnnularPiece{j, PieceFlavor::riesz_rescaled, std::move(out)};
}

Symbol radial_derivative_symbol(const Symbol& m) {
  const std::string name = "euler(" + m.name() + ")";
  if (const RadialProfile* prof = m.radial_profile(); prof && prof->derivative) {
    return Symbol::radial(m.freq_dim(),
                          {[d = prof->derivative](double rho) { return rho * d(rho); }, {}},
                          m.support(), name)
        .with_feature_width(m.feature_width());
  }
  return Symbol::general(
             m.freq_dim(), [m](const Point& z) { return m.euler_derivative(z); }, m.support(),
             name)
      .with_feature_width(m.feature_width());
}

Symbol radial_derivative_symbol(const AnnularPiece& piece) {
  return radial_derivative_symbol(piece.symbol);
}

}  // namespace bilmax
