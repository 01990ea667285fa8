#include "bilmax/bilinear.hpp"

#include <algorithm>
#include <cmath>

#include "bilmax/fft.hpp"
#include "bilmax/norms.hpp"
#include "bilmax/parallel.hpp"

namespace bilmax {

namespace {

void require_pair(const Field& f, const Field& g) {
  if (!f.grid().matches(g.grid())) throw InvalidGridError("f and g live on different grids");
}

}  // namespace

Field apply_bilinear_hat(const Symbol& m, const Field& f_hat, const Field& g_hat, double t) {
  require_pair(f_hat, g_hat);
  const Grid& fg = f_hat.grid();
  const int n = fg.dim;
  if (m.freq_dim() != 2 * n)
    throw InvalidGridError("symbol dimension " + std::to_string(m.freq_dim()) +
                           " does not match 2n = " + std::to_string(2 * n));
  if (!(t > 0.0)) throw InvalidParameterError("dilation t must be positive");

  const Index N = fg.points;
  const Index side = fg.size();
  const double d = fg.spacing();
  const Annulus& supp = m.support();
  const bool limited = supp.bounded() || supp.inner > 0.0;
  const double lo2 = std::pow(supp.inner / t, 2), hi2 = std::pow(supp.outer / t, 2);
  const RadialProfile* radial = m.radial_profile();

  auto symbol_at = [&](const Point& p, double rho2) -> std::complex<double> {
    if (radial) return radial->value(t * std::sqrt(rho2));
    return m(Point(t * p));
  };

  Field::Values R = Field::Values::Zero(side);
  const auto& F = f_hat.values();
  const auto& G = g_hat.values();
  // Spectral values below 1e-15 of the peak are roundoff from band-limited
  // inputs; skipping them keeps the pair loop on the actual spectra.
  const double f_cut = 1e-15 * F.abs().maxCoeff();
  const double g_cut = 1e-15 * G.abs().maxCoeff();
  Point p(2 * n);
  MultiIndex ia(n), ib(n);
  for (Index a = 0; a < side; ++a) {
    if (std::abs(F[a]) <= f_cut) continue;
    double xi2 = 0.0;
    Index rest = a;
    for (int ax = n - 1; ax >= 0; --ax) {
      ia[ax] = rest % N;
      rest /= N;
      p[ax] = fg.coordinate(ia[ax]);
      xi2 += p[ax] * p[ax];
    }
    if (limited && xi2 > hi2) continue;

    auto accumulate = [&](Index b) {
      if (std::abs(G[b]) <= g_cut) return;
      double eta2 = 0.0;
      Index r2 = b, c = 0, mult = 1;
      for (int ax = n - 1; ax >= 0; --ax) {
        ib[ax] = r2 % N;
        r2 /= N;
        p[n + ax] = fg.coordinate(ib[ax]);
        eta2 += p[n + ax] * p[n + ax];
      }
      const double rho2 = xi2 + eta2;
      if (limited && (rho2 > hi2 || rho2 < lo2)) return;
      const std::complex<double> w = symbol_at(p, rho2);
      if (w == 0.0) return;
      for (int ax = n - 1; ax >= 0; --ax) {
        c += mult * ((ia[ax] + ib[ax] + N / 2) % N);
        mult *= N;
      }
      R[c] += w * F[a] * G[b];
    };

    if (n == 1 && limited) {
      // eta-intervals where the dilated annulus meets this xi row.
      const double outer = std::sqrt(std::max(0.0, hi2 - xi2));
      const double inner2 = lo2 - xi2;
      auto scan = [&](double lo, double hi) {
        const Index b0 = std::max<Index>(0, static_cast<Index>(std::floor(lo / d)) + N / 2 - 1);
        const Index b1 = std::min<Index>(N - 1, static_cast<Index>(std::ceil(hi / d)) + N / 2 + 1);
        for (Index b = b0; b <= b1; ++b) accumulate(b);
      };
      if (inner2 <= 0.0) {
        scan(-outer, outer);
      } else {
        const double inner = std::sqrt(inner2);
        scan(-outer, -inner);
        scan(inner, outer);
      }
    } else {
      for (Index b = 0; b < side; ++b) accumulate(b);
    }
  }
  R *= std::pow(d, n);
  return fft_inverse(Field(fg, std::move(R)));
}

Field apply_bilinear(const Symbol& m, const Field& f, const Field& g, double t,
                     Diagnostics* diag) {
  require_pair(f, g);
  check_dilation(m, f.grid(), t, diag);
  return apply_bilinear_hat(m, fft_forward(f), fft_forward(g), t);
}

BilinearResult maximal_operator(const Symbol& m, const Field& f, const Field& g,
                                const DilationGrid& tg, bool keep_per_t) {
  require_pair(f, g);
  if (tg.count() == 0) throw InvalidParameterError("empty dilation grid");
  const Field F = fft_forward(f);
  const Field G = fft_forward(g);
  const auto& ts = tg.t_values();
  std::vector<std::optional<Field>> moduli(ts.size());
  BilinearResult res{m.name(), ts, {}, Field::zeros(f.grid()), {}, {}, {}};
  res.l1_norms.resize(ts.size());
  res.linf_norms.resize(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    moduli[i] = abs(apply_bilinear_hat(m, F, G, ts[i]));
    res.l1_norms[i] = lp_norm(*moduli[i], 1.0);
    res.linf_norms[i] = max_abs(*moduli[i]);
  });
  Field::Values top = Field::Values::Zero(f.grid().size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    check_dilation(m, f.grid(), ts[i], &res.diagnostics);
    const auto& v = moduli[i]->values();
    for (Index k = 0; k < top.size(); ++k)
      if (v[k].real() > top[k].real()) top[k] = v[k];
    if (keep_per_t) res.per_t.push_back(std::move(*moduli[i]));
  }
  res.maximal = Field(f.grid(), std::move(top));
  return res;
}

Field tilde_operator(const AnnularPiece& piece, const Field& f, const Field& g, double t,
                     Diagnostics* diag) {
  return apply_bilinear(radial_derivative_symbol(piece), f, g, t, diag);
}

Field kernel(const Symbol& m, const Grid& freq_grid) { return fft_inverse(m.sample(freq_grid)); }

}  // namespace bilmax
