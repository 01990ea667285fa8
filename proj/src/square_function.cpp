#include "bilmax/square_function.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "bilmax/fft.hpp"
#include "bilmax/parallel.hpp"

namespace bilmax {

namespace {

struct Accumulated {
  Field root;
  Field sup;
};

// Squared moduli summed with weight, plus the pointwise sup, over sg.
Accumulated accumulate(const Symbol& m, const Field& f, const Field& g, const DilationGrid& sg,
                       Diagnostics* diag) {
  if (!f.grid().matches(g.grid())) throw InvalidGridError("f and g live on different grids");
  const Field F = fft_forward(f);
  const Field G = fft_forward(g);
  const auto& ss = sg.t_values();
  std::vector<Eigen::ArrayXd> squares(ss.size());
  parallel_for(ss.size(), [&](std::size_t i) {
    squares[i] = apply_bilinear_hat(m, F, G, ss[i]).values().abs2();
  });
  const Index size = f.grid().size();
  Eigen::ArrayXd total = Eigen::ArrayXd::Zero(size);
  Eigen::ArrayXd top = Eigen::ArrayXd::Zero(size);
  for (const auto& sq : squares) {
    total += sg.log_weight() * sq;
    top = top.max(sq);
  }
  if (diag && ss.size() >= 2) {
    const double whole = total.sum();
    const double edges = sg.log_weight() * (squares.front().sum() + squares.back().sum());
    if (whole > 0.0 && edges > 1e-6 * whole) {
      std::ostringstream os;
      os << "s-range [" << ss.front() << ", " << ss.back() << "] truncates " << m.name()
         << ": boundary nodes carry " << edges / whole << " of the total";
      diag->warn(os.str());
    }
  }
  return {Field(f.grid(), total.sqrt().cast<std::complex<double>>()),
          Field(f.grid(), top.sqrt().cast<std::complex<double>>())};
}

}  // namespace

Band spectral_band(const Field& f, double rel_tol) {
  const Field F = fft_forward(f);
  const Grid& dual = F.grid();
  const auto mod = F.modulus();
  const double top = mod.size() ? mod.maxCoeff() : 0.0;
  Band band{std::numeric_limits<double>::infinity(), 0.0};
  if (top == 0.0) return Band{0.0, 0.0};
  for (Index i = 0; i < dual.size(); ++i) {
    if (mod[i] <= rel_tol * top) continue;
    const double r = dual.point(i).norm();
    band.lo = std::min(band.lo, r);
    band.hi = std::max(band.hi, r);
  }
  return band;
}

DilationRange effective_dilation_range(const Annulus& annulus, const Band& band_f,
                                       const Band& band_g) {
  const double r_min = std::hypot(band_f.lo, band_g.lo);
  const double r_max = std::hypot(band_f.hi, band_g.hi);
  DilationRange range;
  range.t_lo = r_max > 0.0 ? annulus.inner / r_max : std::numeric_limits<double>::infinity();
  range.t_hi = r_min > 0.0 ? annulus.outer / r_min : std::numeric_limits<double>::infinity();
  return range;
}

Field g_function(const Symbol& m, const Field& f, const Field& g, const DilationGrid& sg,
                 Diagnostics* diag) {
  if (!sg.midpoint())
    throw InvalidParameterError("g-functions need a midpoint dilation grid");
  return accumulate(m, f, g, sg, diag).root;
}

Field g_function(const AnnularPiece& piece, const Field& f, const Field& g,
                 const DilationGrid& sg, Diagnostics* diag) {
  return g_function(piece.symbol, f, g, sg, diag);
}

Field g_tilde_function(const AnnularPiece& piece, const Field& f, const Field& g,
                       const DilationGrid& sg, Diagnostics* diag) {
  return g_function(radial_derivative_symbol(piece), f, g, sg, diag);
}

SquareFunctionCheck square_function_check(const AnnularPiece& piece, const Field& f,
                                          const Field& g, const DilationGrid& sg,
                                          double rel_tol) {
  if (!sg.midpoint())
    throw InvalidParameterError("square-function check needs a midpoint dilation grid");
  Accumulated plain = accumulate(piece.symbol, f, g, sg, nullptr);
  Accumulated tilde = accumulate(radial_derivative_symbol(piece), f, g, sg, nullptr);
  const Eigen::ArrayXd lhs = plain.sup.modulus().square();
  const Eigen::ArrayXd rhs = 2.0 * plain.root.modulus() * tilde.root.modulus();
  const double scale = std::max(rhs.maxCoeff(), std::numeric_limits<double>::min());
  SquareFunctionCheck out{plain.sup, plain.root, tilde.root, 0.0, true};
  double worst = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < lhs.size(); ++i) {
    worst = std::max(worst, (lhs[i] - rhs[i]) / scale);
    if (lhs[i] > (1.0 + rel_tol) * rhs[i] + 1e-9 * scale) out.holds = false;
  }
  out.worst_excess = worst;
  return out;
}

}  // namespace bilmax
