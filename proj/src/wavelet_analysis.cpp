#include "bilmax/wavelet_analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <array>
#include <map>

#include "bilmax/parallel.hpp"

namespace bilmax {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

Index int_pow(Index base, int e) {
  Index out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

int half_dims(int dims) {
  if (dims % 2 != 0) throw InvalidParameterError("tensor analysis needs an even dimension 2n");
  return dims / 2;
}

struct MuRange {
  long first = 0;
  Index count = 0;
};

// W(i, mu - first) = weight 2^{gamma/2} psi_G(2^gamma x_i - mu).
SpMat axis_matrix(const WaveletSystem& sys, const std::vector<double>& coords, int gamma,
                  bool mother, double weight, const MuRange& range) {
  const double scale = std::ldexp(1.0, gamma);
  const double w = weight * std::pow(2.0, gamma / 2.0);
  const int len = sys.support_length();
  std::vector<Triplet> trips;
  trips.reserve(coords.size() * static_cast<std::size_t>(len + 1));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double t = scale * coords[i];
    const long lo = std::max<long>(static_cast<long>(std::ceil(t - len)), range.first);
    const long hi = std::min<long>(static_cast<long>(std::floor(t)), range.first + range.count - 1);
    for (long mu = lo; mu <= hi; ++mu) {
      const double v = sys.factor(mother, t - static_cast<double>(mu));
      if (v != 0.0)
        trips.emplace_back(static_cast<Index>(i), static_cast<Index>(mu - range.first), w * v);
    }
  }
  SpMat W(static_cast<Index>(coords.size()), range.count);
  W.setFromTriplets(trips.begin(), trips.end());
  return W;
}

// Kronecker product of per-axis matrices, first axis slowest.
SpMat tensor(const std::vector<const SpMat*>& factors) {
  SpMat out = *factors.front();
  for (std::size_t a = 1; a < factors.size(); ++a) {
    SpMat next = Eigen::kroneckerProduct(out, *factors[a]);
    out = std::move(next);
  }
  return out;
}

std::vector<double> lattice_coords(const Lattice& lat) {
  std::vector<double> c(static_cast<std::size_t>(lat.points));
  for (Index i = 0; i < lat.points; ++i) c[static_cast<std::size_t>(i)] = lat.coordinate(i);
  return c;
}

// Dense block of coefficients indexed by integer translations, row-major with
// the last axis fastest.
struct Block {
  int dims = 0;
  std::array<long, kMaxAxes> first{};
  std::array<Index, kMaxAxes> count{};
  std::vector<double> data;

  Index size() const {
    Index s = 1;
    for (int a = 0; a < dims; ++a) s *= count[static_cast<std::size_t>(a)];
    return s;
  }
};

constexpr Index kMaxAnalysisSamples = Index{1} << 27;

long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
long ceil_div(long a, long b) { return -floor_div(-a, b); }

// out(m) = sum_p f_p in(step m + p) along one axis.
Block filter_axis(const Block& in, int axis, const std::vector<double>& f, long step) {
  const auto ax = static_cast<std::size_t>(axis);
  const long len = static_cast<long>(f.size());
  const long lo = in.first[ax], hi = lo + static_cast<long>(in.count[ax]) - 1;
  Block out = in;
  out.first[ax] = ceil_div(lo - (len - 1), step);
  out.count[ax] = static_cast<Index>(floor_div(hi, step) - out.first[ax] + 1);
  Index outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a) outer *= in.count[static_cast<std::size_t>(a)];
  for (int a = axis + 1; a < in.dims; ++a) inner *= in.count[static_cast<std::size_t>(a)];
  out.data.assign(static_cast<std::size_t>(out.size()), 0.0);
  const Index cin = in.count[ax], cout = out.count[ax];
  constexpr Index kChunk = 4096;
  const Index chunks = (inner + kChunk - 1) / kChunk;
  parallel_for(static_cast<std::size_t>(outer * chunks), [&](std::size_t task) {
    const Index o = static_cast<Index>(task) / chunks;
    const Index c0 = (static_cast<Index>(task) % chunks) * kChunk;
    const Index c1 = std::min(inner, c0 + kChunk);
    const double* src = in.data.data() + o * cin * inner;
    double* dst = out.data.data() + o * cout * inner;
    for (Index k = 0; k < cout; ++k) {
      const long m = out.first[ax] + static_cast<long>(k);
      double* row = dst + k * inner;
      for (long p = 0; p < len; ++p) {
        const long idx = step * m + p - lo;
        if (idx < 0 || idx >= static_cast<long>(cin)) continue;
        const double w = f[static_cast<std::size_t>(p)];
        const double* srow = src + static_cast<Index>(idx) * inner;
        for (Index i = c0; i < c1; ++i) row[i] += w * srow[i];
      }
    }
  });
  return out;
}

// Real part of m at the points 2^{-J} i inside [lo, hi]^dims.
Block sample_block(const Symbol& m, int J, double lo, double hi, int dims) {
  const double scale = std::ldexp(1.0, J);
  const long i_lo = static_cast<long>(std::ceil(lo * scale - 1e-9));
  const long i_hi = static_cast<long>(std::floor(hi * scale + 1e-9));
  Block b;
  b.dims = dims;
  for (int a = 0; a < dims; ++a) {
    b.first[static_cast<std::size_t>(a)] = i_lo;
    b.count[static_cast<std::size_t>(a)] = static_cast<Index>(std::max(0L, i_hi - i_lo + 1));
  }
  if (static_cast<double>(std::max(0L, i_hi - i_lo + 1)) >
      std::pow(static_cast<double>(kMaxAnalysisSamples), 1.0 / dims))
    throw ResolutionError("analysis at level " + std::to_string(J) + " needs more than " +
                          std::to_string(kMaxAnalysisSamples) + " samples");
  b.data.assign(static_cast<std::size_t>(b.size()), 0.0);
  const Index P = b.count[0];
  if (P == 0) return b;
  const Index rest_size = b.size() / P;
  const Annulus& supp = m.support();
  const bool check = supp.bounded() || supp.inner > 0.0;
  const double h = 1.0 / scale;
  parallel_for(static_cast<std::size_t>(P), [&](std::size_t row) {
    Point p(dims);
    p[0] = static_cast<double>(i_lo + static_cast<long>(row)) * h;
    if (supp.bounded() && std::abs(p[0]) > supp.outer) return;
    double* dst = b.data.data() + static_cast<Index>(row) * rest_size;
    for (Index r = 0; r < rest_size; ++r) {
      Index rem = r;
      for (int a = dims - 1; a >= 1; --a) {
        p[a] = static_cast<double>(i_lo + static_cast<long>(rem % P)) * h;
        rem /= P;
      }
      if (check && !supp.contains(p.norm())) continue;
      dst[r] = m(p).real();
    }
  });
  return b;
}

void collect(const Block& b, int gamma, std::uint32_t mask, std::vector<CoeffTree::Entry>& out) {
  const Index total = b.size();
  for (Index flat = 0; flat < total; ++flat) {
    const double v = b.data[static_cast<std::size_t>(flat)];
    if (std::abs(v) < CoeffTree::kDropBelow) continue;
    WaveletIndex idx;
    idx.gamma = gamma;
    idx.mask = mask;
    idx.dims = b.dims;
    Index rem = flat;
    for (int a = b.dims - 1; a >= 0; --a) {
      const auto ax = static_cast<std::size_t>(a);
      idx.mu[ax] = static_cast<std::int32_t>(b.first[ax] + static_cast<long>(rem % b.count[ax]));
      rem /= b.count[ax];
    }
    out.emplace_back(idx, v);
  }
}

}  // namespace

Lattice Lattice::from_grid(const Grid& grid) {
  grid.validate();
  return Lattice{grid.dim, grid.points, grid.spacing(), grid.coordinate(0)};
}

Lattice Lattice::covering(int dims, double radius, int spacing_exponent) {
  const double h = std::ldexp(1.0, -spacing_exponent);
  const auto K = static_cast<Index>(std::ceil(radius / h));
  return Lattice{dims, 2 * K + 1, h, -static_cast<double>(K) * h};
}

CoeffTree analyze(const Symbol& m, const WaveletSystem& sys, int gamma_max,
                  const Lattice& lattice) {
  if (gamma_max < 0) throw InvalidParameterError("gamma_max must be >= 0");
  if (m.freq_dim() != lattice.dims)
    throw InvalidGridError("symbol and lattice dimensions differ");
  half_dims(lattice.dims);
  if (lattice.spacing > std::ldexp(1.0, -gamma_max - 2) * (1.0 + 1e-12))
    throw ResolutionError("lattice spacing " + std::to_string(lattice.spacing) +
                          " does not resolve level " + std::to_string(gamma_max) +
                          " (needs <= 2^{-gamma_max-2})");
  const int dims = lattice.dims;
  const int J = static_cast<int>(std::ceil(-std::log2(lattice.spacing) - 1e-9));

  double lo = lattice.coordinate(0), hi = lattice.coordinate(lattice.points - 1);
  if (m.support().bounded()) {
    lo = std::max(lo, -m.support().outer);
    hi = std::min(hi, m.support().outer);
  }

  // Scaling coefficients at level J: the integer samples of phi integrate
  // polynomials of degree <= k exactly against phi.
  std::vector<double> phi_int(static_cast<std::size_t>(sys.support_length()) + 1);
  for (std::size_t i = 0; i < phi_int.size(); ++i)
    phi_int[i] = sys.factor(false, static_cast<double>(i));
  Block c = sample_block(m, J, lo, hi, dims);
  const double norm = std::pow(2.0, -J * dims / 2.0);
  for (int a = 0; a < dims; ++a) c = filter_axis(c, a, phi_int, 1);
  for (double& v : c.data) v *= norm;

  std::vector<CoeffTree::Entry> all;
  for (int j = J; j >= 1; --j) {
    const int gamma = j - 1;
    if (gamma > gamma_max) {
      for (int a = 0; a < dims; ++a) c = filter_axis(c, a, sys.filter, 2);
      continue;
    }
    std::vector<Block> parts;
    parts.push_back(std::move(c));
    for (int a = 0; a < dims; ++a) {
      std::vector<Block> next;
      next.reserve(parts.size() * 2);
      for (const Block& b : parts) {
        next.push_back(filter_axis(b, a, sys.filter, 2));
        next.push_back(filter_axis(b, a, sys.highpass, 2));
      }
      parts = std::move(next);
    }
    // parts[i]: bit (dims-1-a) of i set when axis a took the high-pass filter.
    for (std::size_t i = 1; i < parts.size(); ++i) {
      std::uint32_t mask = 0;
      for (int a = 0; a < dims; ++a)
        if ((i >> (dims - 1 - a)) & 1u) mask |= 1u << a;
      collect(parts[i], gamma, mask, all);
    }
    c = std::move(parts[0]);
  }
  collect(c, 0, 0, all);
  return CoeffTree(dims, std::move(all));
}

CoeffTree analyze(const Symbol& m, const WaveletSystem& sys, int gamma_max, const Grid& grid) {
  return analyze(m, sys, gamma_max, Lattice::from_grid(grid));
}

CoeffTree analyze(const AnnularPiece& piece, const WaveletSystem& sys, int gamma_max,
                  int spacing_exponent) {
  const Symbol& m = piece.symbol;
  if (!m.support().bounded())
    throw InvalidParameterError("piece '" + m.name() + "' has unbounded support");
  const int p = std::max(spacing_exponent, gamma_max + 2);
  CoeffTree tree = analyze(m, sys, gamma_max, Lattice::covering(m.freq_dim(), m.support().outer, p));
  tree.set_j(piece.j);
  return tree;
}

Field reconstruct(const CoeffTree& tree, const WaveletSystem& sys, const Grid& grid) {
  grid.validate();
  if (grid.dim != tree.dims()) throw InvalidGridError("grid and tree dimensions differ");
  const int n = half_dims(tree.dims());
  const Lattice lat = Lattice::from_grid(grid);
  const std::vector<double> coords = lattice_coords(lat);
  const Index side = int_pow(grid.points, n);

  std::map<std::pair<int, std::uint32_t>, std::vector<const CoeffTree::Entry*>> groups;
  for (const auto& e : tree.entries()) groups[{e.first.gamma, e.first.mask}].push_back(&e);

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(side, side);
  for (const auto& [key, entries] : groups) {
    const auto [gamma, mask] = key;
    long first = entries.front()->first.mu[0], last = first;
    for (const auto* e : entries)
      for (int a = 0; a < tree.dims(); ++a) {
        first = std::min<long>(first, e->first.mu[static_cast<std::size_t>(a)]);
        last = std::max<long>(last, e->first.mu[static_cast<std::size_t>(a)]);
      }
    const MuRange range{first, static_cast<Index>(last - first + 1)};
    const SpMat W[2] = {axis_matrix(sys, coords, gamma, false, 1.0, range),
                        axis_matrix(sys, coords, gamma, true, 1.0, range)};
    std::vector<const SpMat*> xi_f, eta_f;
    for (int a = 0; a < n; ++a) {
      xi_f.push_back(&W[(mask >> a) & 1u]);
      eta_f.push_back(&W[(mask >> (n + a)) & 1u]);
    }
    const Index cside = int_pow(range.count, n);
    std::vector<Triplet> trips;
    for (const auto* e : entries) {
      Index r = 0, c = 0;
      for (int a = 0; a < n; ++a) {
        r = r * range.count + (e->first.mu[static_cast<std::size_t>(a)] - range.first);
        c = c * range.count + (e->first.mu[static_cast<std::size_t>(n + a)] - range.first);
      }
      trips.emplace_back(r, c, e->second);
    }
    SpMat A(cside, cside);
    A.setFromTriplets(trips.begin(), trips.end());
    const SpMat left = tensor(xi_f) * A;
    const SpMat right = tensor(eta_f);
    out += Eigen::MatrixXd(left * SpMat(right.transpose()));
  }

  Field::Values v(grid.size());
  for (Index r = 0; r < side; ++r)
    for (Index c = 0; c < side; ++c) v[r * side + c] = out(r, c);
  return Field(grid, std::move(v));
}

std::vector<double> sup_by_level(const CoeffTree& tree, int gamma_max, bool exclude_scaling) {
  std::vector<double> sup(static_cast<std::size_t>(gamma_max) + 1, 0.0);
  for (const auto& [idx, value] : tree.entries()) {
    if (idx.gamma > gamma_max) continue;
    if (exclude_scaling && idx.mask == 0) continue;
    auto& s = sup[static_cast<std::size_t>(idx.gamma)];
    s = std::max(s, std::abs(value));
  }
  return sup;
}

CoeffDecayProfile coeff_decay_profile(const std::vector<CoeffTree>& trees, double r, double s,
                                      int n, double lambda, int gamma_max, double tolerance) {
  if (trees.size() < 4) throw FitError("decay profile needs at least 4 values of j");
  if (gamma_max < 2) throw FitError("decay profile needs at least 3 levels");
  CoeffDecayProfile prof;
  for (int g = 0; g <= gamma_max; ++g) prof.gammas.push_back(g);
  for (const auto& t : trees) {
    prof.js.push_back(t.j());
    prof.sup.push_back(sup_by_level(t, gamma_max));
  }
  const double j_bound = -lambda;
  const double g_bound = -(s + n - 2.0 * n / r);

  // Joint least squares on (1, j, gamma).
  std::vector<double> js, gs, ys;
  for (std::size_t a = 0; a < trees.size(); ++a)
    for (int g = 0; g <= gamma_max; ++g) {
      const double v = prof.sup[a][static_cast<std::size_t>(g)];
      if (!(v > 0.0)) throw FitError("empty coefficient level in decay profile");
      js.push_back(prof.js[a]);
      gs.push_back(g);
      ys.push_back(std::log2(v));
    }
  Eigen::MatrixXd X(static_cast<Index>(ys.size()), 3);
  Eigen::VectorXd Y(static_cast<Index>(ys.size()));
  for (std::size_t i = 0; i < ys.size(); ++i) {
    X.row(static_cast<Index>(i)) << 1.0, js[i], gs[i];
    Y[static_cast<Index>(i)] = ys[i];
  }
  const Eigen::Vector3d beta = X.colPivHouseholderQr().solve(Y);
  const double rms = std::sqrt((X * beta - Y).squaredNorm() / static_cast<double>(ys.size()));
  auto joint = [&](std::string axis, const std::vector<double>& x, double slope, double other,
                   const std::vector<double>& other_x, double bound) {
    DecayFitReport rep;
    rep.axis = std::move(axis);
    rep.x = x;
    for (std::size_t i = 0; i < ys.size(); ++i)
      rep.log2_values.push_back(ys[i] - other * other_x[i]);
    rep.slope = slope;
    rep.intercept = beta[0];
    rep.residual_rms = rms;
    rep.bound = bound;
    rep.tolerance = tolerance;
    rep.verdict = rep.recompute_verdict();
    return rep;
  };
  prof.j_fit = joint("j", js, beta[1], beta[2], gs, j_bound);
  prof.gamma_fit = joint("gamma", gs, beta[2], beta[1], js, g_bound);

  for (int g = 0; g <= gamma_max; ++g) {
    std::vector<double> x, v;
    for (std::size_t a = 0; a < trees.size(); ++a) {
      x.push_back(prof.js[a]);
      v.push_back(prof.sup[a][static_cast<std::size_t>(g)]);
    }
    prof.j_slopes_at_gamma.push_back(
        fit_log2_slope("j@gamma=" + std::to_string(g), x, v, j_bound, tolerance));
  }
  for (std::size_t a = 0; a < trees.size(); ++a) {
    std::vector<double> x, v;
    for (int g = 0; g <= gamma_max; ++g) {
      x.push_back(g);
      v.push_back(prof.sup[a][static_cast<std::size_t>(g)]);
    }
    prof.gamma_slopes_at_j.push_back(
        fit_log2_slope("gamma@j=" + std::to_string(prof.js[a]), x, v, g_bound, tolerance));
  }
  return prof;
}

}  // namespace bilmax
