#pragma once

#include <optional>
#include <vector>

#include "bilmax/dilation_grid.hpp"
#include "bilmax/field.hpp"
#include "bilmax/symbol.hpp"
#include "bilmax/zoo.hpp"

namespace bilmax {

// S_t(f,g)(x) = int m(t xi, t eta) f^(xi) g^(eta) e^{2 pi i x.(xi+eta)} d xi d eta
// on the common n-dimensional grid of f and g. The double sum over frequency
// pairs is folded onto xi + eta (exact modulo the grid period) and finished
// with one n-dimensional inverse transform.
Field apply_bilinear(const Symbol& m, const Field& f, const Field& g, double t,
                     Diagnostics* diag = nullptr);

/// Same as apply_bilinear with transforms of f and g supplied.
Field apply_bilinear_hat(const Symbol& m, const Field& f_hat, const Field& g_hat, double t);

struct BilinearResult {
  std::string symbol;
  std::vector<double> t_values;
  /// |S_t| is kept only when requested.
  std::vector<Field> per_t;
  Field maximal;
  std::vector<double> l1_norms;
  std::vector<double> linf_norms;
  Diagnostics diagnostics;
  /// sup over a finite t-grid bounds the true maximal function from below.
  static constexpr const char* kCaveat = "supremum over a finite dilation grid (lower bound)";
};

BilinearResult maximal_operator(const Symbol& m, const Field& f, const Field& g,
                                const DilationGrid& tg, bool keep_per_t = false);

/// apply_bilinear with the Euler derivative (s xi, s eta) . grad m.
Field tilde_operator(const AnnularPiece& piece, const Field& f, const Field& g, double t,
                     Diagnostics* diag = nullptr);

/// Inverse 2n-dimensional transform of the samples of m on freq_grid.
Field kernel(const Symbol& m, const Grid& freq_grid);

/// Hardy-Littlewood maximal function over balls of radius 0, h, 2h, ..., L/2;
/// each ball is the set of grid points within the radius.
Field hl_maximal(const Field& f);

}  // namespace bilmax
