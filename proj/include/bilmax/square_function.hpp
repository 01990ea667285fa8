#pragma once

#include "bilmax/bilinear.hpp"

namespace bilmax {

/// Radial band lo <= |xi| <= hi carrying an input's spectrum.
struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

/// Smallest band containing every frequency where |f^| exceeds rel_tol max|f^|.
Band spectral_band(const Field& f, double rel_tol = 1e-12);

// Dilations s for which the annulus of the piece, dilated by 1/s, meets
// {(xi, eta): |xi| in band_f, |eta| in band_g}. Outside it B_s(f, g) = 0.
DilationRange effective_dilation_range(const Annulus& annulus, const Band& band_f,
                                       const Band& band_g);

/// (int |S_s(f,g)|^2 ds/s)^{1/2} by the midpoint rule of sg.
Field g_function(const Symbol& m, const Field& f, const Field& g, const DilationGrid& sg,
                 Diagnostics* diag = nullptr);
Field g_function(const AnnularPiece& piece, const Field& f, const Field& g,
                 const DilationGrid& sg, Diagnostics* diag = nullptr);
/// g_function of the Euler derivative of the piece.
Field g_tilde_function(const AnnularPiece& piece, const Field& f, const Field& g,
                       const DilationGrid& sg, Diagnostics* diag = nullptr);

struct SquareFunctionCheck {
  Field sup_b;      ///< sup_s |B_s| over the nodes of sg
  Field g;          ///< G
  Field g_tilde;    ///< G~
  double worst_excess = 0.0;  ///< max of (sup_b^2 - rhs) / max(rhs)
  bool holds = false;
};

/// (sup_s |B_s|)^2 <= (1 + rel_tol) 2 G G~ + 1e-9 max(2 G G~) at every grid point.
SquareFunctionCheck square_function_check(const AnnularPiece& piece, const Field& f,
                                          const Field& g, const DilationGrid& sg,
                                          double rel_tol = 0.02);

}  // namespace bilmax
