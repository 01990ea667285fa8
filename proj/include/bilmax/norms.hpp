#pragma once

#include "bilmax/field.hpp"
#include "bilmax/symbol.hpp"

namespace bilmax {

/// (sum |f|^p h^dim)^{1/p}; p = infinity gives the max modulus.
double lp_norm(const Field& f, double p);

/// fft_inverse(w . fft_forward(f)) with w sampled on the dual grid of f.
Field apply_freq_multiplier(const Field& f, const Symbol& w);

/// (I - Delta)^{s/2} applied to samples through the transform of their grid.
Field bessel_potential(const Field& samples, double s);

// L^r norm of (I - Delta)^{s/2} m where m is sampled on freq_grid. The
// multiplier acts on the transform variable of the frequency grid.
double sobolev_norm(const Symbol& m, const Grid& freq_grid, double r, double s);

// (sum |m|^p h^dim)^{1/p} over the lattice h Z^dim, visiting only points in
// the bounded support of m.
double lp_norm_on_lattice(const Symbol& m, double spacing, double p);

// (int |m|^p) ^{1/p} for a radial symbol: adaptive Gauss-Kronrod in the radius
// over the support annulus times the area of the unit sphere.
double radial_lp_norm(const Symbol& m, double p);

/// Minimum number of samples required across a symbol's thinnest feature.
inline constexpr double kMinSamplesAcrossFeature = 8.0;

}  // namespace bilmax
