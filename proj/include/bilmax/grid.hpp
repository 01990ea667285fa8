#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <string>

#include "bilmax/errors.hpp"

namespace bilmax {

using Eigen::Index;

/// Upper bound on the number of axes a point carries (2n with n <= 4).
inline constexpr int kMaxAxes = 8;

template <typename Scalar>
using PointT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, kMaxAxes, 1>;
using Point = PointT<double>;

template <typename Scalar>
using ComplexPointT =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1, 0, kMaxAxes, 1>;
using ComplexPoint = ComplexPointT<double>;

using MultiIndex = Eigen::Matrix<Index, Eigen::Dynamic, 1, 0, kMaxAxes, 1>;

// Centered cube [-L/2, L/2)^dim sampled with N points per axis. Storage index
// i on an axis sits at coordinate (i - N/2) * h, so the origin is index N/2.
// Flat storage is row-major: the last axis varies fastest.
template <typename Scalar>
struct BasicGrid {
  int dim = 1;
  Index points = 2;
  Scalar extent = 1;

  static BasicGrid make(int dim, Index points, Scalar extent) {
    BasicGrid g{dim, points, extent};
    g.validate();
    return g;
  }

  void validate() const {
    if (dim < 1 || dim > kMaxAxes)
      throw InvalidGridError("grid dimension must be in [1, " +
                             std::to_string(kMaxAxes) + "], got " +
                             std::to_string(dim));
    if (points < 2 || points % 2 != 0)
      throw InvalidGridError("points per axis must be a positive even integer, got " +
                             std::to_string(points));
    if (!(extent > 0) || !std::isfinite(static_cast<double>(extent)))
      throw InvalidGridError("grid extent must be positive and finite");
  }

  Scalar spacing() const { return extent / static_cast<Scalar>(points); }
  Scalar freq_spacing() const { return Scalar(1) / extent; }
  Scalar nyquist() const { return static_cast<Scalar>(points) / (2 * extent); }
  Scalar cell_volume() const { return std::pow(spacing(), static_cast<Scalar>(dim)); }

  Index size() const {
    Index total = 1;
    for (int a = 0; a < dim; ++a) total *= points;
    return total;
  }

  Scalar coordinate(Index i) const {
    return static_cast<Scalar>(i - points / 2) * spacing();
  }

  /// Reciprocal grid: same N, spacing 1/L. dual().dual() recovers this grid.
  BasicGrid dual() const {
    return BasicGrid{dim, points, static_cast<Scalar>(points) / extent};
  }

  MultiIndex unravel(Index flat) const {
    MultiIndex idx(dim);
    for (int a = dim - 1; a >= 0; --a) {
      idx[a] = flat % points;
      flat /= points;
    }
    return idx;
  }

  Index ravel(const MultiIndex& idx) const {
    Index flat = 0;
    for (int a = 0; a < dim; ++a) flat = flat * points + idx[a];
    return flat;
  }

  PointT<Scalar> point(Index flat) const {
    PointT<Scalar> p(dim);
    for (int a = dim - 1; a >= 0; --a) {
      p[a] = coordinate(flat % points);
      flat /= points;
    }
    return p;
  }

  bool matches(const BasicGrid& other, Scalar rel_tol = Scalar(1e-12)) const {
    return dim == other.dim && points == other.points &&
           std::abs(extent - other.extent) <= rel_tol * std::abs(extent);
  }
};

using Grid = BasicGrid<double>;

/// Smallest even size >= n whose only prime factors are 2, 3, 5 and 7.
Index fft_friendly_size(Index n);

std::string describe(const Grid& grid);

}  // namespace bilmax
