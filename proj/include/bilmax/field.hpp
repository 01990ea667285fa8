#pragma once

#include <Eigen/Core>

#include <complex>
#include <utility>

#include "bilmax/grid.hpp"

namespace bilmax {

/// Complex samples on a grid. Immutable once constructed.
template <typename Scalar>
class BasicField {
 public:
  using Complex = std::complex<Scalar>;
  using Values = Eigen::Array<Complex, Eigen::Dynamic, 1>;

  BasicField(BasicGrid<Scalar> grid, Values values)
      : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (values_.size() != grid_.size())
      throw InvalidGridError("field has " + std::to_string(values_.size()) +
                             " values but its grid holds " +
                             std::to_string(grid_.size()));
  }

  static BasicField zeros(const BasicGrid<Scalar>& grid) {
    return BasicField(grid, Values::Zero(grid.size()));
  }

  /// Samples fn(point) at every grid node.
  template <typename Fn>
  static BasicField sample(const BasicGrid<Scalar>& grid, Fn&& fn) {
    grid.validate();
    Values v(grid.size());
    for (Index i = 0; i < grid.size(); ++i) v[i] = Complex(fn(grid.point(i)));
    return BasicField(grid, std::move(v));
  }

  const BasicGrid<Scalar>& grid() const { return grid_; }
  const Values& values() const { return values_; }
  Complex operator[](Index i) const { return values_[i]; }
  Index size() const { return values_.size(); }

  Eigen::Array<Scalar, Eigen::Dynamic, 1> modulus() const { return values_.abs(); }

 private:
  BasicGrid<Scalar> grid_;
  Values values_;
};

using Field = BasicField<double>;

namespace detail {
template <typename Scalar>
void require_same_grid(const BasicField<Scalar>& a, const BasicField<Scalar>& b) {
  if (!a.grid().matches(b.grid()))
    throw InvalidGridError("fields live on different grids");
}
}  // namespace detail

template <typename Scalar>
BasicField<Scalar> operator+(const BasicField<Scalar>& a, const BasicField<Scalar>& b) {
  detail::require_same_grid(a, b);
  return BasicField<Scalar>(a.grid(), a.values() + b.values());
}

template <typename Scalar>
BasicField<Scalar> operator-(const BasicField<Scalar>& a, const BasicField<Scalar>& b) {
  detail::require_same_grid(a, b);
  return BasicField<Scalar>(a.grid(), a.values() - b.values());
}

template <typename Scalar>
BasicField<Scalar> operator*(std::complex<Scalar> c, const BasicField<Scalar>& a) {
  return BasicField<Scalar>(a.grid(), c * a.values());
}

template <typename Scalar>
BasicField<Scalar> operator*(Scalar c, const BasicField<Scalar>& a) {
  return BasicField<Scalar>(a.grid(), c * a.values());
}

/// Pointwise product.
template <typename Scalar>
BasicField<Scalar> hadamard(const BasicField<Scalar>& a, const BasicField<Scalar>& b) {
  detail::require_same_grid(a, b);
  return BasicField<Scalar>(a.grid(), a.values() * b.values());
}

template <typename Scalar>
BasicField<Scalar> abs(const BasicField<Scalar>& a) {
  return BasicField<Scalar>(a.grid(), a.values().abs().template cast<std::complex<Scalar>>());
}

template <typename Scalar>
Scalar max_abs(const BasicField<Scalar>& a) {
  return a.size() == 0 ? Scalar(0) : a.values().abs().maxCoeff();
}

// Periodization is the discretization model, so test functions must have
// decayed by the time they reach the boundary faces of the cube.
template <typename Scalar>
bool decays_at_boundary(const BasicField<Scalar>& f, Scalar tol = Scalar(1e-12)) {
  const auto& g = f.grid();
  const Scalar scale = std::max(max_abs(f), std::numeric_limits<Scalar>::min());
  for (Index i = 0; i < f.size(); ++i) {
    const MultiIndex idx = g.unravel(i);
    bool on_face = false;
    for (int a = 0; a < g.dim; ++a)
      on_face = on_face || idx[a] == 0 || idx[a] == g.points - 1;
    if (on_face && std::abs(f[i]) > tol * scale) return false;
  }
  return true;
}

template <typename Scalar>
void require_boundary_decay(const BasicField<Scalar>& f, Scalar tol = Scalar(1e-12)) {
  if (!decays_at_boundary(f, tol))
    throw InvalidParameterError("field does not decay below tolerance at the grid boundary");
}

}  // namespace bilmax
