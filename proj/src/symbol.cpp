#include "bilmax/symbol.hpp"

#include <cmath>
#include <numbers>

#include "bilmax/parallel.hpp"

namespace bilmax {

Symbol Symbol::general(int freq_dim, Evaluator eval, Annulus support, std::string name) {
  if (freq_dim < 1 || freq_dim > kMaxAxes)
    throw InvalidParameterError("symbol dimension out of range");
  Symbol s;
  s.freq_dim_ = freq_dim;
  s.eval_ = std::move(eval);
  s.support_ = support;
  s.name_ = std::move(name);
  return s;
}

Symbol Symbol::radial(int freq_dim, RadialProfile profile, Annulus support,
                      std::string name) {
  auto value = profile.value;
  Symbol s = general(
      freq_dim, [value](const Point& z) { return Complex(value(z.norm()), 0.0); },
      support, std::move(name));
  s.radial_ = std::move(profile);
  return s;
}

Symbol Symbol::constant(int freq_dim, Complex value) {
  if (value.imag() == 0.0) {
    const double v = value.real();
    return radial(freq_dim, {[v](double) { return v; }, [](double) { return 0.0; }}, {},
                  "constant");
  }
  return general(freq_dim, [value](const Point&) { return value; }, {}, "constant");
}

Symbol Symbol::gaussian(int freq_dim) {
  constexpr double pi = std::numbers::pi;
  Symbol s = radial(freq_dim,
                    {[](double r) { return std::exp(-pi * r * r); },
                     [](double r) { return -2.0 * pi * r * std::exp(-pi * r * r); }},
                    {}, "gaussian");
  s.feature_width_ = 0.25;
  return s;
}

Symbol::Complex Symbol::operator()(const Point& zeta) const { return eval_(zeta); }

double Symbol::radial_value(double rho) const {
  if (!radial_) throw InvalidParameterError("symbol '" + name_ + "' is not radial");
  return radial_->value(rho);
}

double Symbol::fd_step() const {
  const double scale = support_.bounded() ? support_.outer : 1.0;
  return 1e-5 * std::max(scale, 1e-3);
}

ComplexPoint Symbol::gradient(const Point& zeta) const {
  ComplexPoint grad(zeta.size());
  if (radial_ && radial_->derivative) {
    const double rho = zeta.norm();
    if (rho == 0.0) return ComplexPoint::Zero(zeta.size());
    const double d = radial_->derivative(rho);
    for (Index a = 0; a < zeta.size(); ++a) grad[a] = d * zeta[a] / rho;
    return grad;
  }
  const double h = fd_step();
  for (Index a = 0; a < zeta.size(); ++a) {
    Point plus = zeta, minus = zeta;
    plus[a] += h;
    minus[a] -= h;
    grad[a] = (eval_(plus) - eval_(minus)) / (2.0 * h);
  }
  return grad;
}

Symbol::Complex Symbol::euler_derivative(const Point& zeta) const {
  if (radial_ && radial_->derivative) {
    const double rho = zeta.norm();
    return rho == 0.0 ? Complex(0.0) : Complex(rho * radial_->derivative(rho));
  }
  const ComplexPoint g = gradient(zeta);
  Complex acc = 0.0;
  for (Index a = 0; a < zeta.size(); ++a) acc += zeta[a] * g[a];
  return acc;
}

double Symbol::feature_width() const {
  if (feature_width_) return *feature_width_;
  if (support_.bounded()) return support_.width();
  return 1.0;
}

Field Symbol::sample(const Grid& grid) const {
  grid.validate();
  if (grid.dim != freq_dim_)
    throw InvalidGridError("symbol of dimension " + std::to_string(freq_dim_) +
                           " sampled on a grid of dimension " + std::to_string(grid.dim));
  if (cache_ && cache_->grid().matches(grid)) return *cache_;
  Field::Values v(grid.size());
  const Index rows = grid.dim == 1 ? 1 : grid.size() / grid.points;
  const Index row_len = grid.size() / rows;
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t r) {
    const Index base = static_cast<Index>(r) * row_len;
    for (Index i = base; i < base + row_len; ++i) {
      const Point p = grid.point(i);
      if (support_.bounded() || support_.inner > 0.0) {
        const double rho = p.norm();
        if (!support_.contains(rho)) {
          v[i] = 0.0;
          continue;
        }
      }
      v[i] = eval_(p);
    }
  });
  return Field(grid, std::move(v));
}

Symbol Symbol::with_samples(const Grid& grid) const {
  Symbol s = *this;
  s.cache_ = std::make_shared<const Field>(sample(grid));
  return s;
}

Symbol Symbol::renamed(std::string name) const {
  Symbol s = *this;
  s.name_ = std::move(name);
  return s;
}

Symbol Symbol::with_decay_exponent(double a) const {
  Symbol s = *this;
  s.decay_ = a;
  return s;
}

Symbol Symbol::with_feature_width(double w) const {
  Symbol s = *this;
  s.feature_width_ = w;
  return s;
}

Symbol separable_symbol(const Symbol& first, const Symbol& second) {
  const int d1 = first.freq_dim(), d2 = second.freq_dim();
  return Symbol::general(
      d1 + d2,
      [first, second, d1, d2](const Point& z) {
        return first(z.head(d1)) * second(z.tail(d2));
      },
      {}, first.name() + "x" + second.name());
}

}  // namespace bilmax
