#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "bilmax/field.hpp"

namespace bilmax {

/// Closed shell inner <= |zeta| <= outer; outer may be infinite.
struct Annulus {
  double inner = 0.0;
  double outer = std::numeric_limits<double>::infinity();

  bool bounded() const { return std::isfinite(outer); }
  bool contains(double rho) const { return rho >= inner && rho <= outer; }
  double width() const { return outer - inner; }
};

/// m(zeta) = value(|zeta|); derivative is d/d rho when known.
struct RadialProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

class Symbol {
 public:
  using Complex = std::complex<double>;
  using Evaluator = std::function<Complex(const Point&)>;

  static Symbol general(int freq_dim, Evaluator eval, Annulus support = {},
                        std::string name = "custom");
  static Symbol radial(int freq_dim, RadialProfile profile, Annulus support = {},
                       std::string name = "radial");
  static Symbol constant(int freq_dim, Complex value);
  /// e^{-pi |zeta|^2}.
  static Symbol gaussian(int freq_dim);

  int freq_dim() const { return freq_dim_; }
  const std::string& name() const { return name_; }
  const Annulus& support() const { return support_; }
  std::optional<double> decay_exponent() const { return decay_; }
  const RadialProfile* radial_profile() const { return radial_ ? &*radial_ : nullptr; }

  Complex operator()(const Point& zeta) const;
  /// Profile value at radius rho; only for radial symbols.
  double radial_value(double rho) const;

  /// Analytic for radial symbols with a known derivative, central differences
  /// with step 1e-5 * (support scale) otherwise.
  ComplexPoint gradient(const Point& zeta) const;
  /// zeta . grad m(zeta).
  Complex euler_derivative(const Point& zeta) const;

  /// Width of the thinnest feature the grid must resolve.
  double feature_width() const;

  Field sample(const Grid& grid) const;
  Symbol with_samples(const Grid& grid) const;
  const Field* cached_samples() const { return cache_.get(); }

  Symbol renamed(std::string name) const;
  Symbol with_decay_exponent(double a) const;
  Symbol with_feature_width(double w) const;

 private:
  Symbol() = default;
  double fd_step() const;

  int freq_dim_ = 2;
  Evaluator eval_;
  std::optional<RadialProfile> radial_;
  Annulus support_;
  std::string name_;
  std::optional<double> decay_;
  std::optional<double> feature_width_;
  std::shared_ptr<const Field> cache_;
};

/// Pointwise product m1(xi) m2(eta) for symbols on the two halves of R^{2n}.
Symbol separable_symbol(const Symbol& first, const Symbol& second);

}  // namespace bilmax
