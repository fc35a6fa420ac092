#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace rmmcop {

/// Dense univariate polynomial with real coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial identity() { return Polynomial({0.0, 1.0}); }

  double operator()(double t) const noexcept;

  /// Degree after dropping exactly-zero leading coefficients; -1 for the zero polynomial.
  int degree() const noexcept;
  bool is_zero() const noexcept { return degree() < 0; }

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double coeff(int k) const noexcept;

  Polynomial derivative() const;
  /// p(a + b t)
  Polynomial compose_affine(double a, double b) const;
  /// Drops leading coefficients whose magnitude is below rel_tol * max|c|.
  Polynomial trimmed(double rel_tol = 1e-14) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= -1.0; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  /// Largest coefficient magnitude.
  double scale() const noexcept;

 private:
  std::vector<double> coeffs_;
};

/// Real roots of p inside [lo, hi], ascending and deduplicated.
///
/// Roots are isolated recursively: the critical points of p split [lo, hi]
/// into monotone segments and each sign change is refined by bisection.
/// Critical points where |p| is negligible are reported as (even) roots.
/// The zero polynomial has no isolated roots and returns an empty list.
std::vector<double> real_roots(const Polynomial& p, double lo, double hi);

struct Extremum {
  double value;
  double at;
};

Extremum minimum_on(const Polynomial& p, double lo, double hi);
Extremum maximum_on(const Polynomial& p, double lo, double hi);

/// Polynomial q with q*q == p up to rel_tol on the coefficients, if one exists.
/// The returned q has a nonnegative leading coefficient.
std::optional<Polynomial> polynomial_sqrt(const Polynomial& p, double rel_tol = 1e-12);

}  // namespace rmmcop
