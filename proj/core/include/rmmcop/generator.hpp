#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rmmcop/piecewise.hpp"

namespace rmmcop {

/// Nonnegative real number or +infinity.
class ExtendedReal {
 public:
  constexpr explicit ExtendedReal(double v = 0.0) : value_(v) {}
  static constexpr ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }

  constexpr bool is_infinite() const noexcept {
    return value_ == std::numeric_limits<double>::infinity();
  }
  constexpr double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Generator f of an RMM copula: continuous on (0,1], f(0) = 0, with an
/// optional jump at 0 whose right limit is zero_limit.
class Generator {
 public:
  /// f == 0 (the product copula generator).
  Generator();
  /// zero_limit is taken from the first piece at t = 0.
  explicit Generator(std::vector<Piece> pieces);
  Generator(std::vector<Piece> pieces, double zero_limit);

  static Generator polynomial(Polynomial p);

  const PiecewiseFunction& function() const noexcept { return fn_; }
  const std::vector<Piece>& pieces() const noexcept { return fn_.pieces(); }
  double zero_limit() const noexcept { return zero_limit_; }
  std::vector<double> breakpoints() const { return fn_.breakpoints(); }

  /// f(t); f(0) = 0 regardless of zero_limit, and f(1) = 0 exactly.
  double operator()(double t) const;

  /// lambda * f
  Generator scaled(double lambda) const;

  /// Empty when the piece list is a valid partition with continuous joins.
  std::string structure_error() const;

  bool is_identically_zero() const;

  friend bool operator==(const Generator& a, const Generator& b);

 private:
  PiecewiseFunction fn_;
  double zero_limit_ = 0.0;
};

double eval_f(const Generator& gen, double t);
/// f(t)/t, with the right limit (possibly infinite) at t = 0.
ExtendedReal eval_f_star(const Generator& gen, double t);
/// t + f(t).
double eval_f_hat(const Generator& gen, double t);
/// lim_{t -> 0+} (t + f(t)), which differs from f_hat(0) = 0 when f jumps at 0.
double f_hat_right_limit(const Generator& gen);
/// One-sided derivative; throws MathDomainError at t = 0 across a jump.
double derivative_f(const Generator& gen, double t, Side side = Side::right);

struct ConditionResult {
  bool ok = true;
  std::string detail;
  double witness = std::numeric_limits<double>::quiet_NaN();
  bool boundary_case = false;
};

struct ValidationReport {
  std::string structural_error;
  ConditionResult nonnegative;
  ConditionResult g1;  // endpoint values
  ConditionResult g2;  // t + f(t) nondecreasing
  ConditionResult g3;  // f(t)/t nonincreasing
  bool grid_consistent = true;
  std::string grid_detail;

  bool structurally_valid() const noexcept { return structural_error.empty(); }
  bool passed() const noexcept {
    return structurally_valid() && nonnegative.ok && g1.ok && g2.ok && g3.ok;
  }
};

/// Exact piecewise checks of (G1)-(G3) plus nonnegativity. grid_n only
/// drives the redundant sampled cross-check.
ValidationReport validate_generator(const Generator& gen, int grid_n = 1001);

/// Generating functions (phi, psi) of a maxmin copula.
///
/// phi is stored on (0,1] and evaluates to 0 at u = 0; psi is stored on [0,1)
/// and evaluates to 1 at v = 1. The values phi(1) = 1 and psi(0) = 0 are
/// pinned once validation has confirmed them.
class MaxminGenerators {
 public:
  MaxminGenerators(PiecewiseFunction phi, PiecewiseFunction psi);

  const PiecewiseFunction& phi_function() const noexcept { return phi_; }
  const PiecewiseFunction& psi_function() const noexcept { return psi_; }

  double phi(double u) const;
  double psi(double v) const;
  /// phi(u)/u on (0,1].
  double phi_star(double u) const;
  /// (1 - psi(v)) / (v - psi(v)) on (0,1); +infinity when psi(v) = v.
  ExtendedReal psi_lower_star(double v) const;

 private:
  PiecewiseFunction phi_;
  PiecewiseFunction psi_;
};

struct MaxminValidationReport {
  std::string structural_error;
  ConditionResult f1;  // endpoint values
  ConditionResult f2;  // phi, psi nondecreasing
  ConditionResult f3;  // phi* and psi_* nonincreasing
  bool grid_consistent = true;
  std::string grid_detail;

  bool passed() const noexcept { return structural_error.empty() && f1.ok && f2.ok && f3.ok; }
};

MaxminValidationReport validate_maxmin(const MaxminGenerators& mm, int grid_n = 1001);

/// f(u) = phi(u) - u, g(v) = 1 - v - psi(1 - v). Throws MathDomainError on invalid input.
std::pair<Generator, Generator> generators_from_maxmin(const MaxminGenerators& mm);
/// phi(u) = u + f(u), psi(v) = v - g(1 - v). Throws MathDomainError on invalid input.
MaxminGenerators maxmin_from_generators(const Generator& f, const Generator& g);

/// (lambda f, g / lambda); the induced RMM copula is unchanged.
std::pair<Generator, Generator> scale_generator_pair(const Generator& f, const Generator& g,
                                                     double lambda);

}  // namespace rmmcop
