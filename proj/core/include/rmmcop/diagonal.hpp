#pragma once

#include <string>
#include <vector>

#include "rmmcop/copula.hpp"

namespace rmmcop {

/// Continuous piecewise-polynomial diagonal section t -> C(t,t).
class DiagonalSection {
 public:
  explicit DiagonalSection(std::vector<Piece> pieces);

  const PiecewiseFunction& function() const noexcept { return fn_; }
  const std::vector<Piece>& pieces() const noexcept { return fn_.pieces(); }
  double operator()(double t) const;

  /// Largest t with delta(t) = 0.
  double a_delta() const noexcept { return a_delta_; }

  /// Empty when the pieces partition [0,1], join continuously and are polynomial.
  std::string structure_error() const;

 private:
  PiecewiseFunction fn_;
  double a_delta_ = 0.0;
};

/// delta(t) / t^2 on (0,1].
double delta_sharp(const DiagonalSection& d, double t);
/// t + sqrt(t^2 - delta(t)); requires delta(t) <= t^2.
double delta_hat(const DiagonalSection& d, double t);

struct DiagonalReport {
  std::string structural_error;
  ConditionResult d1;            // delta(0) = 0, delta(1) = 1
  ConditionResult d2;            // delta(t) <= t
  ConditionResult d3;            // nondecreasing
  ConditionResult d4;            // 2-Lipschitz
  ConditionResult below_square;  // delta(t) <= t^2
  ConditionResult sharp;         // delta# nondecreasing
  ConditionResult hat;           // delta-hat nondecreasing
  ConditionResult hat_ratio;     // delta-hat(t)/t nonincreasing (equivalent to sharp)
  bool boundary_case = false;
  bool grid_consistent = true;
  std::string grid_detail;

  bool is_diagonal() const noexcept {
    return structural_error.empty() && d1.ok && d2.ok && d3.ok && d4.ok;
  }
  bool member() const noexcept {
    return is_diagonal() && below_square.ok && sharp.ok && hat.ok;
  }
  /// First failing condition, or an empty string.
  std::string first_failure() const;
};

/// Exact piecewise checks of membership in the class of diagonals whose sharp
/// and hat transforms are both monotone; grid_n drives sampled diagnostics.
DiagonalReport in_D_hat(const DiagonalSection& d, int grid_n = 1001);

/// Exact diagonal max{0, t^2 - f(t)g(t)} of an RMM copula. Throws
/// MathDomainError when the generator product is not polynomial.
DiagonalSection diagonal_of(const RmmCopula& c);

/// f(t) = sqrt(t^2 - delta(t)) piece by piece, polynomial where the radicand
/// is a perfect square.
Generator generator_from_diagonal(const DiagonalSection& d);

/// Symmetric RMM copula with diagonal d. Throws MathDomainError when d fails in_D_hat.
RmmCopula srmm_from_diagonal(const DiagonalSection& d);

struct DiagonalBounds {
  RmmCopula lower;
  RmmCopula upper;
  bool coincide = false;
};

/// Smallest and largest symmetric RMM copulas with diagonal d.
DiagonalBounds diagonal_bounds(const DiagonalSection& d);

/// True iff delta > 0 on (0,1], i.e. the symmetric copula with diagonal d is unique.
bool srmm_uniqueness_check(const DiagonalSection& d);

/// Lower semilinear copula y delta(x)/x (y <= x) with 0/0 = 0.
double semilinear_from_diagonal(const DiagonalSection& d, double u, double v);

}  // namespace rmmcop
