#pragma once

#include <limits>
#include <string>
#include <vector>

#include "rmmcop/polynomial.hpp"

namespace rmmcop {

/// Absolute slack used for every equality and monotonicity comparison.
inline constexpr double kTolerance = 1e-12;

enum class Side { left, right };

/// One smooth piece on [lo, hi]: poly(t) + sign * sqrt(radicand(t)).
///
/// A zero radicand means the piece is a plain polynomial.
struct Piece {
  double lo = 0.0;
  double hi = 1.0;
  Polynomial poly;
  Polynomial radicand;
  double root_sign = 1.0;

  bool has_radical() const noexcept { return !radicand.is_zero(); }
  double value(double t) const noexcept;
  /// Exact derivative; +-infinity where the radicand vanishes with nonzero slope.
  double derivative(double t) const noexcept;
};

/// A + B * sqrt(R) with polynomial A, B, R.
struct SurdExpression {
  Polynomial rational;
  Polynomial coefficient;
  Polynomial radicand;

  bool has_radical() const noexcept { return !radicand.is_zero() && !coefficient.is_zero(); }
  double operator()(double t) const noexcept;
};

/// x(t) + y(t) * f(t) + z(t) * f'(t) for a piece f.
struct LinearForm {
  Polynomial x;
  Polynomial y;
  Polynomial z;
};

/// Rewrites a linear form in f, f' over a piece as a surd expression with
/// the same sign. Radical pieces are multiplied through by 2*sqrt(R).
SurdExpression to_surd(const Piece& piece, const LinearForm& form);

/// Real roots of a surd expression on [lo, hi].
std::vector<double> roots(const SurdExpression& e, double lo, double hi);

struct SignCheck {
  bool ok = true;
  /// Point where the expression dips below -tol (NaN when ok).
  double witness = std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  /// The expression vanishes identically on a subinterval of positive length.
  bool flat = false;
};

/// Exact sign analysis: the interval is split at every root of A, B, R and
/// A^2 - B^2 R, so the sign is constant on each open cell.
SignCheck check_nonnegative(const SurdExpression& e, double lo, double hi, double tol = kTolerance);

/// Ordered pieces that partition [0, 1].
class PiecewiseFunction {
 public:
  PiecewiseFunction() = default;
  explicit PiecewiseFunction(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  bool empty() const noexcept { return pieces_.empty(); }

  /// Piece owning t. At a breakpoint the side selects the neighbour.
  const Piece& piece_at(double t, Side side = Side::left) const;
  double value(double t) const;
  double derivative(double t, Side side) const;

  /// Interior breakpoints, ascending.
  std::vector<double> breakpoints() const;

  /// Empty when the pieces partition [0,1] and join continuously; otherwise a description.
  std::string structure_error(double tol = kTolerance, bool require_continuity = true) const;

  /// Copy restricted to [lo, hi], splitting the boundary pieces.
  std::vector<Piece> restricted(double lo, double hi) const;

 private:
  std::vector<Piece> pieces_;
};

}  // namespace rmmcop
