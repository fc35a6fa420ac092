#pragma once

#include <string>
#include <vector>

#include "rmmcop/errors.hpp"
#include "rmmcop/generator.hpp"

namespace rmmcop {

/// Any total map [0,1]^2 -> [0,1] that behaves like a copula.
class CopulaEvaluator {
 public:
  virtual ~CopulaEvaluator() = default;
  virtual double operator()(double u, double v) const = 0;
  /// Sample size for empirical evaluators, 0 for analytic ones.
  virtual std::size_t sample_size() const { return 0; }
};

/// C(u,v) = max{0, uv - f(u) g(v)}.
class RmmCopula {
 public:
  /// Throws MathDomainError when either generator fails validation.
  RmmCopula(Generator f, Generator g);
  static RmmCopula symmetric(Generator f);

  const Generator& f() const noexcept { return f_; }
  const Generator& g() const noexcept { return g_; }
  bool is_symmetric() const noexcept { return symmetric_; }
  const ExtendedReal& f_star_zero() const noexcept { return f_star0_; }
  const ExtendedReal& g_star_zero() const noexcept { return g_star0_; }

  double operator()(double u, double v) const noexcept;

 private:
  Generator f_;
  Generator g_;
  bool symmetric_ = false;
  ExtendedReal f_star0_;
  ExtendedReal g_star0_;
};

/// C(u,v) = min{u, phi(u) v - phi(u) psi(v) + u psi(v)}.
class MaxminCopula {
 public:
  /// Throws MathDomainError when (F1)-(F3) fail.
  explicit MaxminCopula(MaxminGenerators mm);

  const MaxminGenerators& generators() const noexcept { return mm_; }
  double operator()(double u, double v) const noexcept;

 private:
  MaxminGenerators mm_;
};

/// Throws MathDomainError outside [0,1]^2.
double eval_rmm(const RmmCopula& c, double u, double v);
/// uv max{0, 1 - f*(u) g*(v)} for u, v > 0; the plain form on the axes.
double eval_rmm_starred(const RmmCopula& c, double u, double v);
double eval_maxmin(const MaxminCopula& c, double u, double v);

RmmCopula reflect_maxmin_to_rmm(const MaxminCopula& c);
MaxminCopula reflect_rmm_to_maxmin(const RmmCopula& c);

template <typename Copula>
double rectangle_volume(const Copula& c, double u1, double u2, double v1, double v2) {
  if (!(u1 <= u2 && v1 <= v2)) throw MathDomainError("rectangle corners out of order");
  return c(u2, v2) - c(u2, v1) - c(u1, v2) + c(u1, v1);
}

struct FrechetReport {
  bool ok = true;
  /// Largest violation of either bound (0 when none).
  double worst_violation = 0.0;
  double worst_u = 0.0;
  double worst_v = 0.0;
  /// Largest gap to the upper bound uv and to the lower bound W.
  double max_gap_upper = 0.0;
  double max_gap_lower = 0.0;
};

FrechetReport frechet_bounds_check(const RmmCopula& c, int grid_n);

struct CurvePoint {
  double u = 0.0;
  double v = 0.0;
};

/// Where the column {u} x (0,1] enters the stand.
struct StandCrossing {
  /// Smallest v with uv - f(u)g(v) >= 0 (0 when the whole column is in the stand).
  double lower = 0.0;
  /// Largest v with uv - f(u)g(v) <= 0, the upper edge of the zero set.
  double upper = 0.0;
};

/// Bisection on the monotone sign of 1 - f*(u) g*(v). At u = 0 the limit
/// f*(0) is used.
StandCrossing stand_crossing(const RmmCopula& c, double u);

/// Sorted u-cuts in [0,1] where the boundary curve can lose smoothness:
/// breakpoints of f, points where v0(u) crosses a breakpoint of g or the
/// axis, and the zeros of f.
std::vector<double> stand_breakpoints(const RmmCopula& c);

struct StandGeometry {
  std::vector<CurvePoint> boundary;
  double u_lo = 0.0;
  double u_hi = 0.0;

  bool empty() const noexcept { return boundary.empty(); }
};

/// Samples of the zero-level curve (u, v0(u)) with 0 < v0 < 1, ordered by u.
StandGeometry boundary_curve(const RmmCopula& c, int n_samples);

/// Points with uv - f(u)g(v) = t, t in (0,1].
std::vector<CurvePoint> level_curve(const RmmCopula& c, double t, int n_samples);

/// Boundary curve of the reflected copula mapped by (u,v) -> (u, 1-v).
std::vector<CurvePoint> maxmin_singular_curve(const MaxminCopula& c, int n_samples);

/// dC/du: 0 in the zero set, v - f'(u) g(v) on the stand.
double partial_derivative_u(const RmmCopula& c, double u, double v, Side side = Side::right);
/// dC/dv: 0 in the zero set, u - f(u) g'(v) on the stand.
double partial_derivative_v(const RmmCopula& c, double u, double v, Side side = Side::right);

/// Evaluator adaptor for analytic copulas.
template <typename Copula>
class AnalyticEvaluator final : public CopulaEvaluator {
 public:
  explicit AnalyticEvaluator(Copula c) : c_(std::move(c)) {}
  double operator()(double u, double v) const override { return c_(u, v); }
  const Copula& copula() const noexcept { return c_; }

 private:
  Copula c_;
};

}  // namespace rmmcop
