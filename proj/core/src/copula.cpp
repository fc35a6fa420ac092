#include "rmmcop/copula.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rmmcop {

namespace {

void require_unit(double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw MathDomainError("copula argument outside [0,1]^2");
  }
}

std::string first_failure(const ValidationReport& r) {
  if (!r.structural_error.empty()) return r.structural_error;
  if (!r.nonnegative.ok) return r.nonnegative.detail;
  if (!r.g1.ok) return r.g1.detail;
  if (!r.g2.ok) return r.g2.detail;
  return r.g3.detail;
}

Generator checked(Generator gen, const char* name) {
  const ValidationReport r = validate_generator(gen);
  if (!r.passed()) throw MathDomainError(std::string("generator ") + name + " invalid: " + first_failure(r));
  return gen;
}

// Product of two extended nonnegative reals, with 0 * inf taken as 0.
double extended_product(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.value() == 0.0 || b.value() == 0.0) return 0.0;
  return a.value() * b.value();
}

// Sign-equivalent of uv - f(u)g(v) for v in (0,1].
class ColumnSign {
 public:
  ColumnSign(const RmmCopula& c, double u) : c_(c), u_(u), fu_(c.f()(u)) {}

  double at(double v) const {
    if (u_ > 0.0) return u_ * v - fu_ * c_.g()(v);
    const ExtendedReal& fs = c_.f_star_zero();
    const double gv = c_.g()(v);
    if (fs.is_infinite()) return gv > 0.0 ? -1.0 : 1.0;
    return 1.0 - fs.value() * gv / v;
  }

  /// Right limit at v = 0.
  double at_zero() const {
    const ExtendedReal& gs = c_.g_star_zero();
    if (u_ > 0.0) {
      if (gs.is_infinite()) return fu_ > 0.0 ? -1.0 : 1.0;
      return u_ - fu_ * gs.value();
    }
    return 1.0 - extended_product(c_.f_star_zero(), gs);
  }

 private:
  const RmmCopula& c_;
  double u_;
  double fu_;
};

// Smallest v in [0,1] with pred true, for a predicate that is monotone in v
// and true at v = 1.
template <typename Pred>
double bisect_first_true(Pred pred) {
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void add_cuts(std::vector<double>& cuts, const std::vector<double>& pts) {
  for (double t : pts) {
    if (t > 0.0 && t < 1.0) cuts.push_back(t);
  }
}

}  // namespace

RmmCopula::RmmCopula(Generator f, Generator g)
    : f_(checked(std::move(f), "f")), g_(checked(std::move(g), "g")) {
  symmetric_ = f_ == g_;
  f_star0_ = eval_f_star(f_, 0.0);
  g_star0_ = eval_f_star(g_, 0.0);
}

RmmCopula RmmCopula::symmetric(Generator f) {
  Generator g = f;
  return RmmCopula(std::move(f), std::move(g));
}

double RmmCopula::operator()(double u, double v) const noexcept {
  return std::max(0.0, u * v - f_(u) * g_(v));
}

MaxminCopula::MaxminCopula(MaxminGenerators mm) : mm_(std::move(mm)) {
  const MaxminValidationReport r = validate_maxmin(mm_);
  if (!r.passed()) {
    throw MathDomainError("maxmin generators invalid: " +
                          (r.structural_error.empty()
                               ? (r.f1.ok ? (r.f2.ok ? r.f3.detail : r.f2.detail) : r.f1.detail)
                               : r.structural_error));
  }
}

double MaxminCopula::operator()(double u, double v) const noexcept {
  const double p = mm_.phi(u);
  const double q = mm_.psi(v);
  return std::min(u, p * v - p * q + u * q);
}

double eval_rmm(const RmmCopula& c, double u, double v) {
  require_unit(u, v);
  return c(u, v);
}

double eval_rmm_starred(const RmmCopula& c, double u, double v) {
  require_unit(u, v);
  if (u == 0.0 || v == 0.0) return c(u, v);
  const double fs = c.f()(u) / u;
  const double gs = c.g()(v) / v;
  return u * v * std::max(0.0, 1.0 - fs * gs);
}

double eval_maxmin(const MaxminCopula& c, double u, double v) {
  require_unit(u, v);
  return c(u, v);
}

RmmCopula reflect_maxmin_to_rmm(const MaxminCopula& c) {
  auto [f, g] = generators_from_maxmin(c.generators());
  return RmmCopula(std::move(f), std::move(g));
}

MaxminCopula reflect_rmm_to_maxmin(const RmmCopula& c) {
  return MaxminCopula(maxmin_from_generators(c.f(), c.g()));
}

FrechetReport frechet_bounds_check(const RmmCopula& c, int grid_n) {
  if (grid_n < 2) throw MathDomainError("grid needs at least 2 points");
  FrechetReport report;
  for (int i = 0; i < grid_n; ++i) {
    const double u = static_cast<double>(i) / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double v = static_cast<double>(j) / (grid_n - 1);
      const double value = c(u, v);
      const double lower = std::max(0.0, u + v - 1.0);
      const double upper = u * v;
      const double violation = std::max(lower - value, value - upper);
      if (violation > report.worst_violation) {
        report.worst_violation = violation;
        report.worst_u = u;
        report.worst_v = v;
      }
      report.max_gap_upper = std::max(report.max_gap_upper, upper - value);
      report.max_gap_lower = std::max(report.max_gap_lower, value - lower);
    }
  }
  report.ok = report.worst_violation <= kTolerance;
  return report;
}

StandCrossing stand_crossing(const RmmCopula& c, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw MathDomainError("u outside [0,1]");
  const ColumnSign sign(c, u);
  const double s0 = sign.at_zero();
  StandCrossing out;
  out.lower = s0 >= 0.0 ? 0.0 : bisect_first_true([&](double v) { return sign.at(v) >= 0.0; });
  if (s0 > 0.0) {
    out.upper = 0.0;
  } else {
    // Last point with sign <= 0 sits just below the first point with sign > 0.
    const double first_positive = bisect_first_true([&](double v) { return sign.at(v) > 0.0; });
    out.upper = std::max(out.lower, first_positive);
  }
  return out;
}

std::vector<double> stand_breakpoints(const RmmCopula& c) {
  std::vector<double> cuts{0.0, 1.0};
  add_cuts(cuts, c.f().breakpoints());
  const std::vector<double> g_breaks = c.g().breakpoints();
  for (const Piece& p : c.f().pieces()) {
    // f(u) g(b) - u b = 0: the curve crosses the g breakpoint b.
    for (double b : g_breaks) {
      const SurdExpression e = to_surd(p, {Polynomial{0.0, -b}, Polynomial{c.g()(b)}, Polynomial{}});
      add_cuts(cuts, roots(e, p.lo, p.hi));
    }
    if (!c.g_star_zero().is_infinite()) {
      const SurdExpression e =
          to_surd(p, {Polynomial{0.0, -1.0}, Polynomial{c.g_star_zero().value()}, Polynomial{}});
      add_cuts(cuts, roots(e, p.lo, p.hi));
    }
    add_cuts(cuts, roots(to_surd(p, {Polynomial{}, Polynomial{1.0}, Polynomial{}}), p.lo, p.hi));
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> unique;
  for (double t : cuts) {
    if (unique.empty() || t - unique.back() > 1e-13) unique.push_back(t);
  }
  unique.back() = 1.0;
  return unique;
}

StandGeometry boundary_curve(const RmmCopula& c, int n_samples) {
  if (n_samples < 2) throw MathDomainError("boundary curve needs at least 2 samples");
  const std::vector<double> cuts = stand_breakpoints(c);
  std::vector<double> us;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    // Chebyshev-Lobatto nodes cluster samples at the cell ends, where kinks live.
    const int m = std::max(2, static_cast<int>(std::lround(n_samples * (b - a))));
    for (int k = 0; k <= m; ++k) {
      us.push_back(0.5 * (a + b) - 0.5 * (b - a) * std::cos(std::numbers::pi * k / m));
    }
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());

  StandGeometry geo;
  for (double u : us) {
    const double v0 = stand_crossing(c, u).lower;
    if (v0 > 0.0 && v0 < 1.0) geo.boundary.push_back({u, v0});
  }
  if (!geo.boundary.empty()) {
    geo.u_lo = geo.boundary.front().u;
    geo.u_hi = geo.boundary.back().u;
  }
  return geo;
}

std::vector<CurvePoint> level_curve(const RmmCopula& c, double t, int n_samples) {
  if (!(t > 0.0 && t <= 1.0)) throw MathDomainError("level must lie in (0,1]");
  if (n_samples < 2) throw MathDomainError("level curve needs at least 2 samples");
  if (t == 1.0) return {{1.0, 1.0}};
  std::vector<CurvePoint> out;
  for (int i = 0; i < n_samples; ++i) {
    const double u = t + (1.0 - t) * i / (n_samples - 1);
    const double v = bisect_first_true([&](double x) { return c(u, x) >= t; });
    out.push_back({u, v});
  }
  return out;
}

std::vector<CurvePoint> maxmin_singular_curve(const MaxminCopula& c, int n_samples) {
  const StandGeometry geo = boundary_curve(reflect_maxmin_to_rmm(c), n_samples);
  std::vector<CurvePoint> out;
  out.reserve(geo.boundary.size());
  for (const CurvePoint& p : geo.boundary) out.push_back({p.u, 1.0 - p.v});
  return out;
}

double partial_derivative_u(const RmmCopula& c, double u, double v, Side side) {
  require_unit(u, v);
  if (u == 0.0) {
    if (c.f().zero_limit() > kTolerance) {
      throw MathDomainError("dC/du undefined at u=0: generator jumps at 0");
    }
    return std::max(0.0, v - c.f_star_zero().value() * c.g()(v));
  }
  if (u * v - c.f()(u) * c.g()(v) < 0.0) return 0.0;
  return v - derivative_f(c.f(), u, side) * c.g()(v);
}

double partial_derivative_v(const RmmCopula& c, double u, double v, Side side) {
  require_unit(u, v);
  if (v == 0.0) {
    if (c.g().zero_limit() > kTolerance) {
      throw MathDomainError("dC/dv undefined at v=0: generator jumps at 0");
    }
    return std::max(0.0, u - c.f()(u) * c.g_star_zero().value());
  }
  if (u * v - c.f()(u) * c.g()(v) < 0.0) return 0.0;
  return u - c.f()(u) * derivative_f(c.g(), v, side);
}

}  // namespace rmmcop
