#include "rmmcop/measure.hpp"

#include <algorithm>
#include <cmath>

#include "rmmcop/quadrature.hpp"

namespace rmmcop {

namespace {

constexpr int kMaxDepth = 50;

bool is_breakpoint(const Generator& gen, double t) {
  for (double b : gen.breakpoints()) {
    if (std::abs(b - t) <= 1e-14) return true;
  }
  return false;
}

// Right derivative that never throws; used at quadrature nodes, which are
// always interior to a cell.
double slope(const Generator& gen, double t) { return gen.function().derivative(t, Side::right); }

double averaged_slope(const Generator& gen, double t) {
  const double r = gen.function().derivative(t, Side::right);
  if (t <= 0.0 || !is_breakpoint(gen, t)) return r;
  return 0.5 * (r + gen.function().derivative(t, Side::left));
}

// Integral over v in [a, b] of 1 - fp * g'(v), split at the breakpoints of g.
double column_integral(const Generator& g, double fp, double a, double b) {
  if (!(b > a)) return 0.0;
  double total = 0.0;
  for (const Piece& p : g.function().restricted(a, b)) {
    if (p.has_radical()) {
      // g' may be unbounded at radicand zeros; integrate it exactly.
      total += (p.hi - p.lo) - fp * (p.value(p.hi) - p.value(p.lo));
    } else {
      const Polynomial dp = p.poly.derivative();
      total += gauss_legendre([&](double v) { return 1.0 - fp * dp(v); }, p.lo, p.hi);
    }
  }
  return total;
}

std::vector<double> cells_within(const std::vector<double>& cuts, double lo, double hi) {
  std::vector<double> out{lo};
  for (double t : cuts) {
    if (t > lo && t < hi) out.push_back(t);
  }
  out.push_back(hi);
  return out;
}

}  // namespace

DensityValue density(const RmmCopula& c, double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw MathDomainError("density argument outside [0,1]^2");
  }
  DensityValue out;
  const double h = u * v - c.f()(u) * c.g()(v);
  out.flagged = u == 0.0 || u == 1.0 || v == 0.0 || v == 1.0 || is_breakpoint(c.f(), u) ||
                is_breakpoint(c.g(), v) || std::abs(h) <= 1e-14;
  if (h < 0.0) return out;
  out.value = 1.0 - slope(c.f(), u) * slope(c.g(), v);
  return out;
}

double ac_mass(const RmmCopula& c, double abs_tol) {
  const std::vector<double> cuts = stand_breakpoints(c);
  auto inner = [&](double u) {
    const double lower = stand_crossing(c, u).lower;
    return column_integral(c.g(), slope(c.f(), u), lower, 1.0);
  };
  return integrate_cells(inner, cuts, abs_tol, kMaxDepth).value;
}

double singular_mass(const RmmCopula& c, double abs_tol) { return 1.0 - ac_mass(c, abs_tol); }

double jump_at(const RmmCopula& c, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw MathDomainError("u outside [0,1]");
  const double v = stand_crossing(c, u).upper;
  if (v <= 0.0) return 0.0;
  return v - averaged_slope(c.f(), u) * c.g()(v);
}

std::vector<ProfilePoint> singular_profile(const RmmCopula& c, int n_samples) {
  const StandGeometry geo = boundary_curve(c, n_samples);
  std::vector<ProfilePoint> out;
  out.reserve(geo.boundary.size());
  for (const CurvePoint& p : geo.boundary) out.push_back({p.u, p.v, jump_at(c, p.u)});
  return out;
}

double profile_mass(const RmmCopula& c, double u_lo, double u_hi, double abs_tol) {
  if (!(u_lo >= 0.0 && u_hi <= 1.0 && u_lo <= u_hi)) throw MathDomainError("bad profile range");
  const std::vector<double> cells = cells_within(stand_breakpoints(c), u_lo, u_hi);
  return integrate_cells([&](double u) { return jump_at(c, u); }, cells, abs_tol, kMaxDepth).value;
}

double zero_set_area(const RmmCopula& c, double abs_tol) {
  const std::vector<double> cuts = stand_breakpoints(c);
  return integrate_cells([&](double u) { return stand_crossing(c, u).upper; }, cuts, abs_tol,
                         kMaxDepth)
      .value;
}

double density_integral(const RmmCopula& c, double u1, double u2, double v1, double v2,
                        double abs_tol) {
  if (!(0.0 <= u1 && u1 <= u2 && u2 <= 1.0 && 0.0 <= v1 && v1 <= v2 && v2 <= 1.0)) {
    throw MathDomainError("bad integration rectangle");
  }
  const std::vector<double> cells = cells_within(stand_breakpoints(c), u1, u2);
  auto inner = [&](double u) {
    const double lower = std::max(v1, stand_crossing(c, u).lower);
    return column_integral(c.g(), slope(c.f(), u), lower, v2);
  };
  return integrate_cells(inner, cells, abs_tol, kMaxDepth).value;
}

MassDecomposition mass_decomposition(const RmmCopula& c, int n_profile) {
  MassDecomposition out;
  out.ac_mass = ac_mass(c);
  out.singular_mass = std::max(0.0, 1.0 - out.ac_mass);
  out.zero_set_area = zero_set_area(c);
  out.profile_mass = profile_mass(c);
  out.profile = singular_profile(c, n_profile);
  return out;
}

}  // namespace rmmcop
