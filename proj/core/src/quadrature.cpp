#include "rmmcop/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "rmmcop/errors.hpp"

namespace rmmcop {

namespace {

GaussLegendre32 build_rule() {
  constexpr int n = 32;
  GaussLegendre32 rule{};
  for (int i = 0; i < n / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

struct Adaptive {
  const std::function<double(double)>& fn;
  int max_depth;
  bool converged = true;

  QuadratureResult run(double a, double b, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gauss_legendre(fn, a, m);
    const double right = gauss_legendre(fn, m, b);
    const double diff = std::abs(left + right - whole);
    if (diff <= tol || depth >= max_depth || !(m > a && m < b)) {
      if (diff > tol) converged = false;
      return {left + right, diff};
    }
    const QuadratureResult l = run(a, m, left, 0.5 * tol, depth + 1);
    const QuadratureResult r = run(m, b, right, 0.5 * tol, depth + 1);
    return {l.value + r.value, l.error + r.error};
  }
};

}  // namespace

const GaussLegendre32& gauss_legendre_32() {
  static const GaussLegendre32 rule = build_rule();
  return rule;
}

double gauss_legendre(const std::function<double(double)>& fn, double a, double b) {
  const GaussLegendre32& rule = gauss_legendre_32();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < 32; ++i) sum += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  return half * sum;
}

QuadratureResult integrate(const std::function<double(double)>& fn, double a, double b,
                           double abs_tol, int max_depth) {
  if (!(b > a)) return {};
  Adaptive adaptive{fn, max_depth};
  const QuadratureResult r = adaptive.run(a, b, gauss_legendre(fn, a, b), abs_tol, 0);
  if (!adaptive.converged && r.error > abs_tol) {
    throw NumericalError("adaptive quadrature did not reach the requested tolerance", r.error);
  }
  return r;
}

QuadratureResult integrate_cells(const std::function<double(double)>& fn,
                                 std::span<const double> cuts, double abs_tol, int max_depth) {
  QuadratureResult total;
  if (cuts.size() < 2) return total;
  const double span = cuts.back() - cuts.front();
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double width = cuts[i + 1] - cuts[i];
    if (!(width > 0.0)) continue;
    const QuadratureResult r =
        integrate(fn, cuts[i], cuts[i + 1], std::max(abs_tol * width / span, 1e-15), max_depth);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

}  // namespace rmmcop
