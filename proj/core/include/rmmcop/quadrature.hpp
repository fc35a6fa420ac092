#pragma once

#include <array>
#include <functional>
#include <span>

namespace rmmcop {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Nodes and weights of the 32-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre32 {
  std::array<double, 32> nodes;
  std::array<double, 32> weights;
};

const GaussLegendre32& gauss_legendre_32();

/// Single 32-point Gauss-Legendre pass over [a, b].
double gauss_legendre(const std::function<double(double)>& fn, double a, double b);

/// Adaptive bisection driven by the difference between a cell and its two
/// halves. Throws NumericalError when the tolerance is not met within
/// max_depth levels.
QuadratureResult integrate(const std::function<double(double)>& fn, double a, double b,
                           double abs_tol = 1e-11, int max_depth = 30);

/// Sum of adaptive integrals over consecutive cells [cuts[i], cuts[i+1]].
QuadratureResult integrate_cells(const std::function<double(double)>& fn,
                                 std::span<const double> cuts, double abs_tol = 1e-11,
                                 int max_depth = 30);

}  // namespace rmmcop
