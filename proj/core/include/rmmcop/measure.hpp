#pragma once

#include <vector>

#include "rmmcop/copula.hpp"

namespace rmmcop {

struct DensityValue {
  double value = 0.0;
  /// Set when the point lies on the boundary curve, a generator breakpoint or
  /// an edge of the square; one-sided right derivatives were used.
  bool flagged = false;
};

/// 1 - f'(u) g'(v) on the stand, 0 on the open zero set.
DensityValue density(const RmmCopula& c, double u, double v);

/// Mass of the absolutely continuous part: the density integrated over the
/// stand with 32-point Gauss-Legendre cells split at generator breakpoints
/// and along the boundary curve. Throws NumericalError on non-convergence.
double ac_mass(const RmmCopula& c, double abs_tol = 1e-10);

/// 1 - ac_mass.
double singular_mass(const RmmCopula& c, double abs_tol = 1e-10);

/// Size of the atom of the conditional distribution of V given U = u at the
/// upper edge of the zero set: v - f'(u) g(v). Breakpoints of f average the
/// one-sided derivatives.
double jump_at(const RmmCopula& c, double u);

struct ProfilePoint {
  double u = 0.0;
  double v = 0.0;
  double jump = 0.0;
};

/// jump(u) along the sampled boundary curve.
std::vector<ProfilePoint> singular_profile(const RmmCopula& c, int n_samples);

/// Integral of jump(u) over [u_lo, u_hi] (the whole unit interval by default).
double profile_mass(const RmmCopula& c, double u_lo = 0.0, double u_hi = 1.0, double abs_tol = 1e-10);

/// Lebesgue measure of the zero set.
double zero_set_area(const RmmCopula& c, double abs_tol = 1e-10);

/// Density integrated over [u1,u2] x [v1,v2].
double density_integral(const RmmCopula& c, double u1, double u2, double v1, double v2,
                        double abs_tol = 1e-11);

struct MassDecomposition {
  double ac_mass = 0.0;
  double singular_mass = 0.0;
  double zero_set_area = 0.0;
  /// Integral of the jump profile; agrees with singular_mass when the
  /// decomposition is consistent.
  double profile_mass = 0.0;
  std::vector<ProfilePoint> profile;
};

MassDecomposition mass_decomposition(const RmmCopula& c, int n_profile = 201);

}  // namespace rmmcop
