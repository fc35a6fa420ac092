#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rmmcop/copula.hpp"
#include "rmmcop/errors.hpp"
#include "rmmcop/presets.hpp"

namespace rmmcop {
namespace {

const std::vector<std::string>& presets() {
  static const std::vector<std::string> keys = standard_preset_keys();
  return keys;
}

TEST(RmmCopula, KnownValues) {
  const RmmCopula w = rmm_preset("w");
  EXPECT_EQ(eval_rmm(w, 0.5, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(eval_rmm(rmm_preset("efgm:a=0.5"), 0.5, 0.5), 0.234375);
  for (const std::string& key : presets()) EXPECT_DOUBLE_EQ(eval_rmm(rmm_preset(key), 0.7, 1.0), 0.7) << key;
  EXPECT_THROW(eval_rmm(w, 1.5, 0.5), MathDomainError);
  EXPECT_THROW(eval_rmm(w, 0.5, -0.1), MathDomainError);
}

TEST(RmmCopula, ConstructorRejectsInvalidGenerators) {
  EXPECT_THROW(RmmCopula::symmetric(Generator::polynomial(Polynomial{0.0, 0.0, 1.0})), MathDomainError);
  EXPECT_THROW(RmmCopula(w_generator().scaled(2.0), w_generator()), MathDomainError);
}

TEST(RmmCopula, SymmetricFlag) {
  EXPECT_TRUE(rmm_preset("w").is_symmetric());
  EXPECT_TRUE(rmm_preset("efgm:a=0.5").is_symmetric());
  EXPECT_FALSE(rmm_preset("tent-efgm:a=0.4,b=0.6").is_symmetric());
  EXPECT_FALSE(rmm_preset("ex3a:theta=1/3,eta=2/3").is_symmetric());
}

TEST(MaxminCopula, KnownValues) {
  const MaxminCopula pi_mm(maxmin_from_generators(Generator(), Generator()));
  EXPECT_NEAR(eval_maxmin(pi_mm, 0.3, 0.8), 0.24, 1e-15);
  const MaxminCopula m = maxmin_preset("mm:w");
  EXPECT_DOUBLE_EQ(eval_maxmin(m, 0.3, 0.8), 0.3);
  EXPECT_DOUBLE_EQ(eval_maxmin(m, 0.8, 0.3), 0.3);
  // phi(u) = 2u - u^2, psi(v) = v - g(1 - v) with g = t(1 - t)/2.
  const MaxminCopula mm(maxmin_from_generators(efgm_generator(1.0), efgm_generator(0.5)));
  EXPECT_NEAR(eval_maxmin(mm, 0.6, 0.4), 0.2688, 1e-15);
  EXPECT_NEAR(eval_maxmin(mm, 0.6, 0.4), 0.6 - eval_rmm(RmmCopula(efgm_generator(1.0), efgm_generator(0.5)), 0.6, 0.6),
              1e-15);
}

TEST(Reflection, RoundtripAllPresets) {
  for (const std::string& key : presets()) {
    const RmmCopula c = rmm_preset(key);
    const MaxminCopula m = reflect_rmm_to_maxmin(c);
    const RmmCopula back = reflect_maxmin_to_rmm(m);
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 100; ++j) {
        const double u = i / 100.0;
        const double v = j / 100.0;
        ASSERT_NEAR(m(u, v), u - c(u, 1.0 - v), 1e-12) << key << " at " << u << ',' << v;
        ASSERT_NEAR(back(u, v), c(u, v), 1e-12) << key;
      }
    }
  }
}

TEST(Reflection, WBecomesUpperBound) {
  const MaxminCopula m = reflect_rmm_to_maxmin(rmm_preset("w"));
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) EXPECT_NEAR(m(i / 20.0, j / 20.0), std::min(i, j) / 20.0, 1e-15);
  }
}

TEST(RectangleVolume, Examples) {
  EXPECT_DOUBLE_EQ(rectangle_volume(rmm_preset("efgm:a=0.5"), 0.0, 1.0, 0.0, 1.0), 1.0);
  EXPECT_EQ(rectangle_volume(rmm_preset("w"), 0.0, 0.5, 0.0, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(rectangle_volume(rmm_preset("efgm:a=0.5"), 0.0, 0.5, 0.0, 0.5), 0.234375);
  EXPECT_THROW(rectangle_volume(rmm_preset("w"), 0.5, 0.2, 0.0, 1.0), MathDomainError);
}

// Property: 2-increasingness on random rectangles.
TEST(RmmCopula, TwoIncreasingOnRandomRectangles) {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const std::string& key : presets()) {
    const RmmCopula c = rmm_preset(key);
    const MaxminCopula m = reflect_rmm_to_maxmin(c);
    for (int k = 0; k < 10000; ++k) {
      double u1 = unif(rng), u2 = unif(rng), v1 = unif(rng), v2 = unif(rng);
      if (u1 > u2) std::swap(u1, u2);
      if (v1 > v2) std::swap(v1, v2);
      ASSERT_GE(rectangle_volume(c, u1, u2, v1, v2), -1e-12) << key;
      ASSERT_GE(rectangle_volume(m, u1, u2, v1, v2), -1e-12) << key;
    }
  }
}

// Property: margins are exact and the copula is grounded.
TEST(RmmCopula, MarginsExact) {
  for (const std::string& key : presets()) {
    const RmmCopula c = rmm_preset(key);
    const MaxminCopula m = reflect_rmm_to_maxmin(c);
    for (int i = 0; i <= 200; ++i) {
      const double t = i / 200.0;
      ASSERT_EQ(c(t, 1.0), t) << key;
      ASSERT_EQ(c(1.0, t), t) << key;
      ASSERT_EQ(c(t, 0.0), 0.0) << key;
      ASSERT_EQ(c(0.0, t), 0.0) << key;
      ASSERT_NEAR(m(t, 1.0), t, 1e-15) << key;
      ASSERT_NEAR(m(1.0, t), t, 1e-15) << key;
      ASSERT_NEAR(m(t, 0.0), 0.0, 1e-15) << key;
    }
  }
}

TEST(Frechet, AllPresetsWithinBounds) {
  for (const std::string& key : presets()) {
    const FrechetReport r = frechet_bounds_check(rmm_preset(key), 201);
    EXPECT_TRUE(r.ok) << key << " worst " << r.worst_violation;
  }
  EXPECT_EQ(frechet_bounds_check(rmm_preset("pi"), 201).max_gap_upper, 0.0);
  EXPECT_LE(frechet_bounds_check(rmm_preset("w"), 201).max_gap_lower, 1e-15);
}

// Property: the starred form agrees with the plain form.
TEST(RmmCopula, StarredFormAgrees) {
  for (const std::string& key : presets()) {
    const RmmCopula c = rmm_preset(key);
    for (int i = 0; i <= 50; ++i) {
      for (int j = 0; j <= 50; ++j) {
        const double u = i / 50.0;
        const double v = j / 50.0;
        ASSERT_NEAR(eval_rmm_starred(c, u, v), eval_rmm(c, u, v), 1e-12) << key;
      }
    }
  }
}

TEST(BoundaryCurve, ClosedForms) {
  // mu(1 - u)/(2 - u) with mu = 1
  const RmmCopula c = rmm_preset("ex3c:mu=1");
  EXPECT_NEAR(stand_crossing(c, 0.0).lower, 0.5, 1e-12);
  const StandGeometry geo = boundary_curve(c, 101);
  ASSERT_FALSE(geo.empty());
  for (const CurvePoint& p : geo.boundary) EXPECT_NEAR(p.v, (1.0 - p.u) / (2.0 - p.u), 1e-11);

  const RmmCopula a = rmm_preset("ex3a:theta=1/3,eta=1/3");
  const StandGeometry ga = boundary_curve(a, 201);
  int on_segment = 0;
  for (const CurvePoint& p : ga.boundary) {
    if (p.u >= 1.0 / 3.0 && p.u <= 2.0 / 3.0) {
      EXPECT_NEAR(p.v, 1.0 - p.u, 1e-11);
      ++on_segment;
    }
  }
  EXPECT_GT(on_segment, 10);
  EXPECT_TRUE(boundary_curve(rmm_preset("pi"), 101).empty());
}

// Property: boundary points solve the level equation and v0 is nonincreasing.
TEST(BoundaryCurve, InvariantsAllPresets) {
  for (const std::string& key : presets()) {
    const RmmCopula c = rmm_preset(key);
    const StandGeometry geo = boundary_curve(c, 101);
    for (std::size_t i = 0; i < geo.boundary.size(); ++i) {
      const CurvePoint& p = geo.boundary[i];
      EXPECT_LE(std::abs(p.u * p.v - c.f()(p.u) * c.g()(p.v)), 1e-10) << key << " u=" << p.u;
      if (i > 0) EXPECT_LE(p.v, geo.boundary[i - 1].v + 1e-12) << key;
    }
  }
}

TEST(LevelCurve, Examples) {
  const auto top = level_curve(rmm_preset("ex3b"), 1.0, 11);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].u, 1.0);
  EXPECT_EQ(top[0].v, 1.0);
  for (const CurvePoint& p : level_curve(rmm_preset("pi"), 0.25, 51)) EXPECT_NEAR(p.u * p.v, 0.25, 1e-10);
  EXPECT_THROW(level_curve(rmm_preset("pi"), 0.0, 11), MathDomainError);
}

TEST(LevelCurve, SolvesEquationAllPresets) {
  for (const std::string& key : presets()) {
    const RmmCopula c = rmm_preset(key);
    for (double t : {0.01, 0.1, 0.4}) {
      for (const CurvePoint& p : level_curve(c, t, 51)) {
        EXPECT_NEAR(p.u * p.v - c.f()(p.u) * c.g()(p.v), t, 1e-10) << key;
      }
    }
  }
}

// A chord between two points of a convex level curve stays in its upper region.
TEST(LevelCurve, SmallLevelsOfPlateauExampleAreNotConvex) {
  const RmmCopula c = rmm_preset("ex3b");
  const std::vector<CurvePoint> pts = level_curve(c, 0.005, 401);
  bool chord_below = false;
  for (std::size_t i = 0; i + 2 < pts.size() && !chord_below; ++i) {
    for (std::size_t k = i + 2; k < pts.size() && !chord_below; k += 7) {
      const CurvePoint mid{0.5 * (pts[i].u + pts[k].u), 0.5 * (pts[i].v + pts[k].v)};
      if (c(mid.u, mid.v) < 0.005 - 1e-9) chord_below = true;
    }
  }
  EXPECT_TRUE(chord_below);
  // The product copula's hyperbolas are convex.
  const RmmCopula pi = rmm_preset("pi");
  const std::vector<CurvePoint> hyp = level_curve(pi, 0.1, 101);
  for (std::size_t i = 0; i + 10 < hyp.size(); i += 5) {
    const double u = 0.5 * (hyp[i].u + hyp[i + 10].u);
    const double v = 0.5 * (hyp[i].v + hyp[i + 10].v);
    EXPECT_GE(pi(u, v), 0.1 - 1e-12);
  }
}

TEST(MaxminSingularCurve, Examples) {
  const auto curve = maxmin_singular_curve(maxmin_preset("mm:ex3c:mu=1"), 101);
  ASSERT_FALSE(curve.empty());
  for (const CurvePoint& p : curve) EXPECT_NEAR(p.v, 1.0 / (2.0 - p.u), 1e-11);
  for (const CurvePoint& p : maxmin_singular_curve(maxmin_preset("mm:w"), 101)) EXPECT_NEAR(p.v, p.u, 1e-11);
  EXPECT_TRUE(maxmin_singular_curve(maxmin_preset("mm:pi"), 101).empty());
}

TEST(MaxminSingularCurve, MatchesStarEquation) {
  const MaxminCopula m = maxmin_preset("mm:ex3b");
  for (const CurvePoint& p : maxmin_singular_curve(m, 101)) {
    const ExtendedReal lower = m.generators().psi_lower_star(p.v);
    if (lower.is_infinite() || p.u == 0.0) continue;
    EXPECT_NEAR(m.generators().phi_star(p.u), lower.value(), 1e-8);
  }
}

TEST(PartialDerivative, Examples) {
  const RmmCopula pi = rmm_preset("pi");
  EXPECT_DOUBLE_EQ(partial_derivative_u(pi, 0.3, 0.7), 0.7);
  EXPECT_DOUBLE_EQ(partial_derivative_v(pi, 0.3, 0.7), 0.3);
  EXPECT_DOUBLE_EQ(partial_derivative_u(rmm_preset("w"), 0.75, 0.5), 1.0);
  EXPECT_EQ(partial_derivative_u(rmm_preset("w"), 0.25, 0.5), 0.0);
}

// Property: dC/du is a conditional distribution function in v, bounded by g-hat.
TEST(PartialDerivative, MonotoneInVAllPresets) {
  for (const std::string& key : presets()) {
    const RmmCopula c = rmm_preset(key);
    for (int i = 1; i < 50; ++i) {
      const double u = (i + 0.37) / 51.0;
      double prev = 0.0;
      for (int j = 0; j <= 100; ++j) {
        const double v = j / 100.0;
        const double d = partial_derivative_u(c, u, v);
        ASSERT_GE(d, prev - 1e-12) << key << " u=" << u << " v=" << v;
        ASSERT_GE(d, -1e-12);
        ASSERT_LE(d, 1.0 + 1e-12);
        ASSERT_LE(d, v + c.g()(v) + 1e-12);
        prev = d;
      }
    }
  }
}

}  // namespace
}  // namespace rmmcop
