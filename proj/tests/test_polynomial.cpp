#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rmmcop/piecewise.hpp"
#include "rmmcop/polynomial.hpp"

namespace rmmcop {
namespace {

TEST(Polynomial, EvaluatesAndDifferentiates) {
  const Polynomial p{1.0, -3.0, 0.0, 2.0};  // 1 - 3t + 2t^3
  EXPECT_DOUBLE_EQ(p(0.5), 1.0 - 1.5 + 0.25);
  EXPECT_EQ(p.degree(), 3);
  const Polynomial d = p.derivative();
  EXPECT_DOUBLE_EQ(d(0.5), -3.0 + 1.5);
  EXPECT_EQ(Polynomial{}.degree(), -1);
}

TEST(Polynomial, ComposeAffineMatchesDirectEvaluation) {
  const Polynomial p{0.25, -1.0, 3.0, -0.5};
  const Polynomial q = p.compose_affine(1.0, -1.0);
  for (double t : {0.0, 0.1, 0.37, 0.9, 1.0}) EXPECT_NEAR(q(t), p(1.0 - t), 1e-15);
}

TEST(Polynomial, RealRootsOfFactoredCubic) {
  // (t - 0.2)(t - 0.5)(t - 0.9)
  const Polynomial p = Polynomial{-0.2, 1.0} * Polynomial{-0.5, 1.0} * Polynomial{-0.9, 1.0};
  const auto r = real_roots(p, 0.0, 1.0);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], 0.2, 1e-13);
  EXPECT_NEAR(r[1], 0.5, 1e-13);
  EXPECT_NEAR(r[2], 0.9, 1e-13);
  EXPECT_TRUE(real_roots(p, 0.3, 0.4).empty());
}

TEST(Polynomial, DoubleRootIsFound) {
  const Polynomial p = Polynomial{-0.25, 1.0} * Polynomial{-0.25, 1.0};
  const auto r = real_roots(p, 0.0, 1.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 0.25, 1e-12);
}

TEST(Polynomial, RandomCubicsRootsVanish) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const Polynomial p{uni(rng), uni(rng), uni(rng), uni(rng)};
    for (double r : real_roots(p, 0.0, 1.0)) EXPECT_NEAR(p(r), 0.0, 1e-12);
    // Sign is constant between consecutive roots.
    auto r = real_roots(p, 0.0, 1.0);
    r.insert(r.begin(), 0.0);
    r.push_back(1.0);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      const double a = r[i], b = r[i + 1];
      if (b - a < 1e-6) continue;
      const double s = p(a + 0.01 * (b - a)) * p(b - 0.01 * (b - a));
      EXPECT_GE(s, -1e-12);
    }
  }
}

TEST(Polynomial, MinimumOnInterval) {
  const Polynomial p{0.0, -1.0, 1.0};  // t^2 - t, min at 1/2
  const Extremum m = minimum_on(p, 0.0, 1.0);
  EXPECT_NEAR(m.at, 0.5, 1e-14);
  EXPECT_NEAR(m.value, -0.25, 1e-15);
  EXPECT_NEAR(maximum_on(p, 0.0, 1.0).value, 0.0, 1e-15);
}

TEST(Polynomial, SquareRootOfPerfectSquare) {
  const Polynomial q{0.0, 0.5, -0.5};  // 0.5 t (1 - t)
  const auto r = polynomial_sqrt(q * q);
  ASSERT_TRUE(r.has_value());
  for (double t : {0.1, 0.4, 0.8}) EXPECT_NEAR(std::abs((*r)(t)), q(t), 1e-14);
  EXPECT_FALSE(polynomial_sqrt(Polynomial{0.0, 1.0}).has_value());
  EXPECT_FALSE(polynomial_sqrt(Polynomial{1.0, 0.0, 1.0, 0.5}).has_value());
}

TEST(Surd, SignCheckOfRadicalPiece) {
  // sqrt(t) - 0.5 changes sign at 1/4.
  const Piece piece{0.0, 1.0, Polynomial{-0.5}, Polynomial{0.0, 1.0}, 1.0};
  const SurdExpression e = to_surd(piece, {Polynomial{}, Polynomial{1.0}, Polynomial{}});
  const SignCheck low = check_nonnegative(e, 0.0, 1.0);
  EXPECT_FALSE(low.ok);
  EXPECT_LT(low.witness, 0.25);
  EXPECT_TRUE(check_nonnegative(e, 0.25, 1.0).ok);
  // The 2 sqrt(R) factor adds the radicand root at 0.
  const auto r = roots(e, 0.0, 1.0);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 0.0, 1e-12);
  EXPECT_NEAR(r[1], 0.25, 1e-12);
}

TEST(Surd, FlatExpressionIsReported) {
  const Piece piece{0.0, 1.0, Polynomial{0.0, 1.0}, Polynomial{}, 1.0};
  // f - t f' = t - t = 0 identically.
  const SignCheck sc =
      check_nonnegative(to_surd(piece, {Polynomial{}, Polynomial{1.0}, Polynomial{0.0, -1.0}}), 0.0, 1.0);
  EXPECT_TRUE(sc.ok);
  EXPECT_TRUE(sc.flat);
}

TEST(Piecewise, PieceSelectionAtBreakpoints) {
  const PiecewiseFunction fn({Piece{0.0, 0.5, Polynomial{0.0, 1.0}, {}, 1.0},
                              Piece{0.5, 1.0, Polynomial{1.0, -1.0}, {}, 1.0}});
  EXPECT_DOUBLE_EQ(fn.derivative(0.5, Side::left), 1.0);
  EXPECT_DOUBLE_EQ(fn.derivative(0.5, Side::right), -1.0);
  EXPECT_DOUBLE_EQ(fn.value(0.5), 0.5);
  EXPECT_TRUE(fn.structure_error().empty());
}

TEST(Piecewise, StructuralErrors) {
  const PiecewiseFunction gap({Piece{0.0, 0.4, Polynomial{0.0}, {}, 1.0},
                               Piece{0.5, 1.0, Polynomial{0.0}, {}, 1.0}});
  EXPECT_NE(gap.structure_error().find("gap"), std::string::npos);
  const PiecewiseFunction overlap({Piece{0.0, 0.6, Polynomial{0.0}, {}, 1.0},
                                   Piece{0.5, 1.0, Polynomial{0.0}, {}, 1.0}});
  EXPECT_NE(overlap.structure_error().find("overlap"), std::string::npos);
  const PiecewiseFunction jump({Piece{0.0, 0.5, Polynomial{0.0}, {}, 1.0},
                                Piece{0.5, 1.0, Polynomial{1.0}, {}, 1.0}});
  EXPECT_NE(jump.structure_error().find("discontinuity"), std::string::npos);
}

}  // namespace
}  // namespace rmmcop
