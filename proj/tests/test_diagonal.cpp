#include <gtest/gtest.h>

#include <cmath>

#include "rmmcop/diagonal.hpp"
#include "rmmcop/errors.hpp"
#include "rmmcop/presets.hpp"

namespace rmmcop {
namespace {

DiagonalSection identity_diagonal() { return DiagonalSection({Piece{0.0, 1.0, Polynomial{0.0, 1.0}, {}, 1.0}}); }

template <typename A, typename B>
double max_gap(const A& a, const B& b, int n) {
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double u = static_cast<double>(i) / n;
      const double v = static_cast<double>(j) / n;
      worst = std::max(worst, std::abs(a(u, v) - b(u, v)));
    }
  }
  return worst;
}

TEST(DiagonalOf, Examples) {
  const DiagonalSection w = diagonal_of(rmm_preset("w"));
  for (double t : {0.0, 0.2, 0.5, 0.6, 0.9, 1.0}) EXPECT_NEAR(w(t), std::max(0.0, 2.0 * t - 1.0), 1e-15);
  EXPECT_NEAR(w.a_delta(), 0.5, 1e-14);

  const DiagonalSection asym = diagonal_of(rmm_preset("tent-halframp"));
  for (double t : {0.1, 0.25, 0.3, 0.4, 0.5, 0.7, 1.0}) {
    const double expected = t <= 0.25 ? 0.0 : (t <= 0.5 ? 2.0 * t * t - 0.5 * t : t * t);
    EXPECT_NEAR(asym(t), expected, 1e-15) << t;
  }
  const DiagonalSection pi = diagonal_of(rmm_preset("pi"));
  for (double t : {0.1, 0.5, 0.8}) EXPECT_DOUBLE_EQ(pi(t), t * t);
  EXPECT_EQ(pi.a_delta(), 0.0);
}

// Property: exact pieces agree with C(t,t) and lie between 0 and t^2.
TEST(DiagonalOf, MatchesCopulaAllPresets) {
  for (const std::string& key : standard_preset_keys()) {
    const RmmCopula c = rmm_preset(key);
    const DiagonalSection d = diagonal_of(c);
    for (int i = 0; i <= 1000; ++i) {
      const double t = i / 1000.0;
      ASSERT_NEAR(d(t), c(t, t), 1e-13) << key;
      ASSERT_GE(d(t), 0.0);
      ASSERT_LE(d(t), t * t + 1e-15);
    }
  }
}

TEST(DeltaSharp, Examples) {
  EXPECT_DOUBLE_EQ(delta_sharp(diagonal_preset("diag:pi"), 0.3), 1.0);
  EXPECT_DOUBLE_EQ(delta_sharp(diagonal_preset("diag:w"), 0.75), 8.0 / 9.0);
  const DiagonalSection three = diagonal_preset("diag:three-piece");
  for (double t : {0.26, 0.28, 1.0 - std::sqrt(2.0) / 2.0}) {
    EXPECT_NEAR(delta_sharp(three, t), (4.0 * t - 1.0) / (2.0 * t * t), 1e-13);
  }
  EXPECT_THROW(delta_sharp(three, 0.0), MathDomainError);
}

TEST(DeltaHat, Examples) {
  EXPECT_DOUBLE_EQ(delta_hat(diagonal_preset("diag:pi"), 0.4), 0.4);
  EXPECT_DOUBLE_EQ(delta_hat(diagonal_preset("diag:w"), 0.25), 0.5);
  const DiagonalSection asym = diagonal_preset("diag:tent-halframp");
  EXPECT_NEAR(delta_hat(asym, 0.375), (3.0 + std::sqrt(3.0)) / 8.0, 1e-15);
  EXPECT_DOUBLE_EQ(delta_hat(asym, 0.5), 0.5);
  EXPECT_GT(delta_hat(asym, 0.375), delta_hat(asym, 0.5));
}

TEST(InDHat, Examples) {
  EXPECT_TRUE(in_D_hat(diagonal_preset("diag:w")).member());
  EXPECT_TRUE(in_D_hat(diagonal_preset("diag:pi")).member());
  const DiagonalReport three = in_D_hat(diagonal_preset("diag:three-piece"));
  EXPECT_TRUE(three.is_diagonal());
  EXPECT_TRUE(three.sharp.ok);
  EXPECT_FALSE(three.hat.ok);
  EXPECT_FALSE(three.member());
  EXPECT_TRUE(three.grid_consistent) << three.grid_detail;
  const DiagonalReport asym = in_D_hat(diagonal_preset("diag:tent-halframp"));
  EXPECT_TRUE(asym.sharp.ok);
  EXPECT_FALSE(asym.hat.ok);
  EXPECT_GE(asym.hat.witness, 0.25);
  EXPECT_LE(asym.hat.witness, 0.5);
}

TEST(InDHat, RejectsNonDiagonals) {
  // t^2 / 2 fails delta(1) = 1.
  EXPECT_FALSE(in_D_hat(DiagonalSection({Piece{0.0, 1.0, Polynomial{0.0, 0.0, 0.5}, {}, 1.0}})).is_diagonal());
  // 3t - 2 after 2/3 breaks the Lipschitz bound.
  const DiagonalSection steep({Piece{0.0, 2.0 / 3.0, Polynomial{}, {}, 1.0},
                               Piece{2.0 / 3.0, 1.0, Polynomial{-2.0, 3.0}, {}, 1.0}});
  const DiagonalReport r = in_D_hat(steep);
  EXPECT_FALSE(r.d4.ok);
  EXPECT_FALSE(r.member());
  // The identity is a diagonal (of M) but exceeds t^2.
  const DiagonalReport id = in_D_hat(identity_diagonal());
  EXPECT_TRUE(id.is_diagonal());
  EXPECT_FALSE(id.below_square.ok);
  EXPECT_THROW(srmm_from_diagonal(identity_diagonal()), MathDomainError);
}

TEST(SrmmFromDiagonal, Examples) {
  const RmmCopula pi = srmm_from_diagonal(diagonal_preset("diag:pi"));
  EXPECT_TRUE(pi.f().is_identically_zero());
  const RmmCopula w = srmm_from_diagonal(diagonal_preset("diag:w"));
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.95}) EXPECT_NEAR(w.f()(t), std::min(t, 1.0 - t), 1e-15);
  EXPECT_EQ(w(0.25, 0.75), 0.125);
  const RmmCopula efgm = srmm_from_diagonal(diagonal_preset("diag:efgm:a=0.5"));
  for (double t : {0.1, 0.3, 0.5, 0.9}) EXPECT_NEAR(efgm.f()(t), 0.5 * t * (1.0 - t), 1e-14);
}

TEST(SrmmFromDiagonal, RadicalGeneratorForNonSquareRadicand) {
  // t^2 - delta = t^2 (1 - t)^2 (1 + t) / 4 is not a perfect square.
  const DiagonalSection d({Piece{0.0, 1.0, Polynomial{0.0, 0.0, 0.75, 0.25, 0.25, -0.25}, {}, 1.0}});
  ASSERT_TRUE(in_D_hat(d).member()) << in_D_hat(d).first_failure();
  const RmmCopula c = srmm_from_diagonal(d);
  EXPECT_TRUE(c.f().pieces().front().has_radical());
  for (int i = 0; i <= 1000; ++i) {
    const double t = i / 1000.0;
    ASSERT_NEAR(c(t, t), d(t), 1e-10);
    ASSERT_NEAR(c.f()(t), 0.5 * t * (1.0 - t) * std::sqrt(1.0 + t), 1e-12);
  }
}

// Property: positive diagonals determine the symmetric copula.
TEST(SrmmFromDiagonal, ReproducesSymmetricPresets) {
  for (const std::string& key : symmetric_preset_keys()) {
    const RmmCopula c = rmm_preset(key);
    const DiagonalSection d = diagonal_of(c);
    const RmmCopula back = srmm_from_diagonal(d);
    for (int i = 0; i <= 1000; ++i) {
      const double t = i / 1000.0;
      ASSERT_NEAR(back(t, t), d(t), 1e-10) << key;
    }
    if (srmm_uniqueness_check(d)) EXPECT_LE(max_gap(back, c, 100), 1e-9) << key;
  }
}

TEST(Bounds, WDiagonal) {
  const DiagonalBounds b = diagonal_bounds(diagonal_preset("diag:w"));
  EXPECT_FALSE(b.coincide);
  EXPECT_LE(max_gap(b.lower, rmm_preset("w"), 200), 1e-15);
  EXPECT_EQ(b.upper(0.25, 0.75), 0.125);
  const DiagonalBounds pi = diagonal_bounds(diagonal_preset("diag:pi"));
  EXPECT_TRUE(pi.coincide);
  EXPECT_EQ(max_gap(pi.lower, rmm_preset("pi"), 50), 0.0);
}

TEST(Bounds, OrderingWithIntermediateGenerator) {
  const DiagonalBounds b = diagonal_bounds(diagonal_preset("diag:w"));
  const RmmCopula mid = rmm_preset("fig2-3");
  const DiagonalSection dm = diagonal_of(mid);
  for (int i = 0; i <= 200; ++i) {
    const double t = i / 200.0;
    ASSERT_NEAR(dm(t), std::max(0.0, 2.0 * t - 1.0), 1e-15);
    for (int j = 0; j <= 200; ++j) {
      const double u = t;
      const double v = j / 200.0;
      ASSERT_LE(b.lower(u, v), mid(u, v) + 1e-15);
      ASSERT_LE(mid(u, v), b.upper(u, v) + 1e-15);
    }
  }
  // The bounds agree on [a, 1]^2.
  for (int i = 0; i <= 50; ++i) {
    for (int j = 0; j <= 50; ++j) {
      const double u = 0.5 + i / 100.0;
      const double v = 0.5 + j / 100.0;
      EXPECT_NEAR(b.lower(u, v), b.upper(u, v), 1e-15);
    }
  }
}

TEST(Uniqueness, Examples) {
  EXPECT_TRUE(srmm_uniqueness_check(diagonal_preset("diag:pi")));
  EXPECT_FALSE(srmm_uniqueness_check(diagonal_preset("diag:w")));
  EXPECT_TRUE(srmm_uniqueness_check(diagonal_preset("diag:efgm:a=0.5")));
}

TEST(Semilinear, Examples) {
  const DiagonalSection pi = diagonal_preset("diag:pi");
  EXPECT_NEAR(semilinear_from_diagonal(pi, 0.3, 0.8), 0.24, 1e-15);
  EXPECT_NEAR(semilinear_from_diagonal(identity_diagonal(), 0.3, 0.8), 0.3, 1e-15);
  EXPECT_NEAR(semilinear_from_diagonal(identity_diagonal(), 0.9, 0.2), 0.2, 1e-15);
  EXPECT_EQ(semilinear_from_diagonal(pi, 0.0, 0.0), 0.0);
}

// Property: only the product copula is semilinear among the presets.
TEST(Semilinear, OnlyProductIsSemilinear) {
  for (const std::string& key : standard_preset_keys()) {
    const RmmCopula c = rmm_preset(key);
    const DiagonalSection d = diagonal_of(c);
    const double gap = max_gap(c, [&](double u, double v) { return semilinear_from_diagonal(d, u, v); }, 100);
    if (key == "pi") {
      EXPECT_LE(gap, 1e-12);
    } else {
      EXPECT_GT(gap, 1e-4) << key;
    }
  }
}

// Property: delta# nondecreasing for every preset; delta-hat for symmetric ones.
TEST(DiagonalProperties, SharpAndHatMonotonicity) {
  for (const std::string& key : standard_preset_keys()) {
    const DiagonalSection d = diagonal_of(rmm_preset(key));
    const DiagonalReport r = in_D_hat(d, 1000);
    EXPECT_TRUE(r.sharp.ok) << key;
    for (int i = 1; i < 1000; ++i) {
      ASSERT_LE(delta_sharp(d, i / 1000.0), delta_sharp(d, (i + 1) / 1000.0) + 1e-12) << key;
    }
  }
  for (const std::string& key : symmetric_preset_keys()) {
    EXPECT_TRUE(in_D_hat(diagonal_of(rmm_preset(key))).hat.ok) << key;
  }
  EXPECT_FALSE(in_D_hat(diagonal_of(rmm_preset("tent-halframp"))).hat.ok);
}

// Property: delta#(t) = 1 - (delta-hat(t)/t - 1)^2.
TEST(DiagonalProperties, SharpHatIdentity) {
  for (const std::string& key : standard_preset_keys()) {
    const DiagonalSection d = diagonal_of(rmm_preset(key));
    for (int i = 1; i <= 1000; ++i) {
      const double t = i / 1000.0;
      const double r = delta_hat(d, t) / t - 1.0;
      ASSERT_NEAR(delta_sharp(d, t), 1.0 - r * r, 1e-12) << key;
      ASSERT_NEAR(delta_hat(d, t), t * (1.0 + std::sqrt(std::max(0.0, 1.0 - delta_sharp(d, t)))), 1e-12);
    }
  }
}

}  // namespace
}  // namespace rmmcop
