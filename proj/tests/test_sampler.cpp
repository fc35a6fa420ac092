#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rmmcop/errors.hpp"
#include "rmmcop/inference.hpp"
#include "rmmcop/io.hpp"
#include "rmmcop/measure.hpp"
#include "rmmcop/presets.hpp"
#include "rmmcop/sampler.hpp"

namespace rmmcop {
namespace {

constexpr std::size_t kN = 100000;

double ks_statistic(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max({d, (i + 1) / n - x[i], x[i] - i / n});
  }
  return d;
}

template <typename Copula>
double sup_distance(const EmpiricalCopula& e, const Copula& c) {
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) worst = std::max(worst, std::abs(e(i / 20.0, j / 20.0) - c(i / 20.0, j / 20.0)));
  }
  return worst;
}

TEST(Sampler, RejectsEmptyRequest) { EXPECT_THROW(sample_rmm(rmm_preset("pi"), 0, 1), MathDomainError); }

TEST(Sampler, DeterministicAcrossThreadCounts) {
  const RmmCopula c = rmm_preset("ex3b");
  SamplerOptions one;
  SamplerOptions four;
  four.threads = 4;
  const SampleSet a = sample_rmm(c, 20000, 99, one);
  const SampleSet b = sample_rmm(c, 20000, 99, four);
  const SampleSet d = sample_rmm(c, 20000, 100, one);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a.pairs[i].u, b.pairs[i].u);
    ASSERT_EQ(a.pairs[i].v, b.pairs[i].v);
    ASSERT_EQ(a.singular[i], b.singular[i]);
  }
  EXPECT_NE(a.pairs[0].u, d.pairs[0].u);
  EXPECT_EQ(a.seed, 99u);
  EXPECT_FALSE(a.algorithm.empty());
}

TEST(Sampler, ByteIdenticalCsv) {
  auto render = [] {
    std::ostringstream os;
    write_samples_csv(os, figure_dataset("ex3c:mu=1", 5000, 7).samples);
    return os.str();
  };
  EXPECT_EQ(render(), render());
}

TEST(Sampler, ProductIsUniform) {
  const SampleSet s = sample_rmm(rmm_preset("pi"), kN, 1234);
  std::vector<int> cells(100, 0);
  for (const CurvePoint& p : s.pairs) ++cells[static_cast<int>(p.u * 10) * 10 + static_cast<int>(p.v * 10)];
  double chi2 = 0.0;
  const double expected = kN / 100.0;
  for (int c : cells) chi2 += (c - expected) * (c - expected) / expected;
  // Upper 1e-3 quantile of chi-square with 99 degrees of freedom.
  EXPECT_LT(chi2, 148.23);
  EXPECT_EQ(s.singular_count(), 0u);
}

TEST(Sampler, SegmentExampleSingularFraction) {
  const SampleSet s = sample_rmm(rmm_preset("ex3a:theta=1/3,eta=1/3"), kN, 77);
  std::size_t on_segment = 0;
  for (const CurvePoint& p : s.pairs) {
    if (std::abs(p.u + p.v - 1.0) <= 1e-9 && p.u >= 1.0 / 3.0 && p.u <= 2.0 / 3.0) ++on_segment;
  }
  EXPECT_NEAR(static_cast<double>(on_segment) / kN, 1.0 / 3.0, 0.01);
}

TEST(Sampler, WIsFullySingular) {
  const SampleSet s = sample_rmm(rmm_preset("w"), 10000, 5);
  for (const CurvePoint& p : s.pairs) ASSERT_NEAR(p.v, 1.0 - p.u, 1e-12);
  EXPECT_EQ(s.singular_count(), s.size());
}

TEST(Sampler, MaxminExamples) {
  const SampleSet m = sample_maxmin(maxmin_preset("mm:w"), 10000, 5);
  for (const CurvePoint& p : m.pairs) ASSERT_NEAR(p.v, p.u, 1e-12);

  const MaxminCopula efgm = maxmin_preset("mm:efgm:a=0.5");
  const SampleSet e = sample_maxmin(efgm, kN, 6);
  EXPECT_LE(sup_distance(EmpiricalCopula(e.pairs), efgm), 0.01);

  const SampleSet c = sample_maxmin(maxmin_preset("mm:ex3c:mu=1"), kN, 8);
  std::size_t on_curve = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.singular[i] && std::abs(c.pairs[i].v - 1.0 / (2.0 - c.pairs[i].u)) <= 1e-9) ++on_curve;
  }
  EXPECT_NEAR(static_cast<double>(on_curve) / kN, std::log(4.0) - 1.0, 0.01);
}

// Properties: uniform margins, singular fraction and empirical fit for every preset.
TEST(Sampler, FidelityAllPresets) {
  std::vector<std::string> keys = standard_preset_keys();
  for (const std::string& k : figure2_keys()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  const double ks_limit = 1.63 / std::sqrt(static_cast<double>(kN));
  for (const std::string& key : keys) {
    const FigureDataset ds = figure_dataset(key, kN, 31337);
    std::vector<double> us;
    std::vector<double> vs;
    for (const CurvePoint& p : ds.samples.pairs) {
      us.push_back(p.u);
      vs.push_back(p.v);
    }
    EXPECT_LE(ks_statistic(us), ks_limit) << key;
    EXPECT_LE(ks_statistic(vs), ks_limit) << key;
    const double s = ds.singular_mass;
    const double se = std::sqrt(s * (1.0 - s) / kN);
    const double frac = static_cast<double>(ds.samples.singular_count()) / kN;
    EXPECT_LE(std::abs(frac - s), 3.0 * se + 1e-12) << key;
    EXPECT_LE(sup_distance(EmpiricalCopula(ds.samples.pairs), rmm_preset(key)), 0.01) << key;
  }
}

TEST(FigureDataset, FigureOneShapes) {
  const std::vector<std::string> keys = figure1_keys();
  ASSERT_EQ(keys.size(), 6u);
  ASSERT_EQ(figure2_keys().size(), 6u);
  EXPECT_GT(figure_dataset(keys[0], 20000, 1).samples.singular_count(), 0u);
  EXPECT_EQ(figure_dataset(keys[1], 20000, 1).samples.singular_count(), 0u);
  EXPECT_EQ(figure_dataset(keys[2], 20000, 1).samples.singular_count(), 0u);
  const FigureDataset empty = figure_dataset(keys[0], 0, 1);
  std::ostringstream os;
  write_samples_csv(os, empty.samples);
  EXPECT_EQ(os.str(), "u,v,singular\n");
}

}  // namespace
}  // namespace rmmcop
