#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmmcop/copula.hpp"

namespace rmmcop {

/// Identifier of the random source recorded with every sample.
inline constexpr const char* kSamplerAlgorithm = "mt19937_64 substreams seeded by splitmix64(seed, chunk), chunk=4096";

struct SampleSet {
  std::vector<CurvePoint> pairs;
  /// 1 where the draw came from the atom on the zero-level curve.
  std::vector<std::uint8_t> singular;
  std::uint64_t seed = 0;
  std::string source;
  std::string algorithm = kSamplerAlgorithm;

  std::size_t size() const noexcept { return pairs.size(); }
  std::size_t singular_count() const noexcept;
};

struct SamplerOptions {
  /// Worker cap; 0 uses the hardware concurrency.
  unsigned threads = 1;
  std::string source;
};

/// Conditional-inverse sampling: u uniform, then v from dC/du(u, .), which has
/// an atom at the zero-level crossing and is inverted by bisection elsewhere.
/// Output is identical for any thread count. Throws MathDomainError when n = 0.
SampleSet sample_rmm(const RmmCopula& c, std::size_t n, std::uint64_t seed, const SamplerOptions& options = {});

/// Samples the reflected RMM copula and returns (u, 1 - v).
SampleSet sample_maxmin(const MaxminCopula& c, std::size_t n, std::uint64_t seed,
                        const SamplerOptions& options = {});

struct FigureDataset {
  std::string preset;
  std::size_t n = 0;
  SampleSet samples;
  /// Analytic singular mass of the preset.
  double singular_mass = 0.0;
};

/// Scatterplot data for a preset key (RMM or "mm:" maxmin). n = 0 gives an empty set.
FigureDataset figure_dataset(const std::string& preset_key, std::size_t n, std::uint64_t seed,
                             const SamplerOptions& options = {});

}  // namespace rmmcop
