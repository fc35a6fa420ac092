#include "rmmcop/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "rmmcop/measure.hpp"
#include "rmmcop/presets.hpp"

namespace rmmcop {

namespace {

constexpr std::size_t kChunk = 4096;
constexpr double kInverseTolerance = 1e-12;

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform on (0,1) with 53 random bits.
double open_uniform(std::mt19937_64& rng) {
  for (;;) {
    const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (x > 0.0) return x;
  }
}

class ColumnSampler {
 public:
  explicit ColumnSampler(const RmmCopula& c) : c_(c), cuts_(c.f().breakpoints()) {}

  void draw(std::mt19937_64& rng, CurvePoint& out, std::uint8_t& singular) const {
    double u = open_uniform(rng);
    if (std::binary_search(cuts_.begin(), cuts_.end(), u)) u = std::nextafter(u, 1.0);
    const double w = open_uniform(rng);
    const double slope = c_.f().function().derivative(u, Side::right);
    const double v0 = stand_crossing(c_, u).upper;
    const double jump = v0 > 0.0 ? v0 - slope * c_.g()(v0) : 0.0;
    out.u = u;
    if (jump > 0.0 && w <= jump) {
      out.v = v0;
      singular = 1;
      return;
    }
    // Smallest v in [v0, 1] with v - f'(u) g(v) >= w.
    double lo = v0;
    double hi = 1.0;
    while (hi - lo > kInverseTolerance) {
      const double mid = 0.5 * (lo + hi);
      if (mid - slope * c_.g()(mid) >= w) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.v = hi;
    singular = 0;
  }

 private:
  const RmmCopula& c_;
  std::vector<double> cuts_;
};

}  // namespace

std::size_t SampleSet::singular_count() const noexcept {
  return static_cast<std::size_t>(std::count(singular.begin(), singular.end(), std::uint8_t{1}));
}

SampleSet sample_rmm(const RmmCopula& c, std::size_t n, std::uint64_t seed, const SamplerOptions& options) {
  if (n == 0) throw MathDomainError("sample size must be positive");
  SampleSet out;
  out.seed = seed;
  out.source = options.source.empty() ? "rmm" : options.source;
  out.pairs.resize(n);
  out.singular.resize(n);

  const ColumnSampler sampler(c);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  auto run_chunk = [&](std::size_t k) {
    std::mt19937_64 rng(splitmix64(seed, k));
    const std::size_t end = std::min(n, (k + 1) * kChunk);
    for (std::size_t i = k * kChunk; i < end; ++i) sampler.draw(rng, out.pairs[i], out.singular[i]);
  };

  unsigned workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
  if (workers <= 1) {
    for (std::size_t k = 0; k < chunks; ++k) run_chunk(k);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t k = t; k < chunks; k += workers) run_chunk(k);
    });
  }
  for (std::thread& th : pool) th.join();
  return out;
}

SampleSet sample_maxmin(const MaxminCopula& c, std::size_t n, std::uint64_t seed, const SamplerOptions& options) {
  SamplerOptions opts = options;
  if (opts.source.empty()) opts.source = "maxmin";
  SampleSet out = sample_rmm(reflect_maxmin_to_rmm(c), n, seed, opts);
  for (CurvePoint& p : out.pairs) p.v = 1.0 - p.v;
  return out;
}

FigureDataset figure_dataset(const std::string& preset_key, std::size_t n, std::uint64_t seed,
                             const SamplerOptions& options) {
  const bool maxmin = preset_key.rfind("mm:", 0) == 0;
  const RmmCopula c = maxmin ? reflect_maxmin_to_rmm(maxmin_preset(preset_key)) : rmm_preset(preset_key);
  FigureDataset out;
  out.preset = preset_key;
  out.n = n;
  out.singular_mass = std::max(0.0, singular_mass(c));
  SamplerOptions opts = options;
  opts.source = preset_key;
  if (n == 0) {
    out.samples.seed = seed;
    out.samples.source = preset_key;
    return out;
  }
  out.samples = sample_rmm(c, n, seed, opts);
  if (maxmin) {
    for (CurvePoint& p : out.samples.pairs) p.v = 1.0 - p.v;
  }
  return out;
}

}  // namespace rmmcop
