#include "rmmcop/inference.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace rmmcop {

namespace {

constexpr double kAnalyticThreshold = 1e-9;
constexpr double kDiagonalZero = 1e-12;
constexpr double kUminTolerance = 1e-10;

// Max-method ranks: rank_i = #{j : x_j <= x_i}.
std::vector<std::uint32_t> max_ranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return x[a] < x[b]; });
  std::vector<std::uint32_t> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = static_cast<std::uint32_t>(j + 1);
    i = j + 1;
  }
  return rank;
}

struct Candidate {
  double v;
  double score;
  double da;
  double db;
};

// Admissible auxiliary points for the quotient Delta(u,v)/Delta(anchor,v):
// both points in the stand and a denominator above threshold.
std::vector<Candidate> admissible(const CopulaEvaluator& c, double u, double anchor_u, int m) {
  const double thr = quotient_threshold(c);
  std::vector<Candidate> out;
  for (int j = 1; j <= m; ++j) {
    const double v = static_cast<double>(j) / (m + 1);
    const double ca = c(u, v);
    const double cb = c(anchor_u, v);
    if (!(ca > thr && cb > thr)) continue;
    const double db = anchor_u * v - cb;
    if (!(db > thr)) continue;
    const double da = std::max(0.0, u * v - ca);
    out.push_back({v, std::min(da, db), da, db});
  }
  return out;
}

// Refines the scan until at least `wanted` admissible points are found.
std::vector<Candidate> admissible_refined(const CopulaEvaluator& c, double u, double anchor_u, int v_scan,
                                          std::size_t wanted = 1) {
  std::vector<Candidate> found;
  for (int m : {v_scan, 1001, 10001}) {
    if (m < v_scan) continue;
    found = admissible(c, u, anchor_u, m);
    if (found.size() >= wanted) break;
  }
  return found;
}

double quotient_value(const CopulaEvaluator& c, const Candidate& cand, double anchor_f) {
  if (cand.da <= quotient_threshold(c)) return 0.0;
  return anchor_f * cand.da / cand.db;
}

}  // namespace

std::uint32_t EmpiricalCopula::BitLevel::rank1(std::uint32_t i) const {
  const std::uint32_t w = i >> 6;
  const std::uint32_t b = i & 63u;
  std::uint32_t r = prefix[w];
  if (b != 0) r += static_cast<std::uint32_t>(std::popcount(words[w] & ((std::uint64_t{1} << b) - 1)));
  return r;
}

EmpiricalCopula::EmpiricalCopula(const std::vector<CurvePoint>& samples) : n_(samples.size()) {
  if (n_ == 0) throw MathDomainError("empirical copula needs at least one sample");
  if (n_ >= std::numeric_limits<std::uint32_t>::max() / 2) throw MathDomainError("sample too large");
  std::vector<double> us(n_);
  std::vector<double> vs(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    us[i] = samples[i].u;
    vs[i] = samples[i].v;
  }
  u_rank_ = max_ranks(us);
  v_rank_ = max_ranks(vs);

  std::vector<std::uint32_t> order(n_);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return u_rank_[a] < u_rank_[b]; });
  u_rank_sorted_.resize(n_);
  std::vector<std::uint32_t> seq(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    u_rank_sorted_[k] = u_rank_[order[k]];
    seq[k] = v_rank_[order[k]];
  }

  const int bits = std::max(1, static_cast<int>(std::bit_width(static_cast<std::uint32_t>(n_))));
  const std::size_t n_words = n_ / 64 + 1;
  std::vector<std::uint32_t> next(n_);
  for (int l = bits - 1; l >= 0; --l) {
    BitLevel level;
    level.words.assign(n_words, 0);
    level.prefix.assign(n_words + 1, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if ((seq[i] >> l) & 1u) level.words[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    for (std::size_t w = 0; w < n_words; ++w) {
      level.prefix[w + 1] = level.prefix[w] + static_cast<std::uint32_t>(std::popcount(level.words[w]));
    }
    std::size_t z = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!((seq[i] >> l) & 1u)) next[z++] = seq[i];
    }
    level.zeros = static_cast<std::uint32_t>(z);
    for (std::size_t i = 0; i < n_; ++i) {
      if ((seq[i] >> l) & 1u) next[z++] = seq[i];
    }
    seq.swap(next);
    levels_.push_back(std::move(level));
  }
}

std::uint32_t EmpiricalCopula::max_rank_at(double x) const {
  const double scale = static_cast<double>(n_ + 1);
  if (!(x > 0.0)) return 0;
  if (x >= 1.0) return static_cast<std::uint32_t>(n_);
  auto r = static_cast<std::int64_t>(std::floor(x * scale));
  r = std::clamp<std::int64_t>(r, 0, static_cast<std::int64_t>(n_));
  while (r < static_cast<std::int64_t>(n_) && static_cast<double>(r + 1) / scale <= x) ++r;
  while (r > 0 && static_cast<double>(r) / scale > x) --r;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t EmpiricalCopula::count_le(std::uint32_t prefix, std::uint32_t bound) const {
  const std::uint64_t x = static_cast<std::uint64_t>(bound) + 1;  // count values < x
  const int bits = static_cast<int>(levels_.size());
  if (x >= (std::uint64_t{1} << bits)) return prefix;
  std::uint32_t lo = 0;
  std::uint32_t hi = prefix;
  std::uint32_t result = 0;
  for (int k = 0; k < bits; ++k) {
    const int l = bits - 1 - k;
    const BitLevel& level = levels_[k];
    const std::uint32_t one_lo = level.rank1(lo);
    const std::uint32_t one_hi = level.rank1(hi);
    if ((x >> l) & 1u) {
      result += (hi - one_hi) - (lo - one_lo);
      lo = level.zeros + one_lo;
      hi = level.zeros + one_hi;
    } else {
      lo -= one_lo;
      hi -= one_hi;
    }
  }
  return result;
}

double EmpiricalCopula::operator()(double u, double v) const {
  const std::uint32_t ru = max_rank_at(u);
  const std::uint32_t rv = max_rank_at(v);
  if (ru == 0 || rv == 0) return 0.0;
  const auto prefix = static_cast<std::uint32_t>(
      std::upper_bound(u_rank_sorted_.begin(), u_rank_sorted_.end(), ru) - u_rank_sorted_.begin());
  return static_cast<double>(count_le(prefix, rv)) / static_cast<double>(n_);
}

std::vector<CurvePoint> EmpiricalCopula::pseudo_observations() const {
  std::vector<CurvePoint> out(n_);
  const double scale = static_cast<double>(n_ + 1);
  for (std::size_t i = 0; i < n_; ++i) out[i] = {u_rank_[i] / scale, v_rank_[i] / scale};
  return out;
}

double margin_tolerance(const CopulaEvaluator& c) {
  const std::size_t n = c.sample_size();
  return n == 0 ? kAnalyticThreshold : 2.0 / std::sqrt(static_cast<double>(n));
}

double quotient_threshold(const CopulaEvaluator& c) {
  const std::size_t n = c.sample_size();
  return n == 0 ? kAnalyticThreshold : 10.0 / static_cast<double>(n);
}

Gap independence_gap(const CopulaEvaluator& c, double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) throw MathDomainError("argument outside [0,1]^2");
  const double raw = u * v - c(u, v);
  Gap g;
  g.value = std::max(0.0, raw);
  g.clamped = raw < -margin_tolerance(c);
  return g;
}

double delta_C(const CopulaEvaluator& c, double u, double v) { return independence_gap(c, u, v).value; }

double q_C(const CopulaEvaluator& c, double u1, double v1, double u2, double v2) {
  const double den = delta_C(c, u2, v2);
  if (!(den > quotient_threshold(c))) {
    throw UndefinedQuotientError("Q_C undefined: denominator Delta_C(u2,v2) is not above the threshold");
  }
  return delta_C(c, u1, v1) / den;
}

double find_u_min(const CopulaEvaluator& c) {
  const bool empirical = c.sample_size() > 0;
  auto vanishes = [&](double t) {
    const double d = c(t, t);
    return empirical ? d == 0.0 : d / (t * t) <= kDiagonalZero;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kUminTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (vanishes(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

bool looks_like_independence(const CopulaEvaluator& c) {
  const double thr = quotient_threshold(c);
  for (int i = 1; i < 21; ++i) {
    for (int j = 1; j < 21; ++j) {
      const double u = i / 21.0;
      const double v = j / 21.0;
      if (std::abs(u * v - c(u, v)) > thr) return false;
    }
  }
  return true;
}

RecoveredPoint recover_at(const CopulaEvaluator& c, double u, double anchor_u, double anchor_f, int v_scan) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (u == anchor_u) return {u, anchor_f, true, nan};
  if (u <= 0.0) return {u, 0.0, true, nan};
  const std::vector<Candidate> found = admissible_refined(c, u, anchor_u, v_scan);
  if (found.empty()) return {u, nan, false, nan};
  const Candidate* best = &found.front();
  for (const Candidate& cand : found) {
    if (cand.score > best->score) best = &cand;
  }
  return {u, quotient_value(c, *best, anchor_f), true, best->v};
}

std::vector<double> recover_candidates(const CopulaEvaluator& c, double u, double anchor_u, double anchor_f,
                                       int count, int v_scan) {
  std::vector<Candidate> found = admissible_refined(c, u, anchor_u, v_scan, static_cast<std::size_t>(std::max(count, 1)));
  std::stable_sort(found.begin(), found.end(),
                   [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  std::vector<double> out;
  for (std::size_t i = 0; i < found.size() && static_cast<int>(i) < count; ++i) {
    out.push_back(quotient_value(c, found[i], anchor_f));
  }
  return out;
}

RecoveryResult recover_generator(const CopulaEvaluator& c, const RecoveryOptions& options) {
  if (options.grid_n < 1 && options.u_values.empty()) throw MathDomainError("empty recovery grid");
  std::vector<double> grid = options.u_values;
  if (grid.empty()) {
    for (int i = 1; i <= options.grid_n; ++i) grid.push_back(static_cast<double>(i) / options.grid_n);
  }
  RecoveryResult result;
  if (looks_like_independence(c)) {
    result.independence = true;
    for (double u : grid) result.points.push_back({u, 0.0, true, std::numeric_limits<double>::quiet_NaN()});
    return result;
  }
  result.u_min = find_u_min(c);
  if (result.u_min > 0.0) {
    result.anchor_u = result.u_min;
    result.anchor_f = result.u_min;
  } else {
    if (!options.allow_ratio) {
      throw AnchorUndefinedError("u_min = 0: anchored recovery f(u_min) = u_min is unavailable");
    }
    // Symmetric copulas have Delta_C(t,t) = f(t)^2 on the stand.
    double best = -1.0;
    for (int i = 1; i < 100; ++i) {
      const double t = i / 100.0;
      const double d = delta_C(c, t, t);
      if (c(t, t) > quotient_threshold(c) && d > best) {
        best = d;
        result.anchor_u = t;
      }
    }
    if (best <= quotient_threshold(c)) throw AnchorUndefinedError("no usable reference point for ratio recovery");
    result.anchor_f = std::sqrt(best);
    result.ratio_based = true;
  }
  for (double u : grid) result.points.push_back(recover_at(c, u, result.anchor_u, result.anchor_f, options.v_scan));
  return result;
}

AssembledRmm::AssembledRmm(std::shared_ptr<const CopulaEvaluator> c1, std::shared_ptr<const CopulaEvaluator> c2,
                           int w_scan)
    : c1_(std::move(c1)), c2_(std::move(c2)), w_scan_(w_scan) {
  pi1_ = looks_like_independence(*c1_);
  pi2_ = looks_like_independence(*c2_);
  if (!pi1_) u_min_ = find_u_min(*c1_);
  if (!pi2_) v_min_ = find_u_min(*c2_);
  if ((!pi1_ && u_min_ <= 0.0) || (!pi2_ && v_min_ <= 0.0)) {
    throw AnchorUndefinedError("closed-form assembly needs u_min > 0 and v_min > 0");
  }
}

double AssembledRmm::factor(int which, double t) const {
  if ((which == 0 ? pi1_ : pi2_) || t <= 0.0) return 0.0;
  const CopulaEvaluator& c = which == 0 ? *c1_ : *c2_;
  const double anchor = which == 0 ? u_min_ : v_min_;
  const RecoveredPoint p = recover_at(c, t, anchor, anchor, w_scan_);
  if (!p.valid) throw NumericalError("no admissible auxiliary point for the anchored quotient", 0.0);
  return p.f_u;
}

std::vector<double> AssembledRmm::factor_candidates(int which, double t, int count) const {
  if ((which == 0 ? pi1_ : pi2_) || t <= 0.0) return std::vector<double>(count, 0.0);
  const CopulaEvaluator& c = which == 0 ? *c1_ : *c2_;
  const double anchor = which == 0 ? u_min_ : v_min_;
  return recover_candidates(c, t, anchor, anchor, count, w_scan_);
}

double AssembledRmm::operator()(double u, double v) const {
  if (u <= 0.0 || v <= 0.0) return 0.0;
  const double f1 = factor(0, u);
  if (f1 == 0.0) return u * v;
  return std::max(0.0, u * v - f1 * factor(1, v));
}

std::shared_ptr<AssembledRmm> assemble_rmm_from_two_srmm(std::shared_ptr<const CopulaEvaluator> c1,
                                                         std::shared_ptr<const CopulaEvaluator> c2) {
  return std::make_shared<AssembledRmm>(std::move(c1), std::move(c2));
}

std::shared_ptr<AssembledMaxmin> maxmin_closed_form(std::shared_ptr<const CopulaEvaluator> c1,
                                                    std::shared_ptr<const CopulaEvaluator> c2) {
  return std::make_shared<AssembledMaxmin>(assemble_rmm_from_two_srmm(std::move(c1), std::move(c2)));
}

EmpiricalCopula empirical_copula(const std::vector<CurvePoint>& samples) { return EmpiricalCopula(samples); }

}  // namespace rmmcop
