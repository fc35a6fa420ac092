#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rmmcop/copula.hpp"

namespace rmmcop {

/// Rank-based empirical copula C_n(u,v) = #{i : R_i/(n+1) <= u, S_i/(n+1) <= v} / n.
///
/// Queries run in O(log n) through a wavelet matrix over the V-ranks listed
/// in U-rank order.
class EmpiricalCopula final : public CopulaEvaluator {
 public:
  explicit EmpiricalCopula(const std::vector<CurvePoint>& samples);

  double operator()(double u, double v) const override;
  std::size_t sample_size() const override { return n_; }

  /// Pseudo-observations (R_i/(n+1), S_i/(n+1)) in input order.
  std::vector<CurvePoint> pseudo_observations() const;

 private:
  struct BitLevel {
    std::vector<std::uint64_t> words;
    std::vector<std::uint32_t> prefix;  // ones before each word
    std::uint32_t zeros = 0;
    std::uint32_t rank1(std::uint32_t i) const;
  };

  std::uint32_t max_rank_at(double x) const;
  /// Number of the first `prefix` positions (in U order) whose V-rank is <= bound.
  std::uint32_t count_le(std::uint32_t prefix, std::uint32_t bound) const;

  std::size_t n_ = 0;
  std::vector<std::uint32_t> u_rank_sorted_;
  std::vector<std::uint32_t> u_rank_;
  std::vector<std::uint32_t> v_rank_;
  std::vector<BitLevel> levels_;
};

/// Independence gap uv - C(u,v), clamped at 0.
struct Gap {
  double value = 0.0;
  /// The raw gap was below -tolerance: the input is not negatively quadrant dependent here.
  bool clamped = false;
};

/// Margin tolerance of an evaluator: 1e-9 analytic, 2/sqrt(n) empirical.
double margin_tolerance(const CopulaEvaluator& c);
/// Denominator threshold of Q_C: 1e-9 analytic, 10/n empirical.
double quotient_threshold(const CopulaEvaluator& c);

Gap independence_gap(const CopulaEvaluator& c, double u, double v);
double delta_C(const CopulaEvaluator& c, double u, double v);

/// Delta_C(u1,v1) / Delta_C(u2,v2). Throws UndefinedQuotientError when the
/// denominator does not exceed the threshold.
double q_C(const CopulaEvaluator& c, double u1, double v1, double u2, double v2);

/// Largest t with C(t,t) = 0 (analytic: C(t,t)/t^2 <= 1e-12), by bisection to 1e-10.
double find_u_min(const CopulaEvaluator& c);

/// True when Delta_C stays within the threshold on a 21 x 21 grid.
bool looks_like_independence(const CopulaEvaluator& c);

struct RecoveredPoint {
  double u = 0.0;
  double f_u = 0.0;
  bool valid = false;
  /// Auxiliary point v used in the quotient (NaN when none was needed).
  double v_used = 0.0;
};

struct RecoveryResult {
  double u_min = 0.0;
  /// Anchor (u_ref, f(u_ref)); equals (u_min, u_min) for anchored recovery.
  double anchor_u = 0.0;
  double anchor_f = 0.0;
  /// Recovery used the ratio fallback anchored at argmax Delta_C(t,t).
  bool ratio_based = false;
  bool independence = false;
  std::vector<RecoveredPoint> points;
};

struct RecoveryOptions {
  /// u grid i/grid_n, i = 1..grid_n, unless u_values is set.
  int grid_n = 100;
  std::vector<double> u_values;
  /// Auxiliary scan j/(v_scan+1), j = 1..v_scan, refined when no point is admissible.
  int v_scan = 101;
  /// Allow the ratio fallback when u_min = 0 instead of throwing.
  bool allow_ratio = false;
};

/// f(u) = u_min Q_C(u,v; u_min,v) on a grid. Throws AnchorUndefinedError when
/// u_min = 0 unless options.allow_ratio is set; an independence evaluator
/// yields f = 0.
RecoveryResult recover_generator(const CopulaEvaluator& c, const RecoveryOptions& options = {});

/// One recovered value with anchor (anchor_u, anchor_f), or invalid.
RecoveredPoint recover_at(const CopulaEvaluator& c, double u, double anchor_u, double anchor_f,
                          int v_scan = 101);

/// Up to `count` recovered values of f(u) using distinct admissible auxiliary
/// points, best first.
std::vector<double> recover_candidates(const CopulaEvaluator& c, double u, double anchor_u,
                                       double anchor_f, int count, int v_scan = 101);

/// C(u,v) = max{0, uv - F1(u) F2(v)} with each factor recovered from a
/// symmetric RMM evaluator by anchored quotients.
class AssembledRmm final : public CopulaEvaluator {
 public:
  /// Throws AnchorUndefinedError when a non-independence input has u_min = 0.
  AssembledRmm(std::shared_ptr<const CopulaEvaluator> c1, std::shared_ptr<const CopulaEvaluator> c2,
               int w_scan = 101);

  double operator()(double u, double v) const override;

  double u_min() const noexcept { return u_min_; }
  double v_min() const noexcept { return v_min_; }
  /// Recovered first (which = 0) or second (which = 1) generator at t.
  double factor(int which, double t) const;
  /// Recovered values of a factor using `count` different admissible w.
  std::vector<double> factor_candidates(int which, double t, int count = 5) const;

 private:
  std::shared_ptr<const CopulaEvaluator> c1_;
  std::shared_ptr<const CopulaEvaluator> c2_;
  int w_scan_;
  bool pi1_ = false;
  bool pi2_ = false;
  double u_min_ = 0.0;
  double v_min_ = 0.0;
};

std::shared_ptr<AssembledRmm> assemble_rmm_from_two_srmm(std::shared_ptr<const CopulaEvaluator> c1,
                                                         std::shared_ptr<const CopulaEvaluator> c2);

/// Maxmin copula u - C(u, 1 - v) with C assembled from two symmetric RMM factors.
class AssembledMaxmin final : public CopulaEvaluator {
 public:
  explicit AssembledMaxmin(std::shared_ptr<const AssembledRmm> rmm) : rmm_(std::move(rmm)) {}
  double operator()(double u, double v) const override { return u - (*rmm_)(u, 1.0 - v); }
  /// Reflection of the second factor's anchor.
  double v_max() const noexcept { return 1.0 - rmm_->v_min(); }

 private:
  std::shared_ptr<const AssembledRmm> rmm_;
};

std::shared_ptr<AssembledMaxmin> maxmin_closed_form(std::shared_ptr<const CopulaEvaluator> c1,
                                                    std::shared_ptr<const CopulaEvaluator> c2);

/// Pseudo-observation empirical copula of a sample.
EmpiricalCopula empirical_copula(const std::vector<CurvePoint>& samples);

}  // namespace rmmcop
