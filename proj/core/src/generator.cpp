#include "rmmcop/generator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rmmcop/errors.hpp"

namespace rmmcop {

namespace {

constexpr int kMaxPolyDegree = 3;
constexpr int kMaxRadicandDegree = 6;

Piece zero_piece() { return Piece{0.0, 1.0, Polynomial{}, Polynomial{}, 1.0}; }

// Multiplicity of t = 0 as a root of p (up to degree + 1 for the zero polynomial).
int zero_multiplicity(const Polynomial& p) {
  const auto c = p.coeffs();
  const double tol = kTolerance * std::max(1.0, p.scale());
  int k = 0;
  while (k < static_cast<int>(c.size()) && std::abs(c[k]) <= tol) ++k;
  return k;
}

std::string describe(double t) {
  std::ostringstream os;
  os.precision(12);
  os << t;
  return os.str();
}

// Runs a linear-form sign check over every piece and folds the result.
ConditionResult check_pieces(const PiecewiseFunction& fn, const LinearForm& form,
                             const std::string& label) {
  ConditionResult out;
  for (const Piece& p : fn.pieces()) {
    const SignCheck sc = check_nonnegative(to_surd(p, form), p.lo, p.hi);
    if (sc.flat) out.boundary_case = true;
    if (!sc.ok && out.ok) {
      out.ok = false;
      out.witness = sc.witness;
      out.detail = label + " violated near t=" + describe(sc.witness);
    }
  }
  return out;
}

Piece shifted_by_identity(const Piece& p, double sign) {
  Piece q = p;
  q.poly += Polynomial::identity() * sign;
  return q;
}

// t -> 1 - t reflection combined with c - t - p(1 - t): maps g pieces to psi
// pieces and back.
std::vector<Piece> reflect_complement(const std::vector<Piece>& pieces, double constant) {
  std::vector<Piece> out;
  out.reserve(pieces.size());
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    Piece q;
    q.lo = 1.0 - it->hi;
    q.hi = 1.0 - it->lo;
    q.poly = Polynomial({constant, -1.0}) - it->poly.compose_affine(1.0, -1.0);
    q.radicand = it->radicand.compose_affine(1.0, -1.0);
    q.root_sign = -it->root_sign;
    out.push_back(std::move(q));
  }
  // Reflection of exact breakpoints can drift by an ulp; restore abutment.
  out.front().lo = 0.0;
  out.back().hi = 1.0;
  for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i + 1].lo = out[i].hi;
  return out;
}

}  // namespace

Generator::Generator() : fn_({zero_piece()}), zero_limit_(0.0) {}

Generator::Generator(std::vector<Piece> pieces) : fn_(std::move(pieces)) {
  zero_limit_ = fn_.empty() ? 0.0 : fn_.pieces().front().value(0.0);
}

Generator::Generator(std::vector<Piece> pieces, double zero_limit)
    : fn_(std::move(pieces)), zero_limit_(zero_limit) {}

Generator Generator::polynomial(Polynomial p) {
  return Generator({Piece{0.0, 1.0, std::move(p), Polynomial{}, 1.0}});
}

double Generator::operator()(double t) const {
  // Both endpoints are pinned so that copula margins hold exactly.
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return fn_.value(t);
}

Generator Generator::scaled(double lambda) const {
  std::vector<Piece> pieces = fn_.pieces();
  for (Piece& p : pieces) {
    p.poly *= lambda;
    p.radicand *= lambda * lambda;
    if (lambda < 0.0) p.root_sign = -p.root_sign;
  }
  return Generator(std::move(pieces), zero_limit_ * lambda);
}

std::string Generator::structure_error() const {
  std::string err = fn_.structure_error();
  if (!err.empty()) return err;
  for (std::size_t i = 0; i < pieces().size(); ++i) {
    const Piece& p = pieces()[i];
    if (p.poly.trimmed().degree() > kMaxPolyDegree) {
      return "piece " + std::to_string(i) + " has polynomial degree above 3";
    }
    if (p.radicand.trimmed().degree() > kMaxRadicandDegree) {
      return "piece " + std::to_string(i) + " has radicand degree above 6";
    }
  }
  if (std::abs(pieces().front().value(0.0) - zero_limit_) > kTolerance) {
    return "zero_limit " + describe(zero_limit_) + " differs from the first piece value at 0+ (" +
           describe(pieces().front().value(0.0)) + ")";
  }
  return {};
}

bool Generator::is_identically_zero() const {
  for (const Piece& p : pieces()) {
    if (!p.poly.trimmed().is_zero() || p.has_radical()) return false;
  }
  return true;
}

bool operator==(const Generator& a, const Generator& b) {
  if (a.zero_limit_ != b.zero_limit_ || a.pieces().size() != b.pieces().size()) return false;
  for (std::size_t i = 0; i < a.pieces().size(); ++i) {
    const Piece& p = a.pieces()[i];
    const Piece& q = b.pieces()[i];
    if (p.lo != q.lo || p.hi != q.hi || p.root_sign != q.root_sign) return false;
    const Polynomial dp = p.poly - q.poly;
    const Polynomial dr = p.radicand - q.radicand;
    if (!dp.trimmed(0.0).is_zero() || !dr.trimmed(0.0).is_zero()) return false;
  }
  return true;
}

double eval_f(const Generator& gen, double t) { return gen(t); }

ExtendedReal eval_f_star(const Generator& gen, double t) {
  if (t > 0.0) return ExtendedReal(gen(t) / t);
  if (gen.zero_limit() > kTolerance) return ExtendedReal::infinity();
  const Piece& first = gen.pieces().front();
  if (first.has_radical() && std::abs(first.radicand(0.0)) <= kTolerance) {
    // sqrt(R)/t with R = t^k * (r_k + ...): infinite for k = 1, sqrt(r_2) for k = 2, 0 beyond.
    const int k = zero_multiplicity(first.radicand);
    double radical_part = 0.0;
    if (k <= 1) return ExtendedReal::infinity();
    if (k == 2) radical_part = std::sqrt(std::max(0.0, first.radicand.coeff(2)));
    const double v = first.poly.coeff(1) + first.root_sign * radical_part;
    return ExtendedReal(std::max(0.0, v));
  }
  const double d = first.derivative(0.0);
  if (!std::isfinite(d)) return ExtendedReal::infinity();
  return ExtendedReal(std::max(0.0, d));
}

double eval_f_hat(const Generator& gen, double t) { return t + gen(t); }

double f_hat_right_limit(const Generator& gen) { return gen.zero_limit(); }

double derivative_f(const Generator& gen, double t, Side side) {
  if (!(t >= 0.0 && t <= 1.0)) throw MathDomainError("derivative requested outside [0,1]");
  if (t == 0.0) {
    if (gen.zero_limit() > kTolerance) {
      throw MathDomainError("derivative undefined at t=0: generator jumps to " +
                            describe(gen.zero_limit()));
    }
    side = Side::right;
  }
  if (t == 1.0) side = Side::left;
  return gen.function().derivative(t, side);
}

ValidationReport validate_generator(const Generator& gen, int grid_n) {
  if (grid_n < 2) throw MathDomainError("validation grid needs at least 2 points");
  ValidationReport report;
  report.structural_error = gen.structure_error();
  if (!report.structurally_valid()) return report;

  const PiecewiseFunction& fn = gen.function();
  report.nonnegative = check_pieces(fn, {Polynomial{}, Polynomial{1.0}, Polynomial{}}, "f >= 0");

  const double f1 = gen.pieces().back().value(1.0);
  if (std::abs(f1) > kTolerance) {
    report.g1.ok = false;
    report.g1.witness = 1.0;
    report.g1.detail = "(G1) failed: f(1) = " + describe(f1);
  }
  report.g2 = check_pieces(fn, {Polynomial{1.0}, Polynomial{}, Polynomial{1.0}},
                           "(G2) failed: t + f(t) nondecreasing");
  // f*(t) nonincreasing  <=>  f - t f' >= 0.
  report.g3 = check_pieces(fn, {Polynomial{}, Polynomial{1.0}, Polynomial{0.0, -1.0}},
                           "(G3) failed: f(t)/t nonincreasing");
  if (report.g2.ok) report.g2.detail = "(G2) ok";
  if (report.g3.ok) report.g3.detail = "(G3) ok";
  if (report.g1.ok) report.g1.detail = "(G1) ok";
  if (report.nonnegative.ok) report.nonnegative.detail = "f >= 0 ok";

  // Sampled cross-check with the same slack. Disagreement with the exact
  // analysis is reported, never silently merged.
  bool grid_g2 = true;
  bool grid_g3 = true;
  double prev_t = 1.0 / (grid_n - 1);
  for (int i = 2; i < grid_n; ++i) {
    const double t = static_cast<double>(i) / (grid_n - 1);
    // Raw piece values, so that a failed (G1) does not leak into the other checks.
    const double a = fn.value(prev_t);
    const double b = fn.value(t);
    if (prev_t + a > t + b + kTolerance) grid_g2 = false;
    if (b / t > a / prev_t + kTolerance) grid_g3 = false;
    prev_t = t;
  }
  if (grid_g2 != report.g2.ok || grid_g3 != report.g3.ok) {
    report.grid_consistent = false;
    report.grid_detail = "grid check disagrees with exact analysis";
  }
  return report;
}

MaxminGenerators::MaxminGenerators(PiecewiseFunction phi, PiecewiseFunction psi)
    : phi_(std::move(phi)), psi_(std::move(psi)) {}

double MaxminGenerators::phi(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return phi_.value(u);
}

double MaxminGenerators::psi(double v) const {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  return psi_.piece_at(v, Side::right).value(v);
}

double MaxminGenerators::phi_star(double u) const { return phi(u) / u; }

ExtendedReal MaxminGenerators::psi_lower_star(double v) const {
  const double p = psi(v);
  const double den = v - p;
  if (den <= 0.0) return ExtendedReal::infinity();
  return ExtendedReal((1.0 - p) / den);
}

MaxminValidationReport validate_maxmin(const MaxminGenerators& mm, int grid_n) {
  if (grid_n < 2) throw MathDomainError("validation grid needs at least 2 points");
  MaxminValidationReport report;
  if (auto e = mm.phi_function().structure_error(); !e.empty()) {
    report.structural_error = "phi: " + e;
    return report;
  }
  if (auto e = mm.psi_function().structure_error(); !e.empty()) {
    report.structural_error = "psi: " + e;
    return report;
  }
  const auto& phi_pieces = mm.phi_function().pieces();
  const auto& psi_pieces = mm.psi_function().pieces();

  const double phi1 = phi_pieces.back().value(1.0);
  const double psi0 = psi_pieces.front().value(0.0);
  if (std::abs(phi1 - 1.0) > kTolerance || std::abs(psi0) > kTolerance) {
    report.f1.ok = false;
    report.f1.detail = "(F1) failed: phi(1-)=" + describe(phi1) + ", psi(0)=" + describe(psi0);
  }

  const LinearForm increasing{Polynomial{}, Polynomial{}, Polynomial{1.0}};
  ConditionResult f2_phi = check_pieces(mm.phi_function(), increasing, "(F2) failed: phi nondecreasing");
  ConditionResult f2_psi = check_pieces(mm.psi_function(), increasing, "(F2) failed: psi nondecreasing");
  report.f2 = f2_phi.ok ? f2_psi : f2_phi;
  if (report.f2.ok && phi_pieces.front().value(0.0) < -kTolerance) {
    report.f2 = {false, "(F2) failed: phi jumps down at 0", 0.0, false};
  }
  if (report.f2.ok && psi_pieces.back().value(1.0) > 1.0 + kTolerance) {
    report.f2 = {false, "(F2) failed: psi jumps down at 1", 1.0, false};
  }

  // phi* nonincreasing <=> phi - u phi' >= 0;
  // psi_* nonincreasing <=> 1 - psi - (1 - v) psi' >= 0.
  ConditionResult f3_phi = check_pieces(
      mm.phi_function(), {Polynomial{}, Polynomial{1.0}, Polynomial{0.0, -1.0}},
      "(F3) failed: phi(u)/u nonincreasing");
  ConditionResult f3_psi = check_pieces(
      mm.psi_function(), {Polynomial{1.0}, Polynomial{-1.0}, Polynomial{-1.0, 1.0}},
      "(F3) failed: psi_* nonincreasing");
  report.f3 = f3_phi.ok ? f3_psi : f3_phi;

  bool grid_ok = true;
  for (int i = 1; i + 1 < grid_n; ++i) {
    const double a = static_cast<double>(i) / (grid_n - 1);
    const double b = static_cast<double>(i + 1) / (grid_n - 1);
    if (mm.phi(a) > mm.phi(b) + kTolerance || mm.psi(a) > mm.psi(b) + kTolerance) grid_ok = false;
    if (mm.phi_star(b) > mm.phi_star(a) + kTolerance) grid_ok = false;
    const ExtendedReal sa = mm.psi_lower_star(a);
    const ExtendedReal sb = mm.psi_lower_star(b);
    if (b < 1.0 && !sb.is_infinite() && !sa.is_infinite() && sb.value() > sa.value() + 1e-9) {
      grid_ok = false;
    }
    if (b < 1.0 && sb.is_infinite() && !sa.is_infinite()) grid_ok = false;
  }
  if (grid_ok != (report.f2.ok && report.f3.ok)) {
    report.grid_consistent = false;
    report.grid_detail = "grid check disagrees with exact analysis";
  }
  return report;
}

std::pair<Generator, Generator> generators_from_maxmin(const MaxminGenerators& mm) {
  const MaxminValidationReport report = validate_maxmin(mm);
  if (!report.passed()) {
    throw MathDomainError("invalid maxmin generators: " +
                          (report.structural_error.empty()
                               ? (report.f1.ok ? (report.f2.ok ? report.f3.detail : report.f2.detail)
                                               : report.f1.detail)
                               : report.structural_error));
  }
  std::vector<Piece> f_pieces;
  for (const Piece& p : mm.phi_function().pieces()) f_pieces.push_back(shifted_by_identity(p, -1.0));
  std::vector<Piece> g_pieces = reflect_complement(mm.psi_function().pieces(), 1.0);
  const double f_zero = f_pieces.front().value(0.0);
  const double g_zero = g_pieces.front().value(0.0);
  return {Generator(std::move(f_pieces), f_zero), Generator(std::move(g_pieces), g_zero)};
}

MaxminGenerators maxmin_from_generators(const Generator& f, const Generator& g) {
  for (const Generator* gen : {&f, &g}) {
    const ValidationReport r = validate_generator(*gen);
    if (!r.passed()) {
      throw MathDomainError("invalid generator: " +
                            (r.structural_error.empty()
                                 ? (r.g1.ok ? (r.g2.ok ? (r.g3.ok ? r.nonnegative.detail : r.g3.detail)
                                                       : r.g2.detail)
                                            : r.g1.detail)
                                 : r.structural_error));
    }
  }
  std::vector<Piece> phi_pieces;
  for (const Piece& p : f.pieces()) phi_pieces.push_back(shifted_by_identity(p, 1.0));
  // psi(v) = v - g(1 - v) = -(1 - v) + 1 - g(1 - v) ... written as c - t - p(1-t) with c = 0
  // and the sign of the linear term flipped below.
  std::vector<Piece> psi_pieces = reflect_complement(g.pieces(), 0.0);
  for (Piece& p : psi_pieces) p.poly += Polynomial({0.0, 2.0});
  return MaxminGenerators(PiecewiseFunction(std::move(phi_pieces)),
                          PiecewiseFunction(std::move(psi_pieces)));
}

std::pair<Generator, Generator> scale_generator_pair(const Generator& f, const Generator& g,
                                                     double lambda) {
  if (!(lambda > 0.0)) throw MathDomainError("scale factor must be positive");
  Generator fs = f.scaled(lambda);
  Generator gs = g.scaled(1.0 / lambda);
  for (const Generator* gen : {&fs, &gs}) {
    const ValidationReport r = validate_generator(*gen);
    if (!r.passed()) {
      throw MathDomainError("scaled generator pair is invalid: " +
                            (r.g2.ok ? (r.g3.ok ? r.g1.detail : r.g3.detail) : r.g2.detail));
    }
  }
  return {std::move(fs), std::move(gs)};
}

}  // namespace rmmcop
