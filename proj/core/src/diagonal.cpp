#include "rmmcop/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rmmcop {

namespace {

constexpr int kMaxDiagonalDegree = 6;

const Polynomial kSquare{0.0, 0.0, 1.0};

bool is_zero_piece(const Piece& p) { return !p.has_radical() && p.poly.trimmed().is_zero(); }

ConditionResult check_all(const std::vector<Piece>& pieces, const LinearForm& form,
                          const std::string& label, bool& flat) {
  ConditionResult out;
  for (const Piece& p : pieces) {
    const SignCheck sc = check_nonnegative(to_surd(p, form), p.lo, p.hi);
    if (sc.flat) flat = true;
    if (!sc.ok && out.ok) {
      out.ok = false;
      out.witness = sc.witness;
      std::ostringstream os;
      os.precision(12);
      os << label << " violated near t=" << sc.witness;
      out.detail = os.str();
    }
  }
  if (out.ok) out.detail = label + " ok";
  return out;
}

// delta-hat on a piece: t + sqrt(t^2 - P).
Piece hat_piece(const Piece& p) {
  Piece q;
  q.lo = p.lo;
  q.hi = p.hi;
  q.poly = Polynomial{0.0, 1.0};
  q.radicand = (kSquare - p.poly).trimmed();
  q.root_sign = 1.0;
  return q;
}

double compute_a_delta(const PiecewiseFunction& fn) {
  double a = 0.0;
  for (const Piece& p : fn.pieces()) {
    if (p.lo > 0.5) break;
    if (is_zero_piece(p)) {
      a = p.hi;
      continue;
    }
    const double hi = std::min(p.hi, 0.5);
    const auto r = real_roots(p.poly, p.lo, hi);
    if (!r.empty()) a = std::max(a, r.back());
    break;
  }
  return std::min(a, 0.5);
}

// Joins adjacent pieces with identical coefficients.
std::vector<Piece> merge_equal(std::vector<Piece> pieces) {
  std::vector<Piece> out;
  for (Piece& p : pieces) {
    if (!out.empty()) {
      Piece& last = out.back();
      const Polynomial dp = (last.poly - p.poly).trimmed();
      const Polynomial dr = (last.radicand - p.radicand).trimmed();
      if (dp.is_zero() && dr.is_zero() && last.root_sign == p.root_sign) {
        last.hi = p.hi;
        continue;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

DiagonalSection::DiagonalSection(std::vector<Piece> pieces) : fn_(std::move(pieces)) {
  if (!fn_.empty() && structure_error().empty()) a_delta_ = compute_a_delta(fn_);
}

double DiagonalSection::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return fn_.pieces().back().value(1.0);
  return fn_.value(t);
}

std::string DiagonalSection::structure_error() const {
  std::string err = fn_.structure_error();
  if (!err.empty()) return err;
  for (std::size_t i = 0; i < pieces().size(); ++i) {
    if (pieces()[i].has_radical()) return "diagonal piece " + std::to_string(i) + " is not polynomial";
    if (pieces()[i].poly.trimmed().degree() > kMaxDiagonalDegree) {
      return "diagonal piece " + std::to_string(i) + " has degree above 6";
    }
  }
  return {};
}

double delta_sharp(const DiagonalSection& d, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw MathDomainError("delta# is defined on (0,1]");
  return d(t) / (t * t);
}

double delta_hat(const DiagonalSection& d, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw MathDomainError("delta-hat is defined on [0,1]");
  const double r = t * t - d(t);
  if (r < -kTolerance) throw MathDomainError("delta-hat needs delta(t) <= t^2");
  return t + std::sqrt(std::max(0.0, r));
}

std::string DiagonalReport::first_failure() const {
  if (!structural_error.empty()) return structural_error;
  for (const ConditionResult* c : {&d1, &d2, &d3, &d4, &below_square, &sharp, &hat}) {
    if (!c->ok) return c->detail;
  }
  return {};
}

DiagonalReport in_D_hat(const DiagonalSection& d, int grid_n) {
  if (grid_n < 2) throw MathDomainError("grid needs at least 2 points");
  DiagonalReport r;
  r.structural_error = d.structure_error();
  if (!r.structural_error.empty()) return r;
  const auto& pieces = d.pieces();

  const double d0 = pieces.front().value(0.0);
  const double d1 = pieces.back().value(1.0);
  if (std::abs(d0) > kTolerance || std::abs(d1 - 1.0) > kTolerance) {
    r.d1 = {false, "(D1) failed: boundary values", std::abs(d0) > kTolerance ? 0.0 : 1.0, false};
  } else {
    r.d1.detail = "(D1) ok";
  }
  bool flat = false;
  bool ignored = false;
  // t - delta >= 0
  r.d2 = check_all(pieces, {Polynomial{0.0, 1.0}, Polynomial{-1.0}, Polynomial{}}, "(D2) delta(t) <= t",
                   ignored);
  r.d3 = check_all(pieces, {Polynomial{}, Polynomial{}, Polynomial{1.0}}, "(D3) nondecreasing", ignored);
  r.d4 = check_all(pieces, {Polynomial{2.0}, Polynomial{}, Polynomial{-1.0}}, "(D4) 2-Lipschitz", ignored);
  r.below_square = check_all(pieces, {kSquare, Polynomial{-1.0}, Polynomial{}}, "delta(t) <= t^2", ignored);
  // t delta' - 2 delta >= 0
  r.sharp = check_all(pieces, {Polynomial{}, Polynomial{-2.0}, Polynomial{0.0, 1.0}},
                      "delta# nondecreasing", flat);

  if (r.below_square.ok) {
    std::vector<Piece> hats;
    for (const Piece& p : pieces) hats.push_back(hat_piece(p));
    r.hat = check_all(hats, {Polynomial{}, Polynomial{}, Polynomial{1.0}}, "delta-hat nondecreasing", flat);
    // hat - t hat' >= 0
    r.hat_ratio = check_all(hats, {Polynomial{}, Polynomial{1.0}, Polynomial{0.0, -1.0}},
                            "delta-hat(t)/t nonincreasing", ignored);
  } else {
    r.hat = {false, "delta-hat undefined: delta exceeds t^2", r.below_square.witness, false};
    r.hat_ratio = r.hat;
  }
  r.boundary_case = flat;

  bool grid_sharp = true;
  bool grid_hat = r.below_square.ok;
  for (int i = 1; i + 1 < grid_n; ++i) {
    const double a = static_cast<double>(i) / (grid_n - 1);
    const double b = static_cast<double>(i + 1) / (grid_n - 1);
    if (delta_sharp(d, a) > delta_sharp(d, b) + kTolerance) grid_sharp = false;
    if (grid_hat && delta_hat(d, a) > delta_hat(d, b) + kTolerance) grid_hat = false;
  }
  if (grid_sharp != r.sharp.ok || grid_hat != r.hat.ok || r.hat_ratio.ok != r.sharp.ok) {
    r.grid_consistent = false;
    r.grid_detail = "sampled or equivalent-form checks disagree with the exact analysis";
  }
  return r;
}

DiagonalSection diagonal_of(const RmmCopula& c) {
  std::vector<double> cuts{0.0, 1.0};
  for (double b : c.f().breakpoints()) cuts.push_back(b);
  for (double b : c.g().breakpoints()) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const double mid = 0.5 * (lo + hi);
    const Piece& pf = c.f().function().piece_at(mid);
    const Piece& pg = c.g().function().piece_at(mid);
    Polynomial product;
    if (is_zero_piece(pf) || is_zero_piece(pg)) {
      product = Polynomial{};
    } else if (!pf.has_radical() && !pg.has_radical()) {
      product = pf.poly * pg.poly;
    } else if (pf.poly.trimmed().is_zero() && pg.poly.trimmed().is_zero() &&
               (pf.radicand - pg.radicand).trimmed().is_zero()) {
      product = pf.radicand * (pf.root_sign * pg.root_sign);
    } else {
      throw MathDomainError("diagonal of radical generator pieces is not piecewise polynomial");
    }
    const Polynomial q = (kSquare - product).trimmed();

    std::vector<double> sub{lo};
    for (double r : real_roots(q, lo, hi)) {
      if (r - sub.back() > 1e-13 && hi - r > 1e-13) sub.push_back(r);
    }
    sub.push_back(hi);
    for (std::size_t k = 0; k + 1 < sub.size(); ++k) {
      const double m = 0.5 * (sub[k] + sub[k + 1]);
      out.push_back(Piece{sub[k], sub[k + 1], q(m) > 0.0 ? q : Polynomial{}, Polynomial{}, 1.0});
    }
  }
  return DiagonalSection(merge_equal(std::move(out)));
}

Generator generator_from_diagonal(const DiagonalSection& d) {
  std::vector<Piece> pieces;
  for (const Piece& p : d.pieces()) {
    const Polynomial radicand = (kSquare - p.poly).trimmed();
    Piece q;
    q.lo = p.lo;
    q.hi = p.hi;
    if (radicand.is_zero()) {
      q.poly = Polynomial{};
    } else if (auto root = polynomial_sqrt(radicand)) {
      Polynomial r = root->trimmed();
      if (r(0.5 * (p.lo + p.hi)) < 0.0) r *= -1.0;
      q.poly = r;
    } else {
      q.poly = Polynomial{};
      q.radicand = radicand;
    }
    pieces.push_back(std::move(q));
  }
  return Generator(merge_equal(std::move(pieces)));
}

RmmCopula srmm_from_diagonal(const DiagonalSection& d) {
  const DiagonalReport r = in_D_hat(d);
  if (!r.member()) throw MathDomainError("diagonal is not in the admissible class: " + r.first_failure());
  return RmmCopula::symmetric(generator_from_diagonal(d));
}

DiagonalBounds diagonal_bounds(const DiagonalSection& d) {
  RmmCopula upper = srmm_from_diagonal(d);
  const double a = d.a_delta();
  if (a <= kTolerance) return DiagonalBounds{upper, upper, true};
  std::vector<Piece> pieces{Piece{0.0, a, Polynomial{2.0 * a, -1.0}, Polynomial{}, 1.0}};
  for (const Piece& p : upper.f().function().restricted(a, 1.0)) pieces.push_back(p);
  RmmCopula lower = RmmCopula::symmetric(Generator(std::move(pieces), 2.0 * a));
  return DiagonalBounds{std::move(lower), std::move(upper), false};
}

bool srmm_uniqueness_check(const DiagonalSection& d) { return d.a_delta() <= kTolerance; }

double semilinear_from_diagonal(const DiagonalSection& d, double u, double v) {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw MathDomainError("semilinear argument outside [0,1]^2");
  }
  if (v <= u) return u == 0.0 ? 0.0 : v * d(u) / u;
  return v == 0.0 ? 0.0 : u * d(v) / v;
}

}  // namespace rmmcop
