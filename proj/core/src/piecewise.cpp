#include "rmmcop/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rmmcop/errors.hpp"

namespace rmmcop {

double Piece::value(double t) const noexcept {
  double v = poly(t);
  if (has_radical()) v += root_sign * std::sqrt(std::max(0.0, radicand(t)));
  return v;
}

double Piece::derivative(double t) const noexcept {
  double d = poly.derivative()(t);
  if (has_radical()) {
    const double r = radicand(t);
    const double dr = radicand.derivative()(t);
    if (r > 0.0) {
      d += root_sign * dr / (2.0 * std::sqrt(r));
    } else if (dr != 0.0) {
      d += root_sign * std::copysign(std::numeric_limits<double>::infinity(), dr);
    }
  }
  return d;
}

double SurdExpression::operator()(double t) const noexcept {
  double v = rational(t);
  if (has_radical()) v += coefficient(t) * std::sqrt(std::max(0.0, radicand(t)));
  return v;
}

SurdExpression to_surd(const Piece& piece, const LinearForm& form) {
  const Polynomial& p = piece.poly;
  const Polynomial dp = p.derivative();
  if (!piece.has_radical()) {
    return {form.x + form.y * p + form.z * dp, Polynomial{}, Polynomial{}};
  }
  // (x + y f + z f') * 2 sqrt(R) = s (2 y R + z R') + 2 (x + y P + z P') sqrt(R)
  const Polynomial& r = piece.radicand;
  const double s = piece.root_sign;
  SurdExpression e;
  e.rational = (2.0 * (form.y * r) + form.z * r.derivative()) * s;
  e.coefficient = 2.0 * (form.x + form.y * p + form.z * dp);
  e.radicand = r;
  return e;
}

namespace {

void append_inside(std::vector<double>& out, const std::vector<double>& pts, double lo, double hi) {
  for (double t : pts) {
    if (t > lo && t < hi) out.push_back(t);
  }
}

std::vector<double> cut_points(const SurdExpression& e, double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  append_inside(cuts, real_roots(e.rational, lo, hi), lo, hi);
  if (e.has_radical()) {
    append_inside(cuts, real_roots(e.coefficient, lo, hi), lo, hi);
    append_inside(cuts, real_roots(e.radicand, lo, hi), lo, hi);
    const Polynomial resolvent =
        e.rational * e.rational - e.coefficient * e.coefficient * e.radicand;
    append_inside(cuts, real_roots(resolvent, lo, hi), lo, hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

std::vector<double> roots(const SurdExpression& e, double lo, double hi) {
  if (!e.has_radical()) return real_roots(e.rational, lo, hi);
  const Polynomial resolvent = e.rational * e.rational - e.coefficient * e.coefficient * e.radicand;
  std::vector<double> out;
  const double scale = std::max({1.0, e.rational.scale(), e.coefficient.scale()});
  for (double t : real_roots(resolvent, lo, hi)) {
    if (std::abs(e(t)) <= 1e-9 * scale) out.push_back(t);
  }
  return out;
}

SignCheck check_nonnegative(const SurdExpression& e, double lo, double hi, double tol) {
  SignCheck result;
  if (!e.has_radical()) {
    const Extremum m = minimum_on(e.rational, lo, hi);
    result.value = m.value;
    if (m.value < -tol) {
      result.ok = false;
      result.witness = m.at;
    }
    result.flat = hi - lo > 1e-9 && maximum_on(e.rational, lo, hi).value <= tol && m.value >= -tol;
    return result;
  }

  const std::vector<double> cuts = cut_points(e, lo, hi);
  result.value = std::min(e(lo), e(hi));
  auto probe = [&](double t) {
    const double v = e(t);
    if (v < result.value) result.value = v;
    if (v < -tol && result.ok) {
      result.ok = false;
      result.witness = t;
    }
    return v;
  };
  probe(lo);
  probe(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (b - a <= 1e-13) continue;
    const double m = probe(0.5 * (a + b));
    if (b - a > 1e-9 && std::abs(m) <= tol && std::abs(e(a + 0.25 * (b - a))) <= tol &&
        std::abs(e(a + 0.75 * (b - a))) <= tol) {
      result.flat = true;
    }
  }
  return result;
}

PiecewiseFunction::PiecewiseFunction(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {}

const Piece& PiecewiseFunction::piece_at(double t, Side side) const {
  if (pieces_.empty()) throw MathDomainError("piecewise function has no pieces");
  auto it = side == Side::left
                ? std::lower_bound(pieces_.begin(), pieces_.end(), t,
                                   [](const Piece& p, double x) { return p.hi < x; })
                : std::upper_bound(pieces_.begin(), pieces_.end(), t,
                                   [](double x, const Piece& p) { return x < p.hi; });
  if (it == pieces_.end()) return pieces_.back();
  return *it;
}

double PiecewiseFunction::value(double t) const { return piece_at(t).value(t); }

double PiecewiseFunction::derivative(double t, Side side) const {
  return piece_at(t, side).derivative(t);
}

std::vector<double> PiecewiseFunction::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) out.push_back(pieces_[i].hi);
  return out;
}

std::string PiecewiseFunction::structure_error(double tol, bool require_continuity) const {
  std::ostringstream msg;
  if (pieces_.empty()) return "no pieces";
  if (pieces_.front().lo != 0.0) {
    msg << "first piece starts at " << pieces_.front().lo << " instead of 0";
    return msg.str();
  }
  if (pieces_.back().hi != 1.0) {
    msg << "last piece ends at " << pieces_.back().hi << " instead of 1";
    return msg.str();
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    if (!(p.lo < p.hi)) {
      msg << "piece " << i << " is empty or reversed: [" << p.lo << ", " << p.hi << "]";
      return msg.str();
    }
    if (p.has_radical() && minimum_on(p.radicand, p.lo, p.hi).value < -tol) {
      msg << "piece " << i << " has a negative radicand";
      return msg.str();
    }
    if (i + 1 < pieces_.size()) {
      const Piece& q = pieces_[i + 1];
      if (q.lo < p.hi) {
        msg << "pieces " << i << " and " << i + 1 << " overlap at " << q.lo;
        return msg.str();
      }
      if (q.lo > p.hi) {
        msg << "gap between pieces " << i << " and " << i + 1 << ": (" << p.hi << ", " << q.lo << ")";
        return msg.str();
      }
      if (require_continuity && std::abs(p.value(p.hi) - q.value(q.lo)) > tol) {
        msg << "discontinuity at t=" << p.hi << ": " << p.value(p.hi) << " vs " << q.value(q.lo);
        return msg.str();
      }
    }
  }
  return {};
}

std::vector<Piece> PiecewiseFunction::restricted(double lo, double hi) const {
  std::vector<Piece> out;
  for (const Piece& p : pieces_) {
    const double a = std::max(lo, p.lo);
    const double b = std::min(hi, p.hi);
    if (a < b) {
      Piece q = p;
      q.lo = a;
      q.hi = b;
      out.push_back(std::move(q));
    }
  }
  return out;
}

}  // namespace rmmcop
