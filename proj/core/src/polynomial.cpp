#include "rmmcop/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rmmcop {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) {}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

double Polynomial::operator()(double t) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

int Polynomial::degree() const noexcept {
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
    if (coeffs_[k] != 0.0) return k;
  }
  return -1;
}

double Polynomial::coeff(int k) const noexcept {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[k];
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::compose_affine(double a, double b) const {
  // Horner in polynomial arithmetic: ((c_n x + c_{n-1}) x + ...) with x = a + b t.
  const Polynomial x({a, b});
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x;
    acc += Polynomial({*it});
  }
  return acc;
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  const double s = scale();
  std::vector<double> c = coeffs_;
  if (s == 0.0) return Polynomial{};
  for (double& v : c) {
    if (std::abs(v) <= rel_tol * s) v = 0.0;
  }
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial{};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

double Polynomial::scale() const noexcept {
  double s = 0.0;
  for (double c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

namespace {

// Rounding bound for Horner evaluation at t.
double evaluation_slack(const Polynomial& p, double t) {
  double bound = 0.0;
  double tk = 1.0;
  for (double c : p.coeffs()) {
    bound += std::abs(c) * tk;
    tk *= std::abs(t);
  }
  const double n = static_cast<double>(p.coeffs().size());
  return 8.0 * n * std::numeric_limits<double>::epsilon() * bound;
}

double bisect_sign_change(const Polynomial& p, double a, double b) {
  double fa = p(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = p(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> real_roots(const Polynomial& p0, double lo, double hi) {
  std::vector<double> out;
  if (!(lo <= hi)) return out;
  const Polynomial p = p0.trimmed();
  const int d = p.degree();
  if (d <= 0) return out;
  if (d == 1) {
    const double r = -p.coeff(0) / p.coeff(1);
    if (r >= lo && r <= hi) out.push_back(r);
    return out;
  }

  std::vector<double> pts{lo};
  for (double c : real_roots(p.derivative(), lo, hi)) {
    if (c > lo && c < hi) pts.push_back(c);
  }
  pts.push_back(hi);

  auto negligible = [&](double t) { return std::abs(p(t)) <= evaluation_slack(p, t); };
  for (double t : pts) {
    if (negligible(t)) out.push_back(t);
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    if (negligible(a) || negligible(b)) continue;
    if ((p(a) < 0.0) != (p(b) < 0.0)) out.push_back(bisect_sign_change(p, a, b));
  }

  std::sort(out.begin(), out.end());
  std::vector<double> unique;
  for (double r : out) {
    if (unique.empty() || r - unique.back() > 1e-13) unique.push_back(r);
  }
  return unique;
}

namespace {

template <typename Better>
Extremum extremum_on(const Polynomial& p, double lo, double hi, Better better) {
  Extremum best{p(lo), lo};
  auto consider = [&](double t) {
    const double v = p(t);
    if (better(v, best.value)) best = {v, t};
  };
  consider(hi);
  for (double c : real_roots(p.derivative(), lo, hi)) consider(c);
  return best;
}

}  // namespace

Extremum minimum_on(const Polynomial& p, double lo, double hi) {
  return extremum_on(p, lo, hi, [](double a, double b) { return a < b; });
}

Extremum maximum_on(const Polynomial& p, double lo, double hi) {
  return extremum_on(p, lo, hi, [](double a, double b) { return a > b; });
}

std::optional<Polynomial> polynomial_sqrt(const Polynomial& p0, double rel_tol) {
  const Polynomial p = p0.trimmed();
  const int d = p.degree();
  if (d < 0) return Polynomial{};
  if (d % 2 != 0 || p.coeff(d) < 0.0) return std::nullopt;

  const int k = d / 2;
  std::vector<double> q(k + 1, 0.0);
  q[k] = std::sqrt(p.coeff(d));
  for (int i = k - 1; i >= 0; --i) {
    double s = p.coeff(k + i);
    for (int j = i + 1; j < k; ++j) {
      const int l = k + i - j;
      if (l > i && l < k) s -= q[j] * q[l];
    }
    q[i] = s / (2.0 * q[k]);
  }

  Polynomial root(std::move(q));
  const Polynomial residual = root * root - p;
  if (residual.scale() > rel_tol * std::max(1.0, p.scale())) return std::nullopt;
  return root;
}

}  // namespace rmmcop
