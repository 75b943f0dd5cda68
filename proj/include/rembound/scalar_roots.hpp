#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace rembound {

// f(x) = x - c0 - sum_i a_i / (x - b_i), the root-finding target behind the
// rational upper and lower eigenvalue bounds. Terms are kept sorted with
// strictly increasing b and strictly positive a.
struct PoleSumFunction {
  struct Term {
    double a = 0.0;  // > 0
    double b = 0.0;  // >= 0
  };
  double c0 = 0.0;
  std::vector<Term> terms;

  double operator()(double x) const {
    double v = x - c0;
    for (const auto& t : terms) v -= t.a / (x - t.b);
    return v;
  }

  double derivative(double x) const {
    double v = 1.0;
    for (const auto& t : terms) v += t.a / ((x - t.b) * (x - t.b));
    return v;
  }
};

// Scalar polynomials of the Higham-Tisseur lemma, stored as nonnegative
// coefficient magnitudes:
//   Upper: u(x) = lead*x^d - c[d-1]*x^{d-1} - ... - c[0]
//   Lower: l(x) = c[d]*x^d + ... + c[1]*x - constant
struct HTPolynomial {
  enum class Kind { Upper, Lower };
  Kind kind = Kind::Upper;
  // Upper: lead > 0 and lower_coeffs[i] >= 0 multiplies x^i, i < degree.
  // Lower: coeffs[i] >= 0 multiplies x^i (i >= 1) and constant > 0 is
  // subtracted.
  double lead = 0.0;         // Upper only
  double constant = 0.0;     // Lower only (the subtracted magnitude)
  std::vector<double> body;  // Upper: c[0..d-1]; Lower: c[1..d]

  int degree() const { return static_cast<int>(body.size()); }

  double operator()(double x) const {
    if (kind == Kind::Upper) {
      double v = lead;
      for (auto it = body.rbegin(); it != body.rend(); ++it) v = v * x - *it;
      return v;
    }
    double v = 0.0;
    for (auto it = body.rbegin(); it != body.rend(); ++it) v = v * x + *it;
    return v * x - constant;
  }
};

inline PoleSumFunction pole_sum_build(
    double c0, const std::vector<std::pair<double, double>>& raw_terms) {
  if (c0 < 0) throw std::invalid_argument("pole_sum_build: c0 must be >= 0");
  std::map<double, double> merged;  // b -> summed a
  for (const auto& [a, b] : raw_terms) {
    if (a < 0 || b < 0)
      throw std::invalid_argument("pole_sum_build: terms must be nonnegative");
    if (a == 0.0) continue;  // zero summand, drop
    merged[b] += a;
  }
  PoleSumFunction f;
  f.c0 = c0;
  f.terms.reserve(merged.size());
  for (const auto& [b, a] : merged) f.terms.push_back({a, b});
  return f;
}

namespace detail {

// Bisection on a bracket with f(lo) < 0 < f(hi) (lo < hi), then a Newton
// polish kept inside the bracket.
template <class F, class DF>
double bisect_newton(const F& f, const DF& df, double lo, double hi) {
  for (int i = 0; i < 200 && (hi - lo) > 1e-13 * (1.0 + std::abs(lo)); ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  double r = 0.5 * (lo + hi);
  double slack = hi - lo;
  for (int i = 0; i < 8; ++i) {
    double d = df(r);
    if (d == 0.0) break;
    double next = r - f(r) / d;
    next = std::clamp(next, lo - slack, hi + slack);
    if (next == r) break;
    r = next;
  }
  return r;
}

inline double pole_sum_root_in(const PoleSumFunction& f, double lo, double hi) {
  auto fn = [&f](double x) { return f(x); };
  auto dfn = [&f](double x) { return f.derivative(x); };
  return bisect_newton(fn, dfn, lo, hi);
}

}  // namespace detail

// All m+1 real roots, strictly interlaced with the poles:
//   R_1 < b_1 < R_2 < ... < R_m < b_m < R_{m+1}.
inline std::vector<double> all_roots(const PoleSumFunction& f) {
  const size_t m = f.terms.size();
  if (m == 0) return {f.c0};
  std::vector<double> roots;
  roots.reserve(m + 1);

  // Scale for initial offsets away from the poles.
  double scale = 1.0 + std::abs(f.c0);
  for (const auto& t : f.terms) scale = std::max(scale, 1.0 + t.b + t.a);

  // Leftmost root in (-inf, b_1): f -> -inf at -inf, +inf at b_1^-.
  {
    double b1 = f.terms.front().b;
    double delta = 0.5 * scale;
    while (f(b1 - delta) < 0) delta *= 0.5;
    double lo = b1 - delta;
    double width = scale;
    while (f(lo - width) >= 0) width *= 2.0;
    roots.push_back(detail::pole_sum_root_in(f, lo - width, lo));
  }

  // Interior roots in (b_i, b_{i+1}): f -> -inf at b_i^+, +inf at b_{i+1}^-.
  for (size_t i = 0; i + 1 < m; ++i) {
    double bl = f.terms[i].b, br = f.terms[i + 1].b;
    double delta = 0.25 * (br - bl);
    double lo, hi;
    do {
      lo = bl + delta;
      hi = br - delta;
      delta *= 0.5;
    } while (!(f(lo) < 0 && f(hi) > 0) && delta > 0);
    roots.push_back(detail::pole_sum_root_in(f, lo, hi));
  }

  // Rightmost root in (b_m, +inf): f -> -inf at b_m^+, +inf at +inf.
  {
    double bm = f.terms.back().b;
    double delta = 0.5 * scale;
    while (f(bm + delta) > 0) delta *= 0.5;
    double lo = bm + delta;
    double width = scale;
    while (f(lo + width) <= 0) width *= 2.0;
    roots.push_back(detail::pole_sum_root_in(f, lo, lo + width));
  }
  return roots;
}

inline double largest_root(const PoleSumFunction& f) {
  return all_roots(f).back();
}

inline double smallest_root(const PoleSumFunction& f) {
  return all_roots(f).front();
}

// The unique positive root of a Higham-Tisseur polynomial.
inline double ht_positive_root(const HTPolynomial& p) {
  if (p.kind == HTPolynomial::Kind::Upper) {
    if (p.lead <= 0)
      throw std::invalid_argument(
          "ht_positive_root: nonpositive leading coefficient");
    if (p.body.empty())
      throw std::invalid_argument("ht_positive_root: degree must be >= 1");
  } else {
    if (p.constant <= 0)
      throw std::invalid_argument(
          "ht_positive_root: nonpositive constant magnitude");
    if (p.body.empty() ||
        std::all_of(p.body.begin(), p.body.end(), [](double c) { return c == 0; }))
      throw std::invalid_argument("ht_positive_root: zero body");
  }
  double lo = 0.0;
  if (p(0.0) >= 0.0) {
    // u(0) = 0 can only happen when the constant magnitude vanishes; the
    // positive root, if any, sits above the remaining sign change.
    if (std::all_of(p.body.begin(), p.body.end(),
                    [](double c) { return c == 0; }))
      return 0.0;  // u = lead * x^d, degenerate
    lo = 1.0;
    while (p(lo) >= 0.0 && lo > 1e-300) lo *= 0.5;
    if (p(lo) >= 0.0) return 0.0;
  }
  double hi = std::max(1.0, 2.0 * lo);
  while (p(hi) <= 0.0) hi *= 2.0;
  auto fn = [&p](double x) { return p(x); };
  auto dfn = [&p](double x) {
    double h = 1e-7 * (1.0 + std::abs(x));
    return (p(x + h) - p(x - h)) / (2.0 * h);
  };
  return detail::bisect_newton(fn, dfn, lo, hi);
}

}  // namespace rembound
