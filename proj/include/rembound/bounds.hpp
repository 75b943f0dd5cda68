#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "rembound/linalg.hpp"
#include "rembound/mrf.hpp"
#include "rembound/scalar_roots.hpp"

namespace rembound {

enum class BoundMethod {
  BauerFike,
  UnitaryClosedForm,
  RationalUpper,
  RationalLower,
  Polynomial,
};

enum class BoundDirection { Upper, Lower };

inline const char* method_name(BoundMethod m) {
  switch (m) {
    case BoundMethod::BauerFike: return "bauer-fike";
    case BoundMethod::UnitaryClosedForm: return "unitary-closed-form";
    case BoundMethod::RationalUpper: return "rational-upper";
    case BoundMethod::RationalLower: return "rational-lower";
    case BoundMethod::Polynomial: return "polynomial";
  }
  return "?";
}

struct BoundReport {
  BoundMethod method = BoundMethod::BauerFike;
  double value = 0.0;  // bound on |lambda_0|
  BoundDirection direction = BoundDirection::Upper;
  NormKind norm = NormKind::Spectral;
  bool hypothesis_ok = true;
  std::vector<std::string> notes;
  std::chrono::duration<double> elapsed{0.0};
};

// Unitarity tolerance for the closed-form Bauer-Fike specialization.
inline constexpr double kUnitaryTol = 1e-10;

namespace detail {

class StopWatch {
 public:
  std::chrono::duration<double> elapsed() const {
    return std::chrono::steady_clock::now() - start_;
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

inline double max_pole_modulus(const MatrixRationalFunction& t) {
  double mx = 0.0;  // max over the empty set is 0 (m = 0)
  for (const auto& term : t.terms) mx = std::max(mx, std::abs(term.pole));
  return mx;
}

// Spectral norm of the perturbation block E without materializing it:
//   (Ex)_i = -x_m for i < m,   (Ex)_m = sum_i B_{i+1} x_i + B0 x_m.
inline double e_block_spectral_norm(const MatrixRationalFunction& t) {
  const Eigen::Index n = t.n;
  const Eigen::Index m = t.num_poles();
  LinearOperator op;
  op.rows = op.cols = (m + 1) * n;
  op.apply = [&t, n, m](const ComplexVector& x) -> ComplexVector {
    ComplexVector y((m + 1) * n);
    for (Eigen::Index i = 0; i < m; ++i)
      y.segment(i * n, n) = -x.segment(m * n, n);
    ComplexVector last = t.b0 * x.segment(m * n, n);
    for (Eigen::Index i = 0; i < m; ++i)
      last += t.terms[static_cast<size_t>(i)].coeff * x.segment(i * n, n);
    y.segment(m * n, n) = last;
    return y;
  };
  op.apply_adjoint = [&t, n, m](const ComplexVector& y) -> ComplexVector {
    ComplexVector x((m + 1) * n);
    for (Eigen::Index i = 0; i < m; ++i)
      x.segment(i * n, n) =
          t.terms[static_cast<size_t>(i)].coeff.adjoint() * y.segment(m * n, n);
    ComplexVector last = t.b0.adjoint() * y.segment(m * n, n);
    for (Eigen::Index i = 0; i < m; ++i) last -= y.segment(i * n, n);
    x.segment(m * n, n) = last;
    return x;
  };
  return spectral_norm(op);
}

inline double e_block_norm(const MatrixRationalFunction& t, NormKind kind) {
  const Eigen::Index n = t.n;
  const Eigen::Index m = t.num_poles();
  if ((m + 1) * n <= kDenseSvdLimit)
    return induced_norm(perturbation_split(t).second, kind);
  switch (kind) {
    case NormKind::Spectral:
      return e_block_spectral_norm(t);
    case NormKind::One: {
      double mx = 0.0;
      for (const auto& term : t.terms)
        mx = std::max(mx, term.coeff.cwiseAbs().colwise().sum().maxCoeff());
      Eigen::VectorXd last =
          t.b0.cwiseAbs().colwise().sum().transpose();
      last.array() += static_cast<double>(m);  // m stacked -I blocks
      return std::max(mx, last.maxCoeff());
    }
    case NormKind::Infinity: {
      double mx = m > 0 ? 1.0 : 0.0;  // top block rows: a single -I entry
      Eigen::VectorXd last = t.b0.cwiseAbs().rowwise().sum();
      for (const auto& term : t.terms)
        last += term.coeff.cwiseAbs().rowwise().sum();
      return std::max(mx, last.maxCoeff());
    }
  }
  return 0.0;
}

inline bool is_unitary(const ComplexMatrix& b, double tol = kUnitaryTol) {
  if (b.rows() != b.cols()) return false;
  ComplexMatrix g = b.adjoint() * b;
  g -= ComplexMatrix::Identity(b.rows(), b.cols());
  return spectral_norm(g) <= tol;
}

inline bool all_coefficients_unitary(const MatrixRationalFunction& t) {
  if (!is_unitary(t.b0)) return false;
  for (const auto& term : t.terms)
    if (!is_unitary(term.coeff)) return false;
  return true;
}

}  // namespace detail

// |lambda_0| <= ||E|| + max_i |alpha_i|
inline BoundReport bauer_fike_bound(const MatrixRationalFunction& t,
                                    NormKind norm = NormKind::Spectral) {
  require_valid(t);
  detail::StopWatch watch;
  BoundReport r;
  r.method = BoundMethod::BauerFike;
  r.norm = norm;
  r.value = detail::e_block_norm(t, norm) + detail::max_pole_modulus(t);
  r.elapsed = watch.elapsed();
  return r;
}

// Unitary coefficients: |lambda_0| <= sqrt((2m+1+sqrt(4m+1))/2) + max|alpha_i|.
inline BoundReport unitary_closed_form_bound(const MatrixRationalFunction& t) {
  require_valid(t);
  if (t.terms.empty())
    throw std::invalid_argument("unitary_closed_form_bound: requires m >= 1");
  detail::StopWatch watch;
  BoundReport r;
  r.method = BoundMethod::UnitaryClosedForm;
  r.norm = NormKind::Spectral;
  const double m = static_cast<double>(t.terms.size());
  r.value = std::sqrt((2.0 * m + 1.0 + std::sqrt(4.0 * m + 1.0)) / 2.0) +
            detail::max_pole_modulus(t);
  r.hypothesis_ok = detail::all_coefficients_unitary(t);
  if (!r.hypothesis_ok)
    r.notes.push_back("coefficients are not unitary; value is not a certificate");
  r.elapsed = watch.elapsed();
  return r;
}

// Largest root of q(x) = x - ||B0|| - sum_i ||B_i|| / (x - |alpha_i|).
inline BoundReport rational_upper_bound(const MatrixRationalFunction& t,
                                        NormKind norm = NormKind::Spectral) {
  require_valid(t);
  detail::StopWatch watch;
  BoundReport r;
  r.method = BoundMethod::RationalUpper;
  r.norm = norm;
  std::vector<std::pair<double, double>> terms;
  terms.reserve(t.terms.size());
  for (const auto& term : t.terms)
    terms.emplace_back(induced_norm(term.coeff, norm), std::abs(term.pole));
  r.value = largest_root(pole_sum_build(induced_norm(t.b0, norm), terms));
  r.elapsed = watch.elapsed();
  return r;
}

// Smallest root of p(x) = x - ||B0^{-1}||^{-1} - sum_i ||B_i|| / (x - |alpha_i|),
// valid when B0 is invertible and ||B0^{-1}||^{-1} > sum ||B_i|| / |alpha_i|.
inline BoundReport rational_lower_bound(const MatrixRationalFunction& t,
                                        NormKind norm = NormKind::Spectral) {
  require_valid(t);
  detail::StopWatch watch;
  BoundReport r;
  r.method = BoundMethod::RationalLower;
  r.direction = BoundDirection::Lower;
  r.norm = norm;

  const double inv_norm = inv_norm_inverse(t.b0, norm);
  if (inv_norm == 0.0) {
    r.hypothesis_ok = false;
    r.notes.push_back("B0 is singular");
  }
  double pole_sum = 0.0;
  std::vector<std::pair<double, double>> terms;
  terms.reserve(t.terms.size());
  for (const auto& term : t.terms) {
    double mod = std::abs(term.pole);
    double nrm = induced_norm(term.coeff, norm);
    if (mod == 0.0) {
      r.hypothesis_ok = false;
      r.notes.push_back("zero pole present");
      continue;
    }
    pole_sum += nrm / mod;
    terms.emplace_back(nrm, mod);
  }
  if (r.hypothesis_ok && !(inv_norm > pole_sum + 1e-12)) {
    r.hypothesis_ok = false;
    r.notes.push_back("||B0^{-1}||^{-1} does not dominate sum ||B_i||/|alpha_i|");
  }
  r.value = smallest_root(pole_sum_build(inv_norm, terms));
  r.elapsed = watch.elapsed();
  return r;
}

namespace detail {

// ||A_k|| for the pole-cleared polynomial without materializing A_k; each
// coefficient is a scalar combination of I, B0 and the B_i.
inline double combo_norm(const MatrixRationalFunction& t,
                         const PolyCoefficientCombo& c, NormKind kind) {
  const Eigen::Index n = t.n;
  auto column = [&](Eigen::Index j) -> ComplexVector {
    ComplexVector col = c.b0 * t.b0.col(j);
    for (size_t i = 0; i < c.terms.size(); ++i)
      col += c.terms[i] * t.terms[i].coeff.col(j);
    col[j] += c.identity;
    return col;
  };
  switch (kind) {
    case NormKind::Spectral: {
      LinearOperator op;
      op.rows = op.cols = n;
      op.apply = [&t, &c](const ComplexVector& x) -> ComplexVector {
        ComplexVector y = c.identity * x + c.b0 * (t.b0 * x);
        for (size_t i = 0; i < c.terms.size(); ++i)
          y += c.terms[i] * (t.terms[i].coeff * x);
        return y;
      };
      op.apply_adjoint = [&t, &c](const ComplexVector& y) -> ComplexVector {
        ComplexVector x =
            std::conj(c.identity) * y + std::conj(c.b0) * (t.b0.adjoint() * y);
        for (size_t i = 0; i < c.terms.size(); ++i)
          x += std::conj(c.terms[i]) * (t.terms[i].coeff.adjoint() * y);
        return x;
      };
      return spectral_norm(op);
    }
    case NormKind::One: {
      double mx = 0.0;
      for (Eigen::Index j = 0; j < n; ++j)
        mx = std::max(mx, column(j).cwiseAbs().sum());
      return mx;
    }
    case NormKind::Infinity: {
      Eigen::VectorXd sums = Eigen::VectorXd::Zero(n);
      for (Eigen::Index j = 0; j < n; ++j)
        sums += column(j).cwiseAbs();
      return sums.maxCoeff();
    }
  }
  return 0.0;
}

}  // namespace detail

// Higham-Tisseur upper bound through pole-clearing: the unique positive root
// of u(x) = x^{m+1} - ||A_m|| x^m - ... - ||A_0||.
inline BoundReport polynomial_bound(const MatrixRationalFunction& t,
                                    NormKind norm = NormKind::Spectral) {
  require_valid(t);
  detail::StopWatch watch;
  BoundReport r;
  r.method = BoundMethod::Polynomial;
  r.norm = norm;

  HTPolynomial u;
  u.kind = HTPolynomial::Kind::Upper;
  u.lead = 1.0;  // leading coefficient of the cleared polynomial is I
  if (t.n <= kDenseSvdLimit) {
    MatrixPolynomial p = to_polynomial(t);
    for (size_t k = 0; k + 1 < p.coeffs.size(); ++k)
      u.body.push_back(induced_norm(p.coeffs[k], norm));
  } else {
    auto combos = detail::poly_coefficient_combos(t);
    for (size_t k = 0; k + 1 < combos.size(); ++k)
      u.body.push_back(detail::combo_norm(t, combos[k], norm));
  }
  r.value = ht_positive_root(u);
  if (t.terms.size() > 1) r.notes.push_back("general-m extension");
  r.elapsed = watch.elapsed();
  return r;
}

// With unitary coefficients the rational upper bound is guaranteed to beat
// the closed-form Bauer-Fike bound; exposed as an assertable predicate.
inline bool unitary_dominance_check(const MatrixRationalFunction& t) {
  require_valid(t);
  if (t.terms.empty())
    throw std::invalid_argument("unitary_dominance_check: requires m >= 1");
  if (!detail::all_coefficients_unitary(t))
    throw std::invalid_argument(
        "unitary_dominance_check: coefficients must be unitary");
  return rational_upper_bound(t, NormKind::Spectral).value <
         unitary_closed_form_bound(t).value;
}

}  // namespace rembound
