#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rembound/linalg.hpp"

namespace rembound {

struct PoleProximityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// T(lambda) = -B0 + I*lambda + sum_i B_i / (lambda - alpha_i)
struct MatrixRationalFunction {
  struct Term {
    Complex pole;
    ComplexMatrix coeff;
  };

  Eigen::Index n = 0;
  ComplexMatrix b0;
  std::vector<Term> terms;

  Eigen::Index num_poles() const {
    return static_cast<Eigen::Index>(terms.size());
  }
};

// P(lambda) = sum_i coeffs[i] * lambda^i
struct MatrixPolynomial {
  std::vector<ComplexMatrix> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline std::vector<std::string> validate(const MatrixRationalFunction& t) {
  std::vector<std::string> out;
  if (t.n <= 0) out.push_back("dimension: n must be positive");
  if (t.b0.rows() != t.n || t.b0.cols() != t.n)
    out.push_back("dimension: B0 is not n x n");
  if (!all_finite(t.b0)) out.push_back("non-finite entries in B0");
  for (size_t i = 0; i < t.terms.size(); ++i) {
    const auto& term = t.terms[i];
    if (term.coeff.rows() != t.n || term.coeff.cols() != t.n)
      out.push_back("dimension: B" + std::to_string(i + 1) + " is not n x n");
    if (!all_finite(term.coeff))
      out.push_back("non-finite entries in B" + std::to_string(i + 1));
    if (!std::isfinite(term.pole.real()) || !std::isfinite(term.pole.imag()))
      out.push_back("non-finite pole alpha" + std::to_string(i + 1));
    for (size_t j = i + 1; j < t.terms.size(); ++j)
      if (term.pole == t.terms[j].pole)
        out.push_back("duplicate pole alpha" + std::to_string(i + 1) + " = alpha" +
                      std::to_string(j + 1));
  }
  return out;
}

inline void require_valid(const MatrixRationalFunction& t) {
  auto v = validate(t);
  if (!v.empty())
    throw std::invalid_argument("invalid matrix rational function: " + v.front());
}

inline ComplexMatrix evaluate(const MatrixRationalFunction& t, Complex lambda) {
  ComplexMatrix out = -t.b0;
  out += lambda * ComplexMatrix::Identity(t.n, t.n);
  for (const auto& term : t.terms) {
    Complex d = lambda - term.pole;
    if (std::abs(d) <= 1e-12 * (1.0 + std::abs(term.pole)))
      throw PoleProximityError("evaluate: lambda too close to pole");
    out += term.coeff / d;
  }
  return out;
}

// The (m+1)n x (m+1)n block companion matrix C_T:
//   [ alpha_1 I            -I ]
//   [        ...           -I ]
//   [           alpha_m I  -I ]
//   [ B_1   ...    B_m     B0 ]
inline ComplexMatrix companion(const MatrixRationalFunction& t) {
  require_valid(t);
  const Eigen::Index n = t.n;
  const Eigen::Index m = t.num_poles();
  const Eigen::Index dim = (m + 1) * n;
  ComplexMatrix c = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < m; ++i) {
    c.block(i * n, i * n, n, n) =
        t.terms[static_cast<size_t>(i)].pole * ComplexMatrix::Identity(n, n);
    c.block(i * n, m * n, n, n) = -ComplexMatrix::Identity(n, n);
    c.block(m * n, i * n, n, n) = t.terms[static_cast<size_t>(i)].coeff;
  }
  c.block(m * n, m * n, n, n) = t.b0;
  return c;
}

// C_T = A + E with A = diag(alpha_1 I, ..., alpha_m I, 0).
inline std::pair<ComplexMatrix, ComplexMatrix> perturbation_split(
    const MatrixRationalFunction& t) {
  ComplexMatrix c = companion(t);
  const Eigen::Index n = t.n;
  const Eigen::Index m = t.num_poles();
  ComplexMatrix a = ComplexMatrix::Zero(c.rows(), c.cols());
  for (Eigen::Index i = 0; i < m; ++i)
    a.block(i * n, i * n, n, n) =
        t.terms[static_cast<size_t>(i)].pole * ComplexMatrix::Identity(n, n);
  ComplexMatrix e = c - a;
  return {std::move(a), std::move(e)};
}

namespace detail {

// Coefficients of prod_i (x - r_i) via elementary symmetric polynomials,
// lowest degree first.
inline std::vector<Complex> monic_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{Complex(1.0, 0.0)};
  for (Complex r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0, 0.0));
    for (size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

// Per-coefficient scalar weights of the pole-cleared polynomial:
//   P(lambda) = prod(lambda - alpha_i) (I lambda - B0)
//              + sum_i B_i prod_{j != i} (lambda - alpha_j)
// Coefficient k of lambda^k is w.identity*I + w.b0*B0 + sum w.terms[i]*B_i.
struct PolyCoefficientCombo {
  Complex identity{0.0, 0.0};
  Complex b0{0.0, 0.0};
  std::vector<Complex> terms;
};

inline std::vector<PolyCoefficientCombo> poly_coefficient_combos(
    const MatrixRationalFunction& t) {
  const size_t m = t.terms.size();
  std::vector<Complex> poles;
  poles.reserve(m);
  for (const auto& term : t.terms) poles.push_back(term.pole);
  std::vector<Complex> s = monic_from_roots(poles);  // degree m

  std::vector<PolyCoefficientCombo> combos(m + 2);
  for (auto& c : combos) c.terms.assign(m, Complex(0.0, 0.0));
  // prod * (I lambda - B0)
  for (size_t k = 0; k <= m; ++k) {
    combos[k + 1].identity += s[k];
    combos[k].b0 -= s[k];
  }
  // + sum_i B_i * prod_{j != i}
  for (size_t i = 0; i < m; ++i) {
    std::vector<Complex> others;
    others.reserve(m - 1);
    for (size_t j = 0; j < m; ++j)
      if (j != i) others.push_back(poles[j]);
    std::vector<Complex> si = monic_from_roots(others);  // degree m-1
    for (size_t k = 0; k < si.size(); ++k) combos[k].terms[i] += si[k];
  }
  return combos;
}

}  // namespace detail

// Clear the poles: prod_i (lambda - alpha_i) * T(lambda), a monic matrix
// polynomial of degree m+1.
inline MatrixPolynomial to_polynomial(const MatrixRationalFunction& t) {
  require_valid(t);
  auto combos = detail::poly_coefficient_combos(t);
  MatrixPolynomial p;
  p.coeffs.reserve(combos.size());
  for (const auto& c : combos) {
    ComplexMatrix a = c.identity * ComplexMatrix::Identity(t.n, t.n);
    a += c.b0 * t.b0;
    for (size_t i = 0; i < c.terms.size(); ++i)
      a += c.terms[i] * t.terms[i].coeff;
    p.coeffs.push_back(std::move(a));
  }
  return p;
}

inline ComplexMatrix poly_evaluate(const MatrixPolynomial& p, Complex lambda) {
  if (p.coeffs.empty())
    throw std::invalid_argument("poly_evaluate: empty polynomial");
  ComplexMatrix out = p.coeffs.back();
  for (auto it = p.coeffs.rbegin() + 1; it != p.coeffs.rend(); ++it)
    out = lambda * out + *it;
  return out;
}

// Standard block companion linearization of a monic matrix polynomial.
inline ComplexMatrix poly_companion(const MatrixPolynomial& p) {
  const int d = p.degree();
  if (d < 1) throw std::invalid_argument("poly_companion: degree must be >= 1");
  const Eigen::Index n = p.coeffs.front().rows();
  if (!p.coeffs.back().isApprox(ComplexMatrix::Identity(n, n), 1e-12))
    throw std::invalid_argument("poly_companion: polynomial must be monic");
  ComplexMatrix c = ComplexMatrix::Zero(d * n, d * n);
  for (int i = 0; i + 1 < d; ++i)
    c.block((i + 1) * n, i * n, n, n) = ComplexMatrix::Identity(n, n);
  for (int i = 0; i < d; ++i)
    c.block(i * n, (d - 1) * n, n, n) = -p.coeffs[static_cast<size_t>(i)];
  return c;
}

}  // namespace rembound
