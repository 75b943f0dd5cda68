#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "rembound/linalg.hpp"
#include "rembound/mrf.hpp"

namespace rembound {

// Eigenvibration of a string with an attached load: finite element
// discretization on n elements, one pole at alpha.
struct StringProblemSpec {
  Eigen::Index n = 2;
  Complex alpha{1.0, 0.0};
};

namespace detail {

// Thomas solve for a symmetric tridiagonal system (diag d, off-diagonal e),
// in place on rhs. B here is strictly diagonally dominant, no pivoting needed.
inline void tridiag_solve(const Eigen::VectorXd& d, const Eigen::VectorXd& e,
                          Eigen::VectorXd& rhs) {
  const Eigen::Index n = d.size();
  Eigen::VectorXd c(n);
  c[0] = e[0] / d[0];
  rhs[0] /= d[0];
  for (Eigen::Index i = 1; i < n; ++i) {
    double w = d[i] - e[i - 1] * c[i - 1];
    if (i < n - 1) c[i] = e[i] / w;
    rhs[i] = (rhs[i] - e[i - 1] * rhs[i - 1]) / w;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace detail

// T(lambda) = -(A+C)B^{-1} + I lambda - C B^{-1} alpha/(lambda - alpha) with
//   A = (1/h) tridiag(-1, 2, -1), A(n,n) = 1/h
//   B = (h/6) tridiag(1, 4, 1),   B(n,n) = 2h/6
//   C = e_n e_n^T,                h = 1/n
// so B0 = (A+C)B^{-1} and B1 = -alpha C B^{-1}.
inline MatrixRationalFunction string_problem(const StringProblemSpec& spec) {
  const Eigen::Index n = spec.n;
  if (n < 2) throw std::invalid_argument("string_problem: n must be >= 2");
  if (spec.alpha == Complex(0.0, 0.0))
    throw std::invalid_argument("string_problem: alpha must be nonzero");
  const double h = 1.0 / static_cast<double>(n);

  Eigen::VectorXd bd = Eigen::VectorXd::Constant(n, 4.0 * h / 6.0);
  bd[n - 1] = 2.0 * h / 6.0;
  Eigen::VectorXd be = Eigen::VectorXd::Constant(n - 1, h / 6.0);

  // B0^T = B^{-1}(A+C): solve column by column against the sparse A+C.
  MatrixRationalFunction t;
  t.n = n;
  t.b0 = ComplexMatrix(n, n);
  Eigen::VectorXd col(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    col.setZero();
    col[j] = (j == n - 1 ? 1.0 / h + 1.0 : 2.0 / h);  // A(n,n)=1/h, C(n,n)=1
    if (j > 0) col[j - 1] = -1.0 / h;
    if (j < n - 1) col[j + 1] = -1.0 / h;
    detail::tridiag_solve(bd, be, col);
    t.b0.row(j) = col.cast<Complex>().transpose();  // transpose of B^{-1}(A+C)
  }

  // B1 = -alpha e_n (B^{-1} e_n)^T, rank one.
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  y[n - 1] = 1.0;
  detail::tridiag_solve(bd, be, y);
  ComplexMatrix b1 = ComplexMatrix::Zero(n, n);
  b1.row(n - 1) = (-spec.alpha) * y.cast<Complex>().transpose();
  t.terms.push_back({spec.alpha, std::move(b1)});
  return t;
}

// The first form of the string problem, A - B lambda + C lambda/(lambda-alpha),
// kept for cross-checking the two formulations against each other.
inline void string_problem_matrices(const StringProblemSpec& spec,
                                    Eigen::MatrixXd& a, Eigen::MatrixXd& b,
                                    Eigen::MatrixXd& c) {
  const Eigen::Index n = spec.n;
  const double h = 1.0 / static_cast<double>(n);
  a = Eigen::MatrixXd::Zero(n, n);
  b = Eigen::MatrixXd::Zero(n, n);
  c = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = (i == n - 1 ? 1.0 : 2.0) / h;
    b(i, i) = (i == n - 1 ? 2.0 : 4.0) * h / 6.0;
    if (i + 1 < n) {
      a(i, i + 1) = a(i + 1, i) = -1.0 / h;
      b(i, i + 1) = b(i + 1, i) = h / 6.0;
    }
  }
  c(n - 1, n - 1) = 1.0;
}

// The exact instances behind the printed comparison numbers.
inline MatrixRationalFunction remark_example(const std::string& id) {
  MatrixRationalFunction t;
  t.n = 2;
  if (id == "1a" || id == "1b") {
    t.b0 = ComplexMatrix::Zero(2, 2);
    t.b0(1, 0) = 1.0;
    ComplexMatrix b1 = ComplexMatrix::Zero(2, 2);
    b1(0, 0) = 1.0;
    Complex alpha = (id == "1a") ? Complex(0.1, 0.0) : Complex(1.0, 0.0);
    t.terms.push_back({alpha, std::move(b1)});
    return t;
  }
  Complex alpha;
  if (id == "2a") alpha = Complex(1.0, 0.0);
  else if (id == "2b") alpha = Complex(0.0, 1.0);
  else if (id == "3a") alpha = Complex(-1.5, 0.0);
  else if (id == "3b") alpha = Complex(1.5, 0.0);
  else throw std::invalid_argument("remark_example: unknown id " + id);
  t.b0 = ComplexMatrix::Identity(2, 2);
  t.terms.push_back({alpha, ComplexMatrix::Identity(2, 2)});
  return t;
}

enum class CoefficientKind { Gaussian, HaarUnitary };

struct PoleAnnulus {
  double min_modulus = 0.1;
  double max_modulus = 10.0;
};

namespace detail {

inline ComplexMatrix gaussian_matrix(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

// QR of a complex Ginibre matrix with the R diagonal phases fixed.
inline ComplexMatrix haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  ComplexMatrix g = gaussian_matrix(n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= (a > 0 ? d / a : Complex(1.0, 0.0));
  }
  return q;
}

}  // namespace detail

inline MatrixRationalFunction random_mrf(Eigen::Index n, Eigen::Index m,
                                         const PoleAnnulus& box,
                                         CoefficientKind kind,
                                         std::uint64_t seed) {
  if (n < 1 || m < 0) throw std::invalid_argument("random_mrf: bad shape");
  std::mt19937_64 rng(seed);
  auto coeff = [&]() {
    return kind == CoefficientKind::Gaussian ? detail::gaussian_matrix(n, rng)
                                             : detail::haar_unitary(n, rng);
  };
  MatrixRationalFunction t;
  t.n = n;
  t.b0 = coeff();

  std::uniform_real_distribution<double> radius(box.min_modulus,
                                                box.max_modulus);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (Eigen::Index i = 0; i < m; ++i) {
    Complex pole;
    for (;;) {
      double r = radius(rng), th = angle(rng);
      pole = Complex(r * std::cos(th), r * std::sin(th));
      bool clash = false;
      for (const auto& term : t.terms)
        if (std::abs(term.pole - pole) < 1e-6) clash = true;
      if (!clash) break;
    }
    t.terms.push_back({pole, coeff()});
  }
  return t;
}

}  // namespace rembound
