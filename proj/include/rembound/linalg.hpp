#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace rembound {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class NormKind { Spectral, One, Infinity };

inline const char* norm_name(NormKind k) {
  switch (k) {
    case NormKind::Spectral: return "spectral";
    case NormKind::One: return "one";
    case NormKind::Infinity: return "inf";
  }
  return "?";
}

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigensolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A matrix is treated as singular when sigma_min <= kSingularRelTol * sigma_max.
inline constexpr double kSingularRelTol = 1e-12;

// Full SVD up to this dimension; Lanczos above.
inline constexpr int kDenseSvdLimit = 512;

inline bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions disagree (" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
  return a * b;
}

inline std::vector<double> singular_values(const ComplexMatrix& m) {
  Eigen::VectorXd sv;
  if (std::min(m.rows(), m.cols()) > 16) {
    Eigen::BDCSVD<ComplexMatrix> svd(m);
    sv = svd.singularValues();
  } else {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    sv = svd.singularValues();
  }
  return {sv.data(), sv.data() + sv.size()};
}

// Matrix-free linear operator; used for spectral norms of matrices too
// large (or too structured) to materialize.
struct LinearOperator {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::function<ComplexVector(const ComplexVector&)> apply;
  std::function<ComplexVector(const ComplexVector&)> apply_adjoint;
};

inline LinearOperator as_operator(const ComplexMatrix& m) {
  LinearOperator op;
  op.rows = m.rows();
  op.cols = m.cols();
  op.apply = [&m](const ComplexVector& x) -> ComplexVector { return m * x; };
  op.apply_adjoint = [&m](const ComplexVector& y) -> ComplexVector {
    return m.adjoint() * y;
  };
  return op;
}

namespace detail {

// Largest singular value by Golub-Kahan bidiagonalization. No
// reorthogonalization: loss of orthogonality only duplicates converged
// Ritz values, which cannot push the top estimate above sigma_max.
inline double lanczos_largest_singular_value(const LinearOperator& op,
                                             double rel_tol = 1e-11,
                                             int max_steps = 10000) {
  if (op.rows == 0 || op.cols == 0) return 0.0;
  std::vector<double> alphas, betas;

  ComplexVector v = ComplexVector::Zero(op.cols);
  // Deterministic pseudo-random start vector.
  for (Eigen::Index i = 0; i < op.cols; ++i) {
    double t = 0.5 + std::sin(0.7 * static_cast<double>(i + 1));
    v[i] = Complex(t, 0.25 * std::cos(1.3 * static_cast<double>(i)));
  }
  v.normalize();

  ComplexVector u = op.apply(v);
  double alpha = u.norm();
  if (alpha == 0.0) return 0.0;
  u /= alpha;
  alphas.push_back(alpha);

  // Largest singular value of the lower bidiagonal matrix built so far.
  auto ritz = [&alphas, &betas]() {
    const int n = static_cast<int>(alphas.size());
    Eigen::MatrixXd bd = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) bd(i, i) = alphas[static_cast<size_t>(i)];
    for (int i = 0; i + 1 < n; ++i) bd(i + 1, i) = betas[static_cast<size_t>(i)];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(bd);
    return svd.singularValues()(0);
  };

  double prev_theta = 0.0;
  int stable = 0;
  for (int k = 0; k < max_steps; ++k) {
    ComplexVector w = op.apply_adjoint(u) - alpha * v;
    double beta = w.norm();
    if (beta < 1e-300) return ritz();  // invariant subspace exhausted
    v = w / beta;
    betas.push_back(beta);

    ComplexVector z = op.apply(v) - beta * u;
    alpha = z.norm();
    if (alpha < 1e-300) return ritz();
    u = z / alpha;
    alphas.push_back(alpha);

    if (k % 5 == 4 || k == max_steps - 1) {
      double theta = ritz();
      if (theta > 0 && std::abs(theta - prev_theta) <= rel_tol * theta) {
        if (++stable >= 2) return theta;
      } else {
        stable = 0;
      }
      prev_theta = theta;
    }
  }
  return prev_theta > 0 ? prev_theta : ritz();
}

}  // namespace detail

inline double spectral_norm(const LinearOperator& op) {
  return detail::lanczos_largest_singular_value(op);
}

inline double spectral_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (std::max(m.rows(), m.cols()) <= kDenseSvdLimit)
    return singular_values(m).front();
  return spectral_norm(as_operator(m));
}

inline double induced_norm(const ComplexMatrix& m, NormKind kind) {
  switch (kind) {
    case NormKind::Spectral:
      return spectral_norm(m);
    case NormKind::One:
      return m.cwiseAbs().colwise().sum().maxCoeff();
    case NormKind::Infinity:
      return m.cwiseAbs().rowwise().sum().maxCoeff();
  }
  throw std::invalid_argument("induced_norm: unknown norm kind");
}

// Eigenvalues with multiplicity. Real input takes the real-Schur path,
// which matters at companion sizes in the thousands.
inline std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw DimensionError("eigenvalues: matrix must be square");
  const Eigen::Index n = m.rows();
  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(n));
  if (n == 0) return out;

  if (m.imag().isZero(0.0)) {
    Eigen::RealSchur<Eigen::MatrixXd> schur(m.real(), /*computeU=*/false);
    if (schur.info() != Eigen::Success)
      throw EigensolverError("eigenvalues: real Schur iteration failed to converge");
    const Eigen::MatrixXd& t = schur.matrixT();
    Eigen::Index i = 0;
    while (i < n) {
      if (i + 1 < n && t(i + 1, i) != 0.0) {
        // 2x2 block: complex conjugate pair.
        double p = 0.5 * (t(i, i) + t(i + 1, i + 1));
        // Quarter discriminant of the block's characteristic polynomial.
        double disc = 0.25 * (t(i, i) - t(i + 1, i + 1)) *
                          (t(i, i) - t(i + 1, i + 1)) +
                      t(i, i + 1) * t(i + 1, i);
        // disc > 0 would mean two real eigenvalues, which RealSchur splits
        // into 1x1 blocks; here disc <= 0 up to roundoff.
        double q = std::sqrt(std::max(-disc, 0.0));
        out.emplace_back(p, q);
        out.emplace_back(p, -q);
        i += 2;
      } else {
        out.emplace_back(t(i, i), 0.0);
        ++i;
      }
    }
  } else {
    Eigen::ComplexSchur<ComplexMatrix> schur(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
      throw EigensolverError("eigenvalues: complex Schur iteration failed to converge");
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(schur.matrixT()(i, i));
  }
  return out;
}

inline double smallest_singular_value(const ComplexMatrix& m) {
  auto sv = singular_values(m);
  return sv.empty() ? 0.0 : sv.back();
}

inline bool is_numerically_singular(const ComplexMatrix& m) {
  auto sv = singular_values(m);
  if (sv.empty()) return true;
  return sv.back() <= kSingularRelTol * sv.front();
}

inline ComplexMatrix inverse(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw DimensionError("inverse: matrix must be square");
  if (is_numerically_singular(m))
    throw SingularMatrixError("inverse: matrix is numerically singular");
  return m.partialPivLu().inverse();
}

// ||m^{-1}||^{-1}; 0 encodes a singular matrix. For the spectral norm this
// is sigma_min, computed directly from the SVD.
inline double inv_norm_inverse(const ComplexMatrix& m, NormKind kind) {
  if (m.rows() != m.cols())
    throw DimensionError("inv_norm_inverse: matrix must be square");
  if (m.rows() == 0) return 0.0;
  if (kind == NormKind::Spectral) {
    auto sv = singular_values(m);
    return (sv.back() <= kSingularRelTol * sv.front()) ? 0.0 : sv.back();
  }
  if (is_numerically_singular(m)) return 0.0;
  double nrm = induced_norm(inverse(m), kind);
  return nrm > 0 ? 1.0 / nrm : 0.0;
}

inline double condition_number(const ComplexMatrix& m) {
  auto sv = singular_values(m);
  if (sv.empty() || sv.back() <= 0.0)
    return std::numeric_limits<double>::infinity();
  return sv.front() / sv.back();
}

inline ComplexMatrix identity(Eigen::Index n) {
  return ComplexMatrix::Identity(n, n);
}

}  // namespace rembound
