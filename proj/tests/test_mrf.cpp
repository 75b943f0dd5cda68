#include <catch_amalgamated.hpp>

#include <random>

#include "rembound/mrf.hpp"
#include "rembound/oracle.hpp"
#include "rembound/problems.hpp"
#include "test_helpers.hpp"

using namespace rembound;
using test_helpers::multiset_distance;
using test_helpers::random_matrix;

namespace {

MatrixRationalFunction scalar_mrf(double b0, std::vector<std::pair<Complex, Complex>> terms) {
  MatrixRationalFunction t;
  t.n = 1;
  t.b0 = ComplexMatrix::Constant(1, 1, Complex(b0));
  for (auto& [pole, coeff] : terms)
    t.terms.push_back({pole, ComplexMatrix::Constant(1, 1, coeff)});
  return t;
}

}  // namespace

TEST_CASE("validate") {
  std::mt19937_64 rng(1);
  MatrixRationalFunction t;
  t.n = 2;
  t.b0 = random_matrix(2, 2, rng);
  t.terms.push_back({Complex(1.0), random_matrix(2, 2, rng)});
  REQUIRE(validate(t).empty());

  auto dup = t;
  dup.terms.push_back({Complex(1.0), random_matrix(2, 2, rng)});
  auto v = validate(dup);
  REQUIRE_FALSE(v.empty());
  REQUIRE(v.front().find("duplicate pole") != std::string::npos);

  auto bad_dim = t;
  bad_dim.terms[0].coeff = random_matrix(3, 3, rng);
  v = validate(bad_dim);
  REQUIRE_FALSE(v.empty());
  REQUIRE(v.front().find("dimension") != std::string::npos);
}

TEST_CASE("evaluate") {
  MatrixRationalFunction t;
  t.n = 2;
  t.b0 = ComplexMatrix::Identity(2, 2);
  REQUIRE(evaluate(t, Complex(1.0)).cwiseAbs().maxCoeff() == 0.0);

  auto s = scalar_mrf(0.0, {{Complex(0.0), Complex(1.0)}});
  REQUIRE(evaluate(s, Complex(2.0))(0, 0) == Complex(2.5));
  REQUIRE_THROWS_AS(evaluate(s, Complex(0.0)), PoleProximityError);
  REQUIRE_THROWS_AS(evaluate(s, Complex(1e-14)), PoleProximityError);
}

TEST_CASE("companion structure") {
  auto t = scalar_mrf(3.0, {{Complex(2.0), Complex(5.0)}});
  ComplexMatrix c = companion(t);
  REQUIRE(c.rows() == 2);
  REQUIRE(c(0, 0) == Complex(2.0));
  REQUIRE(c(0, 1) == Complex(-1.0));
  REQUIRE(c(1, 0) == Complex(5.0));
  REQUIRE(c(1, 1) == Complex(3.0));

  auto m0 = scalar_mrf(4.0, {});
  REQUIRE(companion(m0).rows() == 1);
  REQUIRE(companion(m0)(0, 0) == Complex(4.0));

  // Eigenvalues of the companion are the roots of (x-alpha)(x-b0) + b1;
  // here x^2 + 1.
  auto s = scalar_mrf(0.0, {{Complex(0.0), Complex(1.0)}});
  REQUIRE(multiset_distance(eigenvalues(companion(s)),
                            {Complex(0.0, 1.0), Complex(0.0, -1.0)}) < 1e-12);
}

TEST_CASE("companion dimension is (m+1)n") {
  std::mt19937_64 rng(12);
  for (int n : {1, 3}) {
    for (int m : {0, 1, 3}) {
      auto t = random_mrf(n, m, {}, CoefficientKind::Gaussian, rng());
      REQUIRE(companion(t).rows() == (m + 1) * n);
    }
  }
}

TEST_CASE("perturbation_split") {
  auto t = scalar_mrf(3.0, {{Complex(2.0), Complex(5.0)}});
  auto [a, e] = perturbation_split(t);
  REQUIRE(a(0, 0) == Complex(2.0));
  REQUIRE(a(1, 1) == Complex(0.0));
  REQUIRE(e(0, 1) == Complex(-1.0));
  REQUIRE(e(1, 0) == Complex(5.0));
  REQUIRE(e(1, 1) == Complex(3.0));
  REQUIRE((a + e - companion(t)).cwiseAbs().maxCoeff() == 0.0);

  auto m0 = scalar_mrf(4.0, {});
  auto [a0, e0] = perturbation_split(m0);
  REQUIRE(a0.cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(e0(0, 0) == Complex(4.0));

  std::mt19937_64 rng(13);
  auto rand_t = random_mrf(3, 2, {}, CoefficientKind::Gaussian, rng());
  auto [ra, re] = perturbation_split(rand_t);
  REQUIRE((ra + re - companion(rand_t)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("to_polynomial m=1 closed form") {
  std::mt19937_64 rng(14);
  ComplexMatrix b0 = random_matrix(3, 3, rng), b1 = random_matrix(3, 3, rng);
  Complex alpha(0.7, -0.2);
  MatrixRationalFunction t;
  t.n = 3;
  t.b0 = b0;
  t.terms.push_back({alpha, b1});
  auto p = to_polynomial(t);
  REQUIRE(p.degree() == 2);
  REQUIRE((p.coeffs[0] - (alpha * b0 + b1)).cwiseAbs().maxCoeff() < 1e-13);
  REQUIRE((p.coeffs[1] + (b0 + alpha * ComplexMatrix::Identity(3, 3)))
              .cwiseAbs()
              .maxCoeff() < 1e-13);
  REQUIRE(p.coeffs[2].isApprox(ComplexMatrix::Identity(3, 3)));
}

TEST_CASE("to_polynomial degenerate and pointwise") {
  auto m0 = scalar_mrf(4.0, {});
  auto p0 = to_polynomial(m0);
  REQUIRE(p0.degree() == 1);
  REQUIRE(p0.coeffs[0](0, 0) == Complex(-4.0));
  REQUIRE(p0.coeffs[1](0, 0) == Complex(1.0));

  // m=2 scalar instance, compared pointwise against the defining product.
  std::mt19937_64 rng(15);
  auto t = scalar_mrf(1.5, {{Complex(0.4, 0.3), Complex(2.0)},
                            {Complex(-1.1), Complex(0.5, 0.5)}});
  auto p = to_polynomial(t);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 5; ++trial) {
    Complex lambda(u(rng), u(rng));
    Complex prod(1.0);
    for (const auto& term : t.terms) prod *= lambda - term.pole;
    ComplexMatrix lhs = poly_evaluate(p, lambda);
    ComplexMatrix rhs = prod * evaluate(t, lambda);
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <=
            1e-10 * (1.0 + rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("poly_evaluate") {
  MatrixPolynomial constant;
  constant.coeffs = {ComplexMatrix::Constant(2, 2, Complex(3.0, 1.0))};
  REQUIRE(poly_evaluate(constant, Complex(123.0)).isApprox(constant.coeffs[0]));

  MatrixPolynomial linear;
  linear.coeffs = {ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2)};
  REQUIRE(poly_evaluate(linear, Complex(3.0))
              .isApprox(ComplexMatrix(3.0 * ComplexMatrix::Identity(2, 2))));

  // (lambda - alpha) T(lambda) for m=1 equals the cleared polynomial.
  std::mt19937_64 rng(16);
  auto t = random_mrf(2, 1, {}, CoefficientKind::Gaussian, rng());
  auto p = to_polynomial(t);
  Complex lambda(1.7, 0.3);
  ComplexMatrix lhs = poly_evaluate(p, lambda);
  ComplexMatrix rhs = (lambda - t.terms[0].pole) * evaluate(t, lambda);
  REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12 * rhs.cwiseAbs().maxCoeff());
}

TEST_CASE("pointwise agreement at random points") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    auto t = random_mrf(3, 3, {}, CoefficientKind::Gaussian, rng());
    auto p = to_polynomial(t);
    for (int pt = 0; pt < 10; ++pt) {
      Complex lambda(u(rng), u(rng));
      bool near_pole = false;
      for (const auto& term : t.terms)
        if (std::abs(lambda - term.pole) < 1e-3) near_pole = true;
      if (near_pole) continue;
      Complex prod(1.0);
      for (const auto& term : t.terms) prod *= lambda - term.pole;
      ComplexMatrix lhs = poly_evaluate(p, lambda);
      ComplexMatrix rhs = prod * evaluate(t, lambda);
      REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <=
              1e-10 * (1.0 + rhs.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("companion eigenvalues match T's zeros away from poles") {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    int m = static_cast<int>(rng() % 4);
    auto t = random_mrf(n, m, {}, CoefficientKind::Gaussian, rng());
    auto eigs = eigenvalues(companion(t));
    for (Complex lambda : eigs) {
      bool near_pole = false;
      for (const auto& term : t.terms)
        if (std::abs(lambda - term.pole) <= default_pole_tol(term.pole))
          near_pole = true;
      if (near_pole) continue;
      double res = smallest_singular_value(evaluate(t, lambda));
      REQUIRE(res < 1e-8 * (1.0 + std::abs(lambda)));
    }
  }
}

TEST_CASE("companion and pole-cleared companion share their spectra") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    int m = 1 + static_cast<int>(rng() % 3);
    auto t = random_mrf(n, m, {}, CoefficientKind::Gaussian, rng());
    auto direct = eigenvalues(companion(t));
    auto cleared = eigenvalues(poly_companion(to_polynomial(t)));
    REQUIRE(multiset_distance(direct, cleared) < 1e-7);
  }
}
