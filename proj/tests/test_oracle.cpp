#include <catch_amalgamated.hpp>

#include <random>

#include "rembound/oracle.hpp"
#include "rembound/problems.hpp"
#include "test_helpers.hpp"

using namespace rembound;
using test_helpers::multiset_distance;

TEST_CASE("spectrum on simple instances") {
  MatrixRationalFunction t;
  t.n = 1;
  t.b0 = ComplexMatrix::Zero(1, 1);
  t.terms.push_back({Complex(0.0), ComplexMatrix::Constant(1, 1, Complex(1.0))});
  // T(lambda) = lambda + 1/lambda vanishes at +-i.
  auto s = spectrum(t);
  REQUIRE(multiset_distance(s.eigenvalues,
                            {Complex(0.0, 1.0), Complex(0.0, -1.0)}) < 1e-10);
  REQUIRE(s.mu == Catch::Approx(1.0));
  REQUIRE(s.removed_at_poles.empty());

  MatrixRationalFunction linear;
  linear.n = 2;
  linear.b0 = ComplexMatrix::Zero(2, 2);
  linear.b0.diagonal() << Complex(2.0), Complex(5.0);
  s = spectrum(linear);
  REQUIRE(multiset_distance(s.eigenvalues, {Complex(2.0), Complex(5.0)}) < 1e-12);
  REQUIRE(s.mu == Catch::Approx(5.0));
}

TEST_CASE("string problem n=3 reproduces the reference mu") {
  auto t = string_problem({3, Complex(1.0)});
  auto s = spectrum(t);
  REQUIRE(s.mu == Catch::Approx(94.60).margin(0.005));
}

TEST_CASE("count conservation and residuals on random instances") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    int m = static_cast<int>(rng() % 4);
    auto t = random_mrf(n, m, {}, CoefficientKind::Gaussian, rng());
    auto s = spectrum(t);
    int removed = 0;
    for (const auto& [pole, count] : s.removed_at_poles) removed += count;
    REQUIRE(static_cast<int>(s.eigenvalues.size()) + removed == (m + 1) * n);

    double ref_norm = induced_norm(evaluate(t, Complex(0.37, 1.11)),
                                   NormKind::Spectral);
    for (double r : s.residuals) REQUIRE(r <= 1e-6 * (1.0 + ref_norm));
  }
}

TEST_CASE("nonsingular coefficients leave nothing at the poles") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = random_mrf(3, 2, {}, CoefficientKind::Gaussian, rng());
    bool all_nonsingular = true;
    for (const auto& term : t.terms)
      if (smallest_singular_value(term.coeff) <= 1e-10) all_nonsingular = false;
    if (!all_nonsingular) continue;  // Gaussian, essentially never
    REQUIRE(spectrum(t).removed_at_poles.empty());
  }
}

TEST_CASE("a singular coefficient parks its pole in removed_at_poles") {
  std::mt19937_64 rng(63);
  auto t = random_mrf(3, 2, {}, CoefficientKind::Gaussian, rng());
  // Replace B_1 with a rank-deficient matrix.
  t.terms[0].coeff.col(2) = t.terms[0].coeff.col(0) + t.terms[0].coeff.col(1);
  t.terms[0].coeff.col(1) = 2.0 * t.terms[0].coeff.col(0);
  auto s = spectrum(t);
  bool found = false;
  for (const auto& [pole, count] : s.removed_at_poles)
    if (pole == t.terms[0].pole && count >= 1) found = true;
  REQUIRE(found);
}

TEST_CASE("verify_bounds") {
  auto t = remark_example("1a");
  std::vector<BoundReport> reports{bauer_fike_bound(t), rational_upper_bound(t),
                                   polynomial_bound(t), rational_lower_bound(t)};
  auto summary = verify_bounds(t, reports);
  REQUIRE(summary.all_pass);
  for (const auto& c : summary.checks)
    if (c.certified) REQUIRE(c.pass);

  // m=0 identity: every bound is at least mu = 1.
  MatrixRationalFunction id;
  id.n = 2;
  id.b0 = ComplexMatrix::Identity(2, 2);
  auto s2 = verify_bounds(id, {bauer_fike_bound(id), rational_upper_bound(id)});
  REQUIRE(s2.mu == Catch::Approx(1.0));
  REQUIRE(s2.all_pass);

  // Negative control: a corrupted upper bound must fail.
  BoundReport bogus = bauer_fike_bound(t);
  bogus.value = summary.mu / 2.0;
  auto s3 = verify_bounds(t, {bogus});
  REQUIRE_FALSE(s3.all_pass);
  REQUIRE_FALSE(s3.checks[0].pass);
}
