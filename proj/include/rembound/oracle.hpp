#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "rembound/bounds.hpp"
#include "rembound/linalg.hpp"
#include "rembound/mrf.hpp"

namespace rembound {

struct SpectrumResult {
  std::vector<Complex> eigenvalues;  // kept, away from every pole
  std::vector<std::pair<Complex, int>> removed_at_poles;  // (pole, count)
  std::vector<double> residuals;  // sigma_min(T(lambda)) per kept eigenvalue
  double mu = 0.0;                // max modulus of kept eigenvalues
};

// Default per-pole filter distance: 1e-8 * (1 + |alpha_i|).
inline double default_pole_tol(Complex pole) {
  return 1e-8 * (1.0 + std::abs(pole));
}

// Ground-truth spectrum of T via the block companion matrix. pole_tol <= 0
// selects the per-pole default. Residual computation is optional because it
// costs one n x n SVD per kept eigenvalue.
inline SpectrumResult spectrum(const MatrixRationalFunction& t,
                               double pole_tol = 0.0,
                               bool with_residuals = true) {
  require_valid(t);
  SpectrumResult out;
  auto eigs = eigenvalues(companion(t));

  for (Complex lambda : eigs) {
    bool at_pole = false;
    for (const auto& term : t.terms) {
      double tol = pole_tol > 0 ? pole_tol : default_pole_tol(term.pole);
      if (std::abs(lambda - term.pole) <= tol) {
        at_pole = true;
        auto it = std::find_if(out.removed_at_poles.begin(),
                               out.removed_at_poles.end(),
                               [&](const auto& p) { return p.first == term.pole; });
        if (it == out.removed_at_poles.end())
          out.removed_at_poles.emplace_back(term.pole, 1);
        else
          ++it->second;
        break;
      }
    }
    if (!at_pole) out.eigenvalues.push_back(lambda);
  }

  for (Complex lambda : out.eigenvalues)
    out.mu = std::max(out.mu, std::abs(lambda));

  if (with_residuals) {
    out.residuals.reserve(out.eigenvalues.size());
    for (Complex lambda : out.eigenvalues)
      out.residuals.push_back(smallest_singular_value(evaluate(t, lambda)));
  }
  return out;
}

struct BoundCheck {
  BoundMethod method = BoundMethod::BauerFike;
  BoundDirection direction = BoundDirection::Upper;
  bool certified = false;  // hypothesis held and the check was run
  bool pass = false;
  double slack = 0.0;  // bound - mu (upper) or min modulus - bound (lower)
};

struct VerificationSummary {
  double mu = 0.0;
  double min_modulus = 0.0;
  std::vector<BoundCheck> checks;
  bool all_pass = true;  // over certified checks
};

// Check a set of bound reports against the oracle spectrum.
inline VerificationSummary verify_bounds(const MatrixRationalFunction& t,
                                         const std::vector<BoundReport>& reports,
                                         double pole_tol = 0.0) {
  SpectrumResult s = spectrum(t, pole_tol, /*with_residuals=*/false);
  VerificationSummary out;
  out.mu = s.mu;
  out.min_modulus = std::numeric_limits<double>::infinity();
  for (Complex lambda : s.eigenvalues)
    out.min_modulus = std::min(out.min_modulus, std::abs(lambda));

  for (const auto& r : reports) {
    BoundCheck c;
    c.method = r.method;
    c.direction = r.direction;
    c.certified = r.hypothesis_ok;
    if (r.direction == BoundDirection::Upper) {
      c.slack = r.value - out.mu;
      c.pass = out.mu <= r.value * (1.0 + 1e-8);
    } else {
      c.slack = out.min_modulus - r.value;
      c.pass = s.eigenvalues.empty() ||
               out.min_modulus >= r.value * (1.0 - 1e-8);
    }
    if (c.certified && !c.pass) out.all_pass = false;
    out.checks.push_back(c);
  }
  return out;
}

}  // namespace rembound
