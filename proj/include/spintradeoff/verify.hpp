#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "spintradeoff/angular.hpp"
#include "spintradeoff/coherent.hpp"

namespace spintradeoff {

// Fidelity operators on the doubled space H (x) H, in the first-factor-major
// product basis with m ascending from -j in each factor. All three are real
// in this basis (the stretched CG coefficients are real):
//   P_2j : projector onto the maximal-spin multiplet, rank 4j+1
//   R_F  : partial transpose (second factor) of P_2j, divided by 4j+1
//   R_G  : I (x) diag(c_{-j,m}^2) / (4j+1)
struct ChoiOperators {
  SpinJ j;
  Eigen::MatrixXd R_F;
  Eigen::MatrixXd R_G;
  Eigen::MatrixXd P_2j;
};

Eigen::MatrixXd build_projector_2j(SpinJ j);
ChoiOperators build_RF_RG(SpinJ j);

// Empirical Haar average of (U (x) U*) |-j,-j><-j,-j| (U^dag (x) U^T);
// converges to R_F. Requires samples >= 1000.
Eigen::MatrixXcd monte_carlo_RF(SpinJ j, long samples, RandomSource& rng);

// Empirical Haar average of U X U^dag; converges to Tr[X]/(2j+1) I.
// Requires samples >= 1000.
Eigen::MatrixXcd schur_average(SpinJ j, const Eigen::MatrixXcd& x, long samples,
                               RandomSource& rng);

struct EigencheckResult {
  double overlap;     // squared overlap of the top eigenvector with the ansatz
  double lambda_gap;  // gap between the top two eigenvalues
};

// Dense eigensolve of C(p) = p R_G + (1-p) R_F on the full (2j+1)^2 space,
// compared against the diagonal-subspace solution. Restricted to 2j <= 6 and
// p in [0, 1); at p = 1 the top eigenvalue is degenerate and the comparison
// is meaningless.
EigencheckResult full_space_eigencheck(SpinJ j, double p);

struct VerificationCheck {
  std::string name;
  bool skipped = false;
  bool passed = false;
  double residual = 0.0;
  double threshold = 0.0;
};

struct VerificationReport {
  SpinJ j;
  std::vector<VerificationCheck> checks;

  bool all_passed() const;
};

// The full oracle suite for one spin: representation identities, fidelity
// route agreement, covariance, and (for 2j <= 6) the full-space structural
// checks. Deterministic for a fixed seed.
VerificationReport run_suite(SpinJ j, long samples, std::uint64_t seed);

}  // namespace spintradeoff
