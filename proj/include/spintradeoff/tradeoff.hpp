#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "spintradeoff/angular.hpp"

namespace spintradeoff {

// Fidelity bounds. G_max coincides with F_min: the best estimation fidelity
// costs exactly that much operation fidelity.
double g_min(SpinJ j);  // 1/(2j+1), random guess
double g_max(SpinJ j);  // (2j+1)/(4j+1)
double f_min(SpinJ j);  // (2j+1)/(4j+1)

// Restrictions of the fidelity operators to the span of |n>|n>:
//   K[n][m]  = c_{n,m}^2 / (4j+1)   (operation fidelity quadratic form)
//   dG[n]    = c_{n,-j}^2 / (4j+1)  (estimation fidelity diagonal)
struct TradeoffMatrices {
  SpinJ j;
  Eigen::MatrixXd K;
  Eigen::VectorXd dG;
};

TradeoffMatrices build_matrices(SpinJ j);

struct PrincipalEigen {
  double lambda;
  Eigen::VectorXd vector;  // unit norm, entrywise >= 0
};

// Largest eigenvalue and Perron eigenvector of a symmetric entrywise
// nonnegative matrix. Power iteration from a uniform positive start; falls
// back to a full Jacobi solve if the residual stalls (small spectral gap).
// Throws std::domain_error for non-symmetric or negative input and
// numeric_error if both paths fail to certify the eigenpair.
PrincipalEigen principal_eigenvector(const Eigen::MatrixXd& m);

// Diagonal seed of a rank-one covariant instrument: xi = sum_n a_n |n><n|
// with a_n >= 0 and sum_n a_n^2 = 2j+1 (trace preservation).
struct XiDiagonal {
  SpinJ j;
  Eigen::VectorXd a;  // indexed k = j+n, n ascending from -j

  double trace() const { return a.sum(); }
  // Throws std::domain_error if entries are negative or the normalization is
  // off by more than tol.
  void validate(double tol = 1e-10) const;
};

// One sample of the Pareto frontier at mixing weight p.
struct TradeoffPoint {
  double p = 0.0;
  XiDiagonal xi;
  double G = 0.0;
  double F = 0.0;
  double I = 0.0;
  double D = 0.0;
  double trace_xi = 0.0;
  double lambda_max = 0.0;  // of p diag(dG) + (1-p) K; (2j+1) lambda = pG+(1-p)F
};

// Maximizes p G + (1-p) F over instruments, on the diagonal subspace.
// p = 1 returns the pure-estimation solution a = (sqrt(2j+1), 0, ..., 0)
// analytically (the matrix is diagonal there and power iteration has no
// certificate). Throws std::domain_error for p outside [0, 1].
TradeoffPoint tradeoff_point(SpinJ j, double p);

struct SweepResult {
  std::vector<TradeoffPoint> points;
  // Non-monotone G/F along the grid would land here; empty on a clean sweep.
  std::vector<std::string> warnings;
};

// One point per grid value; grid must be nonempty, ascending, within [0, 1].
SweepResult sweep_curve(SpinJ j, const std::vector<double>& grid);

// Bisects p until |G(p) - g_target| <= tol. G(p) is monotone nondecreasing;
// a bracket violation raises numeric_error rather than a silent answer.
TradeoffPoint solve_for_G(SpinJ j, double g_target, double tol = 1e-8);

// (I, D) = ((G - G_min)/(G_max - G_min), (1 - F)/(1 - F_min)), clamped to
// [0, 1] when within 1e-14 of a boundary; beyond that throws
// std::domain_error.
std::pair<double, double> normalize(SpinJ j, double G, double F);

// Disturbance at information I for harmonic-oscillator coherent states,
// D(I) = 1 - sqrt(2(1-I)/(2-I)); the large-j limit of the spin curves.
double ho_tradeoff(double I);

}  // namespace spintradeoff
