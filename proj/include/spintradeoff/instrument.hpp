#pragma once

#include <Eigen/Dense>
#include <optional>

#include "spintradeoff/angular.hpp"
#include "spintradeoff/coherent.hpp"
#include "spintradeoff/tradeoff.hpp"

namespace spintradeoff {

// Density operator on the spin-j space.
struct DensityMatrix {
  SpinJ j;
  Eigen::MatrixXcd rho;

  static DensityMatrix pure(SpinJ j, const Eigen::VectorXcd& psi);
  // Hermiticity and unit trace within 1e-12, eigenvalues >= -1e-12.
  void validate(double tol = 1e-12) const;
};

// Covariant rank-one instrument with Kraus operators A_g = U_g xi U_g^dag,
// outcome g running over the group with normalized Haar measure. The seed xi
// is diagonal; trace preservation is the XiDiagonal normalization.
struct CovariantInstrument {
  SpinJ j;
  XiDiagonal xi;

  CovariantInstrument(SpinJ j_, XiDiagonal xi_);

  // a_n = 1 for all n: the instrument that never disturbs (and never learns).
  static CovariantInstrument identity(SpinJ j);
  // a = (sqrt(2j+1), 0, ..., 0): the coherent-state POVM, best estimation.
  static CovariantInstrument optimal_estimation(SpinJ j);
};

// Kraus operator A_g = U_g xi U_g^dag; Hermitian positive semidefinite with
// the a_n as eigenvalues.
Eigen::MatrixXcd kraus_at(const CovariantInstrument& inst, const GroupElement& g);

struct MeasurementOutcome {
  // Empty when the outcome density vanishes (posterior not normalizable).
  std::optional<DensityMatrix> posterior;
  double density = 0.0;  // Tr{A_g rho A_g}, w.r.t. normalized Haar measure
};

MeasurementOutcome apply(const CovariantInstrument& inst, const GroupElement& g,
                         const DensityMatrix& rho);

struct FidelityPair {
  double F = 0.0;  // operation fidelity
  double G = 0.0;  // estimation fidelity
};

// Closed bilinear forms in the stretched CG coefficients:
//   F = sum_{n,m} a_n a_m c_{n,m}^2 / (4j+1)
//   G = sum_n a_n^2 c_{n,-j}^2 / (4j+1)
FidelityPair fidelities_bilinear(const CovariantInstrument& inst);

// Independent route: the group integrals reduce to one-dimensional
// polynomial integrals in u = cos^2(theta/2),
//   F = int_0^1 [sum_n a_n b_n(u)]^2 du
//   G = int_0^1 [sum_n a_n^2 b_n(u)] u^{2j} du
// with b_n(u) = binom(2j, j+n) (1-u)^{j+n} u^{j-n}, evaluated by
// Gauss-Legendre. Requires nodes >= 2(2j)+2 so the rule is exact; fewer
// nodes raise std::domain_error.
FidelityPair fidelities_quadrature(const CovariantInstrument& inst, int nodes);

struct MonteCarloFidelities {
  double F = 0.0;
  double G = 0.0;
  double stderr_F = 0.0;
  double stderr_G = 0.0;
};

// Second independent route: sample directions from the orbit measure and
// average the same integrands. Requires samples >= 100.
MonteCarloFidelities fidelities_monte_carlo(const CovariantInstrument& inst,
                                            long samples, RandomSource& rng);

// Frobenius norm of U_g^dag E_h[U_g rho U_g^dag] U_g - E_{g^-1 h}[rho],
// comparing the unnormalized maps. Zero (to rounding) for every covariant
// instrument; this is the residual the covariance tests measure.
double covariance_residual(const CovariantInstrument& inst, const GroupElement& g,
                           const GroupElement& h, const DensityMatrix& rho);

}  // namespace spintradeoff
