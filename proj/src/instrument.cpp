#include "spintradeoff/instrument.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spintradeoff/numerics.hpp"

namespace spintradeoff {

DensityMatrix DensityMatrix::pure(SpinJ j, const Eigen::VectorXcd& psi) {
  if (psi.size() != j.dimension())
    throw std::domain_error("DensityMatrix::pure: state dimension mismatch");
  const double n2 = psi.squaredNorm();
  if (n2 < 1e-300) throw std::domain_error("DensityMatrix::pure: zero state");
  return {j, (psi * psi.adjoint()) / n2};
}

void DensityMatrix::validate(double tol) const {
  if (rho.rows() != j.dimension() || rho.cols() != j.dimension())
    throw std::domain_error("DensityMatrix: dimension mismatch");
  if ((rho - rho.adjoint()).norm() > tol)
    throw std::domain_error("DensityMatrix: not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
    throw std::domain_error("DensityMatrix: trace must be 1");
  // Eigenvalues via the real-symmetric embedding [[Re, -Im], [Im, Re]];
  // each eigenvalue of rho appears twice.
  const int d = j.dimension();
  Eigen::MatrixXd emb(2 * d, 2 * d);
  emb.topLeftCorner(d, d) = rho.real();
  emb.bottomRightCorner(d, d) = rho.real();
  emb.topRightCorner(d, d) = -rho.imag();
  emb.bottomLeftCorner(d, d) = rho.imag();
  emb = 0.5 * (emb + emb.transpose().eval());
  const EigenDecomposition dec = jacobi_eigensolver(emb);
  if (dec.values.minCoeff() < -tol)
    throw std::domain_error("DensityMatrix: negative eigenvalue");
}

CovariantInstrument::CovariantInstrument(SpinJ j_, XiDiagonal xi_)
    : j(j_), xi(std::move(xi_)) {
  xi.validate();
  if (xi.j.two_j != j.two_j)
    throw std::domain_error("CovariantInstrument: spin mismatch");
}

CovariantInstrument CovariantInstrument::identity(SpinJ j) {
  return CovariantInstrument(j, XiDiagonal{j, Eigen::VectorXd::Ones(j.dimension())});
}

CovariantInstrument CovariantInstrument::optimal_estimation(SpinJ j) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(j.dimension());
  a(0) = std::sqrt(static_cast<double>(j.dimension()));
  return CovariantInstrument(j, XiDiagonal{j, std::move(a)});
}

Eigen::MatrixXcd kraus_at(const CovariantInstrument& inst, const GroupElement& g) {
  const Eigen::MatrixXcd u = rotation_matrix(inst.j, g);
  return u * inst.xi.a.asDiagonal() * u.adjoint();
}

MeasurementOutcome apply(const CovariantInstrument& inst, const GroupElement& g,
                         const DensityMatrix& rho) {
  if (rho.j.two_j != inst.j.two_j)
    throw std::domain_error("apply: spin mismatch between instrument and state");
  const Eigen::MatrixXcd a = kraus_at(inst, g);
  Eigen::MatrixXcd out = a * rho.rho * a;  // A_g Hermitian
  MeasurementOutcome result;
  result.density = out.trace().real();
  if (result.density > 1e-15) {
    out /= result.density;
    out = 0.5 * (out + out.adjoint().eval());
    result.posterior = DensityMatrix{inst.j, std::move(out)};
  }
  return result;
}

FidelityPair fidelities_bilinear(const CovariantInstrument& inst) {
  const TradeoffMatrices m = build_matrices(inst.j);
  const Eigen::VectorXd& a = inst.xi.a;
  return {a.dot(m.K * a), a.cwiseProduct(a).dot(m.dG)};
}

namespace {

// b_n(u) for all n at one quadrature node, stacked as a vector over k = j+n.
Eigen::VectorXd orbit_weights(SpinJ j, const Eigen::VectorXd& binoms, double u) {
  const int d = j.dimension();
  Eigen::VectorXd b(d);
  for (int k = 0; k < d; ++k)
    b(k) = binoms(k) * ipow(1.0 - u, k) * ipow(u, j.two_j - k);
  return b;
}

Eigen::VectorXd binomial_row(SpinJ j) {
  Eigen::VectorXd binoms(j.dimension());
  for (int k = 0; k < j.dimension(); ++k) binoms(k) = binomial(j.two_j, k);
  return binoms;
}

}  // namespace

FidelityPair fidelities_quadrature(const CovariantInstrument& inst, int nodes) {
  if (nodes < 2 * inst.j.two_j + 2) {
    std::ostringstream msg;
    msg << "fidelities_quadrature: need at least " << 2 * inst.j.two_j + 2
        << " nodes for exactness, got " << nodes;
    throw std::domain_error(msg.str());
  }
  const GaussLegendreRule rule = gauss_legendre(nodes);
  const Eigen::VectorXd binoms = binomial_row(inst.j);
  const Eigen::VectorXd& a = inst.xi.a;
  const Eigen::VectorXd a2 = a.cwiseProduct(a);
  double f = 0.0, g = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double u = rule.nodes(k);
    const Eigen::VectorXd b = orbit_weights(inst.j, binoms, u);
    const double fa = a.dot(b);
    f += rule.weights(k) * fa * fa;
    g += rule.weights(k) * a2.dot(b) * ipow(u, inst.j.two_j);
  }
  return {f, g};
}

MonteCarloFidelities fidelities_monte_carlo(const CovariantInstrument& inst,
                                            long samples, RandomSource& rng) {
  if (samples < 100)
    throw std::domain_error("fidelities_monte_carlo: need at least 100 samples");
  const Eigen::VectorXd binoms = binomial_row(inst.j);
  const Eigen::VectorXd& a = inst.xi.a;
  const Eigen::VectorXd a2 = a.cwiseProduct(a);
  double mean_f = 0.0, m2_f = 0.0, mean_g = 0.0, m2_g = 0.0;
  for (long i = 0; i < samples; ++i) {
    const Direction dir = sample_direction(rng);
    const double u = std::cos(0.5 * dir.theta) * std::cos(0.5 * dir.theta);
    const Eigen::VectorXd b = orbit_weights(inst.j, binoms, u);
    const double fa = a.dot(b);
    const double f_term = fa * fa;
    const double g_term = a2.dot(b) * ipow(u, inst.j.two_j);
    // Welford running mean/variance
    const double df = f_term - mean_f;
    mean_f += df / (i + 1);
    m2_f += df * (f_term - mean_f);
    const double dg = g_term - mean_g;
    mean_g += dg / (i + 1);
    m2_g += dg * (g_term - mean_g);
  }
  MonteCarloFidelities out;
  out.F = mean_f;
  out.G = mean_g;
  out.stderr_F = std::sqrt(m2_f / (samples - 1) / samples);
  out.stderr_G = std::sqrt(m2_g / (samples - 1) / samples);
  return out;
}

double covariance_residual(const CovariantInstrument& inst, const GroupElement& g,
                           const GroupElement& h, const DensityMatrix& rho) {
  const Eigen::MatrixXcd ug = rotation_matrix(inst.j, g);
  const Eigen::MatrixXcd ah = kraus_at(inst, h);
  const Eigen::MatrixXcd conjugated = ug * rho.rho * ug.adjoint();
  const Eigen::MatrixXcd lhs = ug.adjoint() * (ah * conjugated * ah) * ug;
  const Eigen::MatrixXcd a_gh = kraus_at(inst, compose(g.inverse(), h));
  const Eigen::MatrixXcd rhs = a_gh * rho.rho * a_gh;
  return (lhs - rhs).norm();
}

}  // namespace spintradeoff
