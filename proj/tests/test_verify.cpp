#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "spintradeoff/instrument.hpp"
#include "spintradeoff/numerics.hpp"
#include "spintradeoff/tradeoff.hpp"
#include "spintradeoff/verify.hpp"

using namespace spintradeoff;

TEST_CASE("projector for two qubits is the triplet projector") {
  const Eigen::MatrixXd p = build_projector_2j(SpinJ(1));
  Eigen::MatrixXd expected(4, 4);
  expected << 1.0, 0.0, 0.0, 0.0,
              0.0, 0.5, 0.5, 0.0,
              0.0, 0.5, 0.5, 0.0,
              0.0, 0.0, 0.0, 1.0;
  CHECK((p - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("projector structure across spins") {
  RandomSource rng(21);
  for (int two_j : {1, 2, 3, 4, 6}) {
    const SpinJ j(two_j);
    const Eigen::MatrixXd p = build_projector_2j(j);
    const int d = j.dimension();
    CAPTURE(two_j);
    CHECK(std::abs(p.trace() - (2 * two_j + 1)) <= 1e-11);
    CHECK((p - p.transpose()).norm() <= 1e-13);
    CHECK((p * p - p).norm() <= 1e-10);

    const EigenDecomposition dec = jacobi_eigensolver(p);
    int rank = 0;
    for (int i = 0; i < d * d; ++i) {
      CHECK(dec.values(i) >= -1e-10);
      if (dec.values(i) > 0.5) ++rank;
    }
    CHECK(rank == 2 * two_j + 1);

    // the maximal multiplet is invariant under U (x) U
    const Eigen::MatrixXcd pc = p.cast<std::complex<double>>();
    for (int i = 0; i < 5; ++i) {
      const Eigen::MatrixXcd u = rotation_matrix(j, sample_group(rng));
      const Eigen::MatrixXcd uu = kron(u, u);
      CHECK((pc * uu - uu * pc).norm() <= 1e-10);
    }
  }
}

TEST_CASE("Choi operators restrict to the diagonal-subspace matrices") {
  for (int two_j : {1, 2, 3, 4, 6}) {
    const SpinJ j(two_j);
    const ChoiOperators ops = build_RF_RG(j);
    const TradeoffMatrices m = build_matrices(j);
    const int d = j.dimension();
    CAPTURE(two_j);

    CHECK(std::abs(ops.R_F.trace() - 1.0) <= 1e-12);

    double rf = 0.0, rg = 0.0;
    for (int n = 0; n < d; ++n)
      for (int mm = 0; mm < d; ++mm) {
        rf = std::max(rf, std::abs(ops.R_F(n * d + n, mm * d + mm) - m.K(n, mm)));
        const double expected = (n == mm) ? m.dG(n) : 0.0;
        rg = std::max(rg, std::abs(ops.R_G(n * d + n, mm * d + mm) - expected));
      }
    CHECK(rf <= 1e-12);
    CHECK(rg <= 1e-12);

    // both are positive semidefinite despite the partial transpose
    CHECK(jacobi_eigensolver(ops.R_F).values.minCoeff() >= -1e-10);
    CHECK(jacobi_eigensolver(ops.R_G).values.minCoeff() >= -1e-10);
    CHECK((ops.R_F - ops.R_F.transpose()).norm() <= 1e-13);
  }

  // j = 1/2: the estimation operator restriction is (1/3) diag(1, 1/2)
  const ChoiOperators half = build_RF_RG(SpinJ(1));
  CHECK(std::abs(half.R_G(0, 0) - 1.0 / 3.0) <= 1e-15);
  CHECK(std::abs(half.R_G(3, 3) - 1.0 / 6.0) <= 1e-15);
}

TEST_CASE("Monte Carlo estimate of the operation-fidelity operator") {
  const SpinJ j(1);
  RandomSource rng(22);
  const long samples = 20000;
  const Eigen::MatrixXcd mc = monte_carlo_RF(j, samples, rng);
  const ChoiOperators ops = build_RF_RG(j);

  CHECK((mc - mc.adjoint()).norm() <= 1e-12);
  CHECK(std::abs(mc.trace().real() - 1.0) <= 1e-12);  // each sample has unit trace
  CHECK((mc - ops.R_F.cast<std::complex<double>>()).cwiseAbs().maxCoeff() <=
        5.0 / std::sqrt(static_cast<double>(samples)));

  CHECK_THROWS_AS(monte_carlo_RF(j, 999, rng), std::domain_error);
}

TEST_CASE("Schur averages") {
  const SpinJ j(2);
  const int d = 3;
  RandomSource rng(23);
  const long samples = 20000;

  // X = I: zero variance, exact at every sample
  const Eigen::MatrixXcd avg_id =
      schur_average(j, Eigen::MatrixXcd::Identity(d, d), samples, rng);
  CHECK((avg_id - Eigen::MatrixXcd::Identity(d, d)).norm() <= 1e-12);

  // X = |-j><-j|: converges to I/(2j+1)
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
  x(0, 0) = 1.0;
  const Eigen::MatrixXcd avg = schur_average(j, x, samples, rng);
  CHECK((avg - Eigen::MatrixXcd::Identity(d, d) / d).cwiseAbs().maxCoeff() <=
        5.0 / std::sqrt(static_cast<double>(samples)));

  // traceless X: converges to zero
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(d, d);
  t(0, 0) = 1.0;
  t(2, 2) = -1.0;
  const Eigen::MatrixXcd avg_t = schur_average(j, t, samples, rng);
  CHECK(avg_t.cwiseAbs().maxCoeff() <= 5.0 / std::sqrt(static_cast<double>(samples)));

  CHECK_THROWS_AS(schur_average(j, x, 999, rng), std::domain_error);
  CHECK_THROWS_AS(schur_average(j, Eigen::MatrixXcd::Identity(2, 2), samples, rng),
                  std::domain_error);
}

TEST_CASE("full-space eigencheck validates the diagonal ansatz") {
  CHECK(full_space_eigencheck(SpinJ(1), 0.0).overlap >= 1.0 - 1e-9);
  const EigencheckResult mid = full_space_eigencheck(SpinJ(2), 0.5);
  CHECK(mid.overlap >= 1.0 - 1e-9);
  CHECK(mid.lambda_gap > 0.0);
  CHECK(full_space_eigencheck(SpinJ(4), 0.9).overlap >= 1.0 - 1e-9);

  CHECK_THROWS_AS(full_space_eigencheck(SpinJ(2), 1.0), std::domain_error);
  CHECK_THROWS_AS(full_space_eigencheck(SpinJ(7), 0.5), std::domain_error);
}

TEST_CASE("trace of xi equals the entangled-vector projection") {
  for (int two_j : {1, 2, 4}) {
    const SpinJ j(two_j);
    const int d = j.dimension();
    for (double p : {0.0, 0.3, 0.8, 1.0}) {
      const TradeoffPoint pt = tradeoff_point(j, p);
      // literal evaluation: |Phi> = sum_n |n,n>, R0 = |chi><chi|
      Eigen::VectorXd chi = Eigen::VectorXd::Zero(d * d);
      Eigen::VectorXd phi = Eigen::VectorXd::Zero(d * d);
      for (int n = 0; n < d; ++n) {
        chi(n * d + n) = pt.xi.a(n);
        phi(n * d + n) = 1.0;
      }
      const double projected = std::sqrt(std::pow(phi.dot(chi), 2));
      CHECK(std::abs(pt.trace_xi - projected) <= 1e-10);
    }
  }
}

TEST_CASE("verification suite passes and gates the full-space checks") {
  const VerificationReport small = run_suite(SpinJ(2), 5000, 42);
  CHECK(small.all_passed());
  bool any_skipped = false;
  for (const VerificationCheck& c : small.checks) any_skipped = any_skipped || c.skipped;
  CHECK_FALSE(any_skipped);

  const VerificationReport big = run_suite(SpinJ(14), 5000, 42);
  CHECK(big.all_passed());
  int skipped = 0;
  for (const VerificationCheck& c : big.checks) skipped += c.skipped ? 1 : 0;
  CHECK(skipped == 8);
}
