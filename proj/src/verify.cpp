#include "spintradeoff/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spintradeoff/instrument.hpp"
#include "spintradeoff/numerics.hpp"
#include "spintradeoff/tradeoff.hpp"

namespace spintradeoff {

namespace {

constexpr int kMaxFullSpaceTwoJ = 6;

}  // namespace

Eigen::MatrixXd build_projector_2j(SpinJ j) {
  const int d = j.dimension();
  const CGTable table = CGTable::build(j);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d * d, d * d);
  // |2j, M> = sum_n c_{n, M-n} |n>|M-n>, M = -2j ... 2j
  for (int two_M = -2 * j.two_j; two_M <= 2 * j.two_j; two_M += 2) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d * d);
    for (int ka = 0; ka < d; ++ka) {
      const int two_n = j.two_m_at(ka);
      const int two_m = two_M - two_n;
      if (!j.valid_two_m(two_m)) continue;
      const int kb = j.index_of(two_m);
      v(ka * d + kb) = table.c(ka, kb);
    }
    p.noalias() += v * v.transpose();
  }
  return p;
}

ChoiOperators build_RF_RG(SpinJ j) {
  const int d = j.dimension();
  const double norm = 1.0 / (2 * j.two_j + 1);
  ChoiOperators ops{j, Eigen::MatrixXd(d * d, d * d),
                    Eigen::MatrixXd::Zero(d * d, d * d), build_projector_2j(j)};
  // partial transpose on the second factor
  for (int i1 = 0; i1 < d; ++i1)
    for (int i2 = 0; i2 < d; ++i2)
      for (int k1 = 0; k1 < d; ++k1)
        for (int k2 = 0; k2 < d; ++k2)
          ops.R_F(i1 * d + i2, k1 * d + k2) =
              norm * ops.P_2j(i1 * d + k2, k1 * d + i2);
  // R_G = I (x) S with S_{ab} = <-j, a| P |-j, b>; S is diag(c_{-j,a}^2)
  for (int i1 = 0; i1 < d; ++i1)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        ops.R_G(i1 * d + a, i1 * d + b) = norm * ops.P_2j(a, b);
  return ops;
}

Eigen::MatrixXcd monte_carlo_RF(SpinJ j, long samples, RandomSource& rng) {
  if (samples < 1000) throw std::domain_error("monte_carlo_RF: need samples >= 1000");
  const int d = j.dimension();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (long i = 0; i < samples; ++i) {
    const Eigen::MatrixXcd u = rotation_matrix(j, sample_group(rng));
    const Eigen::VectorXcd psi = u.col(0);  // U |-j>
    const Eigen::VectorXcd w = kron(psi, psi.conjugate().eval());
    acc.noalias() += w * w.adjoint();
  }
  acc /= static_cast<double>(samples);
  // each sample is Hermitian; keep the estimate exactly so
  return 0.5 * (acc + acc.adjoint().eval());
}

Eigen::MatrixXcd schur_average(SpinJ j, const Eigen::MatrixXcd& x, long samples,
                               RandomSource& rng) {
  if (samples < 1000) throw std::domain_error("schur_average: need samples >= 1000");
  if (x.rows() != j.dimension() || x.cols() != j.dimension())
    throw std::domain_error("schur_average: operator dimension mismatch");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(j.dimension(), j.dimension());
  for (long i = 0; i < samples; ++i) {
    const Eigen::MatrixXcd u = rotation_matrix(j, sample_group(rng));
    acc.noalias() += u * x * u.adjoint();
  }
  return acc / static_cast<double>(samples);
}

EigencheckResult full_space_eigencheck(SpinJ j, double p) {
  if (j.two_j > kMaxFullSpaceTwoJ)
    throw std::domain_error("full_space_eigencheck: restricted to 2j <= 6");
  if (!(p >= 0.0 && p < 1.0))
    throw std::domain_error("full_space_eigencheck: p must lie in [0, 1)");
  const ChoiOperators ops = build_RF_RG(j);
  const Eigen::MatrixXd c = p * ops.R_G + (1.0 - p) * ops.R_F;
  const EigenDecomposition dec = jacobi_eigensolver(c);

  const TradeoffPoint pt = tradeoff_point(j, p);
  const int d = j.dimension();
  Eigen::VectorXd ansatz = Eigen::VectorXd::Zero(d * d);
  for (int n = 0; n < d; ++n) ansatz(n * d + n) = pt.xi.a(n);
  ansatz.normalize();

  const double overlap = std::pow(dec.vectors.col(0).dot(ansatz), 2);
  return {overlap, dec.values(0) - dec.values(1)};
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerificationCheck& c) { return c.skipped || c.passed; });
}

namespace {

void add_check(VerificationReport& report, const std::string& name, double residual,
               double threshold) {
  report.checks.push_back({name, false, residual <= threshold, residual, threshold});
}

void add_skipped(VerificationReport& report, const std::string& name) {
  report.checks.push_back({name, true, false, 0.0, 0.0});
}

XiDiagonal random_xi(SpinJ j, RandomSource& rng) {
  Eigen::VectorXd a(j.dimension());
  for (int i = 0; i < j.dimension(); ++i) a(i) = rng.uniform01();
  a *= std::sqrt(j.dimension() / a.squaredNorm());
  return {j, a};
}

DensityMatrix random_density(SpinJ j, RandomSource& rng) {
  const int d = j.dimension();
  Eigen::MatrixXcd b(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) b(r, c) = std::complex<double>(rng.normal(), rng.normal());
  Eigen::MatrixXcd rho = b * b.adjoint();
  rho /= rho.trace().real();
  return {j, rho};
}

}  // namespace

VerificationReport run_suite(SpinJ j, long samples, std::uint64_t seed) {
  VerificationReport report{j, {}};
  const RandomSource base(seed);
  const int d = j.dimension();
  const CGTable table = CGTable::build(j);

  {  // CG table structure
    double sym = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) sym = std::max(sym, std::abs(table.c(a, b) - table.c(b, a)));
    add_check(report, "cg_symmetry", sym, 1e-14);

    double colnorm = 0.0;
    for (int two_M = -2 * j.two_j; two_M <= 2 * j.two_j; two_M += 2) {
      double sum = 0.0;
      for (int ka = 0; ka < d; ++ka) {
        const int two_m = two_M - j.two_m_at(ka);
        if (j.valid_two_m(two_m)) {
          const double c = table.c(ka, j.index_of(two_m));
          sum += c * c;
        }
      }
      colnorm = std::max(colnorm, std::abs(sum - 1.0));
    }
    add_check(report, "cg_column_normalization", colnorm, 1e-12);
  }

  {  // rotation matrices: unitarity and the group homomorphism
    RandomSource rng = base.derive(1);
    double unit = 0.0, homo = 0.0;
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
    for (int i = 0; i < 20; ++i) {
      const GroupElement g1 = sample_group(rng), g2 = sample_group(rng);
      const Eigen::MatrixXcd u1 = rotation_matrix(j, g1);
      const Eigen::MatrixXcd u2 = rotation_matrix(j, g2);
      unit = std::max(unit, (u1 * u1.adjoint() - eye).norm());
      const Eigen::MatrixXcd u12 = rotation_matrix(j, compose(g1, g2));
      const Eigen::MatrixXcd prod = u1 * u2;
      // projective representation: for half-integer j the product may come
      // back with the opposite sign
      homo = std::max(homo, std::min((u12 - prod).norm(), (u12 + prod).norm()));
    }
    add_check(report, "rotation_unitarity", unit, 1e-10);
    add_check(report, "rotation_homomorphism", homo, 1e-10);
  }

  {  // coherent amplitudes against the rotation-matrix column at m' = -j
    double mismatch = 0.0;
    for (int it = 0; it < 9; ++it) {
      const Direction dir = make_direction(M_PI * (it % 3 + 0.5) / 3.5,
                                           2.0 * M_PI * (it / 3 + 0.3) / 3.4);
      const Eigen::MatrixXcd u = rotation_matrix(j, group_element(dir));
      for (int k = 0; k < d; ++k)
        mismatch = std::max(mismatch,
                            std::abs(u(k, 0) - amplitude(j, dir, j.two_m_at(k))));
    }
    add_check(report, "coherent_column_match", mismatch, 1e-12);
  }

  {  // Schur average of the lowest-weight projector
    RandomSource rng = base.derive(2);
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
    x(0, 0) = 1.0;
    const Eigen::MatrixXcd avg = schur_average(j, x, samples, rng);
    const Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(d, d) / d;
    add_check(report, "schur_average", (avg - expected).cwiseAbs().maxCoeff(),
              5.0 / std::sqrt(static_cast<double>(samples)));
  }

  {  // fidelity route agreement on random instruments
    RandomSource rng = base.derive(3);
    double det = 0.0, sigmas = 0.0;
    for (int i = 0; i < 5; ++i) {
      const CovariantInstrument inst(j, random_xi(j, rng));
      const FidelityPair bil = fidelities_bilinear(inst);
      const FidelityPair quad = fidelities_quadrature(inst, 2 * j.two_j + 2);
      det = std::max({det, std::abs(bil.F - quad.F), std::abs(bil.G - quad.G)});
      const MonteCarloFidelities mc = fidelities_monte_carlo(inst, samples, rng);
      sigmas = std::max(sigmas, std::abs(mc.F - bil.F) / std::max(mc.stderr_F, 1e-300));
      sigmas = std::max(sigmas, std::abs(mc.G - bil.G) / std::max(mc.stderr_G, 1e-300));
    }
    add_check(report, "fidelity_bilinear_vs_quadrature", det, 1e-9);
    add_check(report, "fidelity_monte_carlo_sigma", sigmas, 4.0);
  }

  {  // covariance of the instrument family
    RandomSource rng = base.derive(4);
    double res = 0.0;
    const CovariantInstrument inst(j, tradeoff_point(j, 0.5).xi);
    for (int i = 0; i < 50; ++i) {
      const GroupElement g = sample_group(rng), h = sample_group(rng);
      res = std::max(res, covariance_residual(inst, g, h, random_density(j, rng)));
    }
    add_check(report, "covariance_residual", res, 1e-10);
  }

  {  // trace of xi along a sweep: bounds and the entangled-vector identity
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    const SweepResult sweep = sweep_curve(j, grid);
    double bound = 0.0, identity = 0.0;
    const double lo = std::sqrt(static_cast<double>(d)), hi = d;
    for (const TradeoffPoint& pt : sweep.points) {
      bound = std::max({bound, lo - pt.trace_xi, pt.trace_xi - hi});
      // <Phi|R0|Phi> = (sum_n a_n)^2 for R0 = |chi><chi|, chi = sum a_n |n,n>
      const double phi_r0_phi = std::pow(pt.xi.a.sum(), 2);
      identity = std::max(identity, std::abs(pt.trace_xi - std::sqrt(phi_r0_phi)));
    }
    add_check(report, "trace_xi_bounds", bound, 1e-9);
    add_check(report, "trace_xi_entangled_projection", identity, 1e-10);
  }

  if (j.two_j <= kMaxFullSpaceTwoJ) {
    const ChoiOperators ops = build_RF_RG(j);
    add_check(report, "projector_idempotent", (ops.P_2j * ops.P_2j - ops.P_2j).norm(), 1e-10);
    add_check(report, "projector_trace",
              std::abs(ops.P_2j.trace() - (2 * j.two_j + 1)), 1e-10);
    {
      const EigenDecomposition dec = jacobi_eigensolver(ops.P_2j);
      const int rank =
          static_cast<int>((dec.values.array() > 0.5).count());
      add_check(report, "projector_rank", std::abs(rank - (2 * j.two_j + 1)), 0.5);
    }
    {
      RandomSource rng = base.derive(5);
      double res = 0.0;
      const Eigen::MatrixXcd p = ops.P_2j.cast<std::complex<double>>();
      for (int i = 0; i < 10; ++i) {
        const Eigen::MatrixXcd u = rotation_matrix(j, sample_group(rng));
        const Eigen::MatrixXcd uu = kron(u, u);
        res = std::max(res, (p * uu - uu * p).norm());
      }
      add_check(report, "projector_invariance", res, 1e-10);
    }
    {
      const TradeoffMatrices m = build_matrices(j);
      double rf = 0.0, rg = 0.0;
      for (int n = 0; n < d; ++n)
        for (int mm = 0; mm < d; ++mm) {
          rf = std::max(rf, std::abs(ops.R_F(n * d + n, mm * d + mm) - m.K(n, mm)));
          const double expected = (n == mm) ? m.dG(n) : 0.0;
          rg = std::max(rg, std::abs(ops.R_G(n * d + n, mm * d + mm) - expected));
        }
      add_check(report, "rf_restriction", rf, 1e-12);
      add_check(report, "rg_restriction", rg, 1e-12);
    }
    {
      RandomSource rng = base.derive(6);
      const Eigen::MatrixXcd mc = monte_carlo_RF(j, samples, rng);
      add_check(report, "monte_carlo_rf",
                (mc - ops.R_F.cast<std::complex<double>>()).cwiseAbs().maxCoeff(),
                5.0 / std::sqrt(static_cast<double>(samples)));
    }
    {
      double worst = 0.0;
      for (int i = 0; i <= 9; ++i)
        worst = std::max(worst, 1.0 - full_space_eigencheck(j, i / 10.0).overlap);
      add_check(report, "ansatz_overlap", worst, 1e-9);
    }
  } else {
    for (const char* name :
         {"projector_idempotent", "projector_trace", "projector_rank",
          "projector_invariance", "rf_restriction", "rg_restriction",
          "monte_carlo_rf", "ansatz_overlap"})
      add_skipped(report, name);
  }

  return report;
}

}  // namespace spintradeoff
