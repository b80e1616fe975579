#include "spintradeoff/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "spintradeoff/errors.hpp"
#include "spintradeoff/numerics.hpp"

namespace spintradeoff {

namespace {

constexpr double kResidualTol = 1e-13;
constexpr int kMaxPowerIterations = 10000;
constexpr double kNegativeClamp = -1e-13;
constexpr int kMaxBisectionIterations = 200;

// Flip to the nonnegative Perron representative and clamp rounding noise.
void enforce_nonnegative(Eigen::VectorXd& v) {
  int imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) < 0.0) {
      if (v(i) < kNegativeClamp) {
        std::ostringstream msg;
        msg << "principal_eigenvector: eigenvector component " << i << " is "
            << v(i) << ", below the clamp threshold " << kNegativeClamp;
        throw numeric_error(msg.str());
      }
      v(i) = 0.0;
    }
  }
  v.normalize();
}

}  // namespace

double g_min(SpinJ j) { return 1.0 / (j.two_j + 1); }
double g_max(SpinJ j) { return static_cast<double>(j.two_j + 1) / (2 * j.two_j + 1); }
double f_min(SpinJ j) { return g_max(j); }

TradeoffMatrices build_matrices(SpinJ j) {
  const int d = j.dimension();
  const double norm = 1.0 / (2 * j.two_j + 1);  // 1/(4j+1)
  const CGTable table = CGTable::build(j);
  TradeoffMatrices m{j, Eigen::MatrixXd(d, d), Eigen::VectorXd(d)};
  m.K = table.c.cwiseProduct(table.c) * norm;
  for (int n = 0; n < d; ++n) m.dG(n) = table.c(n, 0) * table.c(n, 0) * norm;
  return m;
}

PrincipalEigen principal_eigenvector(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0 || m.cols() != n)
    throw std::domain_error("principal_eigenvector: matrix must be square and nonempty");
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::domain_error("principal_eigenvector: matrix must be symmetric");
  if (m.minCoeff() < 0.0)
    throw std::domain_error("principal_eigenvector: matrix must be entrywise nonnegative");

  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  double lambda = 0.0;
  for (int it = 0; it <= kMaxPowerIterations; ++it) {
    const Eigen::VectorXd mv = m * v;
    lambda = v.dot(mv);
    if ((mv - lambda * v).norm() <= kResidualTol * std::max(scale, 1.0)) {
      enforce_nonnegative(v);
      return {lambda, v};
    }
    const double nn = mv.norm();
    if (nn < 1e-300) throw numeric_error("principal_eigenvector: iterate vanished");
    v = mv / nn;
  }

  // Stalled gap: certify through the dense solve instead.
  const EigenDecomposition dec = jacobi_eigensolver(m);
  lambda = dec.values(0);
  v = dec.vectors.col(0);
  const double residual = (m * v - lambda * v).norm();
  if (residual > 1e-10 * std::max(scale, 1.0)) {
    std::ostringstream msg;
    msg << "principal_eigenvector: Jacobi fallback residual " << residual
        << " after " << kMaxPowerIterations << " power iterations";
    throw numeric_error(msg.str());
  }
  enforce_nonnegative(v);
  return {lambda, v};
}

void XiDiagonal::validate(double tol) const {
  if (a.size() != j.dimension())
    throw std::domain_error("XiDiagonal: coefficient count does not match dimension");
  if (a.minCoeff() < 0.0)
    throw std::domain_error("XiDiagonal: coefficients must be nonnegative");
  const double target = j.two_j + 1;
  if (std::abs(a.squaredNorm() - target) > tol)
    throw std::domain_error("XiDiagonal: sum of squares must equal 2j+1");
}

namespace {

TradeoffPoint finish_point(SpinJ j, double p, const TradeoffMatrices& m,
                           Eigen::VectorXd a, double lambda) {
  TradeoffPoint pt;
  pt.p = p;
  pt.lambda_max = lambda;
  double G = a.cwiseProduct(a).dot(m.dG);
  double F = a.dot(m.K * a);
  // The eigenproblem keeps G and F inside their closed ranges up to rounding;
  // anything materially outside means the solve went wrong.
  const double slack = 1e-10;
  const double glo = g_min(j), ghi = g_max(j), flo = f_min(j);
  if (G < glo - slack || G > ghi + slack || F < flo - slack || F > 1.0 + slack) {
    std::ostringstream msg;
    msg << "tradeoff_point: fidelities out of range: G=" << G << " F=" << F
        << " at p=" << p;
    throw numeric_error(msg.str());
  }
  G = std::clamp(G, glo, ghi);
  F = std::clamp(F, flo, 1.0);
  pt.G = G;
  pt.F = F;
  std::tie(pt.I, pt.D) = normalize(j, G, F);
  pt.trace_xi = a.sum();
  pt.xi = XiDiagonal{j, std::move(a)};
  return pt;
}

}  // namespace

TradeoffPoint tradeoff_point(SpinJ j, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("tradeoff_point: p must lie in [0, 1]");
  const TradeoffMatrices m = build_matrices(j);
  const int d = j.dimension();

  if (p == 1.0) {
    // Pure estimation limit: the matrix is diagonal with its top entry at
    // n = -j, so the eigenproblem is solved by inspection.
    Eigen::VectorXd a = Eigen::VectorXd::Zero(d);
    a(0) = std::sqrt(static_cast<double>(d));
    return finish_point(j, p, m, std::move(a), m.dG(0));
  }

  Eigen::MatrixXd mp = (1.0 - p) * m.K;
  mp.diagonal() += p * m.dG;
  PrincipalEigen eig = principal_eigenvector(mp);
  Eigen::VectorXd a = std::sqrt(static_cast<double>(d)) * eig.vector;
  return finish_point(j, p, m, std::move(a), eig.lambda);
}

SweepResult sweep_curve(SpinJ j, const std::vector<double>& grid) {
  if (grid.empty()) throw std::domain_error("sweep_curve: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
      throw std::domain_error("sweep_curve: grid values must lie in [0, 1]");
    if (i > 0 && grid[i] < grid[i - 1])
      throw std::domain_error("sweep_curve: grid must be ascending");
  }

  SweepResult result;
  result.points.reserve(grid.size());
  for (double p : grid) result.points.push_back(tradeoff_point(j, p));

  const double slack = 1e-10;
  for (std::size_t i = 1; i < result.points.size(); ++i) {
    const TradeoffPoint& prev = result.points[i - 1];
    const TradeoffPoint& cur = result.points[i];
    if (cur.G < prev.G - slack) {
      std::ostringstream msg;
      msg << "G not nondecreasing between p=" << prev.p << " and p=" << cur.p
          << " (" << prev.G << " -> " << cur.G << ")";
      result.warnings.push_back(msg.str());
    }
    if (cur.F > prev.F + slack) {
      std::ostringstream msg;
      msg << "F not nonincreasing between p=" << prev.p << " and p=" << cur.p
          << " (" << prev.F << " -> " << cur.F << ")";
      result.warnings.push_back(msg.str());
    }
  }
  return result;
}

TradeoffPoint solve_for_G(SpinJ j, double g_target, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("solve_for_G: tol must be positive");
  const double glo = g_min(j), ghi = g_max(j);
  if (!(g_target >= glo && g_target <= ghi))
    throw std::domain_error("solve_for_G: G target outside [1/(2j+1), (2j+1)/(4j+1)]");

  TradeoffPoint lo_pt = tradeoff_point(j, 0.0);
  if (std::abs(lo_pt.G - g_target) <= tol) return lo_pt;
  TradeoffPoint hi_pt = tradeoff_point(j, 1.0);
  if (std::abs(hi_pt.G - g_target) <= tol) return hi_pt;

  double lo = 0.0, hi = 1.0;
  double g_lo = lo_pt.G, g_hi = hi_pt.G;
  for (int it = 0; it < kMaxBisectionIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    TradeoffPoint pt = tradeoff_point(j, mid);
    if (pt.G < g_lo - 1e-12 || pt.G > g_hi + 1e-12) {
      std::ostringstream msg;
      msg << "solve_for_G: G(p) non-monotone in bracket [" << lo << ", " << hi
          << "]: G(" << mid << ")=" << pt.G << " outside [" << g_lo << ", "
          << g_hi << "]";
      throw numeric_error(msg.str());
    }
    if (std::abs(pt.G - g_target) <= tol) return pt;
    if (pt.G < g_target) {
      lo = mid;
      g_lo = pt.G;
    } else {
      hi = mid;
      g_hi = pt.G;
    }
  }
  std::ostringstream msg;
  msg << "solve_for_G: no convergence to |G - " << g_target << "| <= " << tol
      << " after " << kMaxBisectionIterations << " bisections; bracket ["
      << g_lo << ", " << g_hi << "]";
  throw numeric_error(msg.str());
}

std::pair<double, double> normalize(SpinJ j, double G, double F) {
  const double clamp_tol = 1e-14;
  double I = (G - g_min(j)) / (g_max(j) - g_min(j));
  double D = (1.0 - F) / (1.0 - f_min(j));
  for (double* v : {&I, &D}) {
    if (*v < 0.0) {
      if (*v < -clamp_tol) throw std::domain_error("normalize: fidelity out of range");
      *v = 0.0;
    } else if (*v > 1.0) {
      if (*v > 1.0 + clamp_tol) throw std::domain_error("normalize: fidelity out of range");
      *v = 1.0;
    }
  }
  return {I, D};
}

double ho_tradeoff(double I) {
  if (!(I >= 0.0 && I <= 1.0))
    throw std::domain_error("ho_tradeoff: I must lie in [0, 1]");
  return 1.0 - std::sqrt(2.0 * (1.0 - I) / (2.0 - I));
}

}  // namespace spintradeoff
