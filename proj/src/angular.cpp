#include "spintradeoff/angular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spintradeoff/numerics.hpp"

namespace spintradeoff {

namespace {

constexpr int kMaxFactorialArg = 10000;

const std::vector<double>& ln_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kMaxFactorialArg + 1);
    long double acc = 0.0L;
    t[0] = 0.0;
    for (int k = 1; k <= kMaxFactorialArg; ++k) {
      acc += std::log(static_cast<long double>(k));
      t[k] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

}  // namespace

SpinJ::SpinJ(int two_j_value) : two_j(two_j_value) {
  if (two_j < 0) throw std::domain_error("SpinJ: 2j must be nonnegative");
}

bool SpinJ::valid_two_m(int two_m) const {
  return std::abs(two_m) <= two_j && (two_m & 1) == (two_j & 1);
}

int SpinJ::index_of(int two_m) const {
  if (!valid_two_m(two_m)) throw std::domain_error("SpinJ: invalid magnetic index 2m");
  return (two_m + two_j) / 2;
}

double ln_factorial(int k) {
  if (k < 0 || k > kMaxFactorialArg)
    throw std::domain_error("ln_factorial: argument outside [0, 10000]");
  return ln_factorial_table()[k];
}

double binomial(int n, int k) {
  if (k < 0 || k > n) throw std::domain_error("binomial: need 0 <= k <= n");
  if (n <= 62) {
    // exact: every prefix of the product is itself a binomial coefficient
    unsigned __int128 r = 1;
    const int kk = std::min(k, n - k);
    for (int i = 1; i <= kk; ++i) r = r * static_cast<unsigned>(n - kk + i) / static_cast<unsigned>(i);
    return static_cast<double>(r);
  }
  return std::exp(ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k));
}

double cg_stretched(SpinJ j, int two_n, int two_m) {
  if (!j.valid_two_m(two_n) || !j.valid_two_m(two_m))
    throw std::domain_error("cg_stretched: invalid magnetic index");
  const int jn = (j.two_j + two_n) / 2;  // j + n
  const int jm = (j.two_j + two_m) / 2;  // j + m
  // c^2 = binom(2j, j+n) binom(2j, j+m) / binom(4j, 2j+n+m); the corners
  // come out exactly 1 and the expression is symmetric in (n, m) as written.
  // For very large spins the binomials would overflow, so fall back to the
  // factorial form in log space.
  if (j.two_j <= 150)
    return std::sqrt(binomial(j.two_j, jn) * binomial(j.two_j, jm) /
                     binomial(2 * j.two_j, jn + jm));
  const int jnn = j.two_j - jn, jmm = j.two_j - jm;
  const int tot_p = jn + jm;              // 2j + n + m
  const int tot_m = 2 * j.two_j - tot_p;  // 2j - n - m
  const double ln_c2 = 2.0 * ln_factorial(j.two_j) + ln_factorial(tot_p) +
                       ln_factorial(tot_m) - ln_factorial(2 * j.two_j) -
                       ln_factorial(jn) - ln_factorial(jnn) -
                       ln_factorial(jm) - ln_factorial(jmm);
  return std::exp(0.5 * ln_c2);
}

CGTable CGTable::build(SpinJ j) {
  const int d = j.dimension();
  CGTable table{j, Eigen::MatrixXd(d, d)};
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      const double v = cg_stretched(j, j.two_m_at(a), j.two_m_at(b));
      table.c(a, b) = v;
      table.c(b, a) = v;
    }
  }
  return table;
}

GroupElement GroupElement::from_axis_angle(double angle, double ax, double ay, double az) {
  const double n = std::sqrt(ax * ax + ay * ay + az * az);
  if (n < 1e-300) throw std::domain_error("GroupElement: zero rotation axis");
  const double s = std::sin(0.5 * angle) / n;
  return {std::cos(0.5 * angle), s * ax, s * ay, s * az};
}

double GroupElement::norm() const {
  return std::sqrt(w * w + x * x + y * y + z * z);
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  GroupElement r{
      a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
      a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
      a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
      a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
  };
  const double n = r.norm();
  if (n < 1e-300) throw std::domain_error("compose: degenerate quaternion product");
  r.w /= n;
  r.x /= n;
  r.y /= n;
  r.z /= n;
  return r;
}

EulerZYZ euler_zyz(const GroupElement& g) {
  const double p = std::sqrt(g.w * g.w + g.z * g.z);  // cos(beta/2)
  const double q = std::sqrt(g.x * g.x + g.y * g.y);  // sin(beta/2)
  EulerZYZ e{0.0, 2.0 * std::atan2(q, p), 0.0};
  if (q < 1e-300) {
    e.alpha = 2.0 * std::atan2(g.z, g.w);  // z-rotation only
  } else if (p < 1e-300) {
    e.alpha = 2.0 * std::atan2(-g.x, g.y);  // beta = pi
  } else {
    const double half_sum = std::atan2(g.z, g.w);   // (alpha+gamma)/2
    const double half_diff = std::atan2(-g.x, g.y); // (alpha-gamma)/2
    e.alpha = half_sum + half_diff;
    e.gamma = half_sum - half_diff;
  }
  return e;
}

Eigen::MatrixXd wigner_small_d(SpinJ j, double beta) {
  const int d = j.dimension();
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  Eigen::MatrixXd out(d, d);
  for (int r = 0; r < d; ++r) {      // row: m'
    const int jp_mp = r;             // j + m'
    const int jm_mp = j.two_j - r;   // j - m'
    for (int col = 0; col < d; ++col) {  // col: m
      const int jp_m = col;
      const int jm_m = j.two_j - col;
      const int t = r - col;  // m' - m
      const double ln_pref = 0.5 * (ln_factorial(jp_mp) + ln_factorial(jm_mp) +
                                    ln_factorial(jp_m) + ln_factorial(jm_m));
      long double acc = 0.0L;
      const int s_min = std::max(0, -t);
      const int s_max = std::min(jp_m, jm_mp);
      for (int k = s_min; k <= s_max; ++k) {
        const double ln_den = ln_factorial(jp_m - k) + ln_factorial(k) +
                              ln_factorial(t + k) + ln_factorial(jm_mp - k);
        double term = std::exp(ln_pref - ln_den) * ipow(c, j.two_j - t - 2 * k) *
                      ipow(s, t + 2 * k);
        if ((t + k) & 1) term = -term;
        acc += term;
      }
      out(r, col) = static_cast<double>(acc);
    }
  }
  return out;
}

Eigen::MatrixXcd rotation_matrix(SpinJ j, const GroupElement& g) {
  if (std::abs(g.norm() - 1.0) > 1e-12)
    throw std::domain_error("rotation_matrix: quaternion is not normalized");
  const EulerZYZ e = euler_zyz(g);
  const Eigen::MatrixXd small_d = wigner_small_d(j, e.beta);
  const int d = j.dimension();
  Eigen::MatrixXcd u(d, d);
  const std::complex<double> im(0.0, 1.0);
  for (int r = 0; r < d; ++r) {
    const double mp = 0.5 * j.two_m_at(r);
    for (int col = 0; col < d; ++col) {
      const double m = 0.5 * j.two_m_at(col);
      u(r, col) = std::exp(-im * (mp * e.alpha + m * e.gamma)) * small_d(r, col);
    }
  }
  return u;
}

}  // namespace spintradeoff
