#pragma once

#include <Eigen/Dense>
#include <complex>

namespace spintradeoff {

// Spin magnitude stored as the integer 2j, so half-integer spins never touch
// floating point index arithmetic. Dimension of the spin space is 2j+1.
struct SpinJ {
  int two_j = 0;

  SpinJ() = default;
  explicit SpinJ(int two_j_value);  // throws std::domain_error if negative

  int dimension() const { return two_j + 1; }
  double j() const { return 0.5 * two_j; }

  // Magnetic indices are passed around as 2m. Valid values run from -2j to
  // +2j in steps of two; internally they map to k = j+m in {0, ..., 2j}.
  bool valid_two_m(int two_m) const;
  int index_of(int two_m) const;  // throws std::domain_error on invalid 2m
  int two_m_at(int index) const { return 2 * index - two_j; }
};

// ln(k!) for k in [0, 10000]; table-backed, accurate to ~1e-15 relative.
double ln_factorial(int k);

// Binomial coefficient as a double; exact integer arithmetic for n <= 62,
// log-space beyond.
double binomial(int n, int k);

// Stretched Clebsch-Gordan coefficient <j,n; j,m | 2j, n+m> for coupling two
// spin-j systems into the maximal multiplet. Strictly positive, symmetric in
// (n, m), and equal to 1 at n = m = -j. Evaluated in log space.
double cg_stretched(SpinJ j, int two_n, int two_m);

// Full (2j+1)x(2j+1) table of stretched coefficients, indexed by k = j+m.
struct CGTable {
  SpinJ j;
  Eigen::MatrixXd c;

  static CGTable build(SpinJ j);
};

// SU(2) element as a unit quaternion. The spin-j matrix is produced on
// demand by rotation_matrix(). For half-integer j the representation is
// projective: q and -q map to matrices differing by an overall sign.
struct GroupElement {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  static GroupElement identity() { return {1.0, 0.0, 0.0, 0.0}; }
  // Rotation by `angle` about the (not necessarily normalized) axis.
  static GroupElement from_axis_angle(double angle, double ax, double ay, double az);

  GroupElement inverse() const { return {w, -x, -y, -z}; }
  double norm() const;
};

// Hamilton product, renormalized. rotation_matrix(j, compose(a, b)) equals
// rotation_matrix(j, a) * rotation_matrix(j, b) up to the projective sign
// (always + for integer j).
GroupElement compose(const GroupElement& a, const GroupElement& b);

struct EulerZYZ {
  double alpha, beta, gamma;
};

// ZYZ Euler angles of g, with U_g = exp(-i alpha Jz) exp(-i beta Jy)
// exp(-i gamma Jz) and beta in [0, pi].
EulerZYZ euler_zyz(const GroupElement& g);

// Wigner small-d matrix d^j(beta) = exp(-i beta Jy) in the Jz eigenbasis,
// rows and columns ordered m = -j ... +j. Real orthogonal; d(0) = I.
Eigen::MatrixXd wigner_small_d(SpinJ j, double beta);

// Spin-j rotation matrix U_g in the Jz eigenbasis ordered m = -j ... +j.
// Throws std::domain_error if g is not normalized to 1e-12.
//
// Normative convention: for the element carrying |-j> onto the coherent
// state (theta, phi), column m' = -j holds the amplitudes
//   binom(2j, j+m)^{1/2} (-sin(theta/2))^{j+m} (cos(theta/2))^{j-m} e^{-i(j+m)phi}.
Eigen::MatrixXcd rotation_matrix(SpinJ j, const GroupElement& g);

}  // namespace spintradeoff
