#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace spintradeoff {

// x^n for integer n >= 0, with 0^0 = 1.
double ipow(double x, int n);

// SplitMix64 step. Used to derive independent RNG streams from a base seed.
std::uint64_t splitmix64(std::uint64_t& state);

struct GaussLegendreRule {
  Eigen::VectorXd nodes;    // on [0, 1]
  Eigen::VectorXd weights;  // sum to 1
};

// Gauss-Legendre rule with n >= 1 nodes mapped to [0, 1]; exact for
// polynomials of degree <= 2n-1.
GaussLegendreRule gauss_legendre(int n);

struct EigenDecomposition {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // columns match values, orthonormal
};

// Cyclic Jacobi eigensolver for real symmetric matrices. Self-contained on
// purpose; sized for the small dense problems in this library (n <= ~50).
EigenDecomposition jacobi_eigensolver(const Eigen::MatrixXd& m);

// Kronecker product in first-factor-major index convention:
// (a kron b)(i1*rb + i2, k1*cb + k2) = a(i1,k1) * b(i2,k2).
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

}  // namespace spintradeoff
