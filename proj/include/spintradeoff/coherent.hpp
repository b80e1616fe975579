#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

#include "spintradeoff/angular.hpp"

namespace spintradeoff {

// Point on the sphere of coherent-state directions. theta in [0, pi],
// phi in [0, 2pi). At theta = 0 every phi labels the same state; the
// canonical representative phi = 0 is used there.
struct Direction {
  double theta = 0.0;
  double phi = 0.0;
};

// Validates ranges and canonicalizes the theta = 0 degeneracy.
Direction make_direction(double theta, double phi);

// SU(2) element carrying |-j> onto |theta, phi>: rotation by theta about the
// axis (-sin phi, cos phi, 0), i.e. U = exp(-i theta n.J).
GroupElement group_element(const Direction& dir);

// Amplitude <m|theta,phi> of the spin-j coherent state:
//   binom(2j, j+m)^{1/2} (-sin(theta/2))^{j+m} (cos(theta/2))^{j-m} e^{-i(j+m)phi}
std::complex<double> amplitude(SpinJ j, const Direction& dir, int two_m);

// |<m|theta,phi>|^2; independent of phi. Sums to 1 over m for any theta.
double overlap_weight(SpinJ j, double theta, int two_m);

struct CoherentState {
  SpinJ j;
  Direction dir;
  Eigen::VectorXcd amplitudes;  // indexed k = j+m, m ascending from -j

  static CoherentState at(SpinJ j, const Direction& dir);
};

// Deterministic random source: a 64-bit-seeded mt19937_64 with doubles built
// from raw engine output, so a fixed seed reproduces the exact same stream.
// Normals come from Box-Muller. Single consumer; for parallel Monte Carlo
// create independent children with derive().
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  double uniform01();                     // [0, 1), 53-bit resolution
  double uniform(double a, double b);
  double normal();                        // standard normal

  // Independent child stream (SplitMix64 of seed and stream id).
  RandomSource derive(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

// Direction with cos(theta) uniform on [-1, 1] and phi uniform on [0, 2pi):
// the rotation-invariant measure on the coherent-state orbit.
Direction sample_direction(RandomSource& rng);

// Haar-uniform SU(2) element: four standard normals, normalized.
GroupElement sample_group(RandomSource& rng);

}  // namespace spintradeoff
