#include "spintradeoff/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spintradeoff/numerics.hpp"

namespace spintradeoff {

Direction make_direction(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= M_PI))
    throw std::domain_error("make_direction: theta outside [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * M_PI))
    throw std::domain_error("make_direction: phi outside [0, 2pi)");
  if (theta == 0.0) phi = 0.0;
  return {theta, phi};
}

GroupElement group_element(const Direction& dir) {
  const double h = 0.5 * dir.theta;
  return {std::cos(h), -std::sin(h) * std::sin(dir.phi),
          std::sin(h) * std::cos(dir.phi), 0.0};
}

std::complex<double> amplitude(SpinJ j, const Direction& dir, int two_m) {
  const int jpm = j.index_of(two_m);  // j + m; validates two_m
  const int jmm = j.two_j - jpm;      // j - m
  const double mag = std::sqrt(binomial(j.two_j, jpm)) *
                     ipow(-std::sin(0.5 * dir.theta), jpm) *
                     ipow(std::cos(0.5 * dir.theta), jmm);
  const double phase = -static_cast<double>(jpm) * dir.phi;
  return mag * std::complex<double>(std::cos(phase), std::sin(phase));
}

double overlap_weight(SpinJ j, double theta, int two_m) {
  const int jpm = j.index_of(two_m);
  const int jmm = j.two_j - jpm;
  const double s2 = std::sin(0.5 * theta) * std::sin(0.5 * theta);
  const double c2 = std::cos(0.5 * theta) * std::cos(0.5 * theta);
  return binomial(j.two_j, jpm) * ipow(s2, jpm) * ipow(c2, jmm);
}

CoherentState CoherentState::at(SpinJ j, const Direction& dir) {
  CoherentState state{j, dir, Eigen::VectorXcd(j.dimension())};
  for (int k = 0; k < j.dimension(); ++k)
    state.amplitudes(k) = amplitude(j, dir, j.two_m_at(k));
  return state;
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RandomSource::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform(double a, double b) {
  return a + (b - a) * uniform01();
}

double RandomSource::normal() {
  if (have_cached_normal_) {
    have_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phase = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(phase);
  have_cached_normal_ = true;
  return r * std::cos(phase);
}

RandomSource RandomSource::derive(std::uint64_t stream) const {
  std::uint64_t state = seed_ ^ (0xa5a5a5a5a5a5a5a5ULL + stream);
  splitmix64(state);
  return RandomSource(splitmix64(state));
}

Direction sample_direction(RandomSource& rng) {
  double ct = rng.uniform(-1.0, 1.0);
  ct = std::clamp(ct, -1.0, 1.0);
  const double theta = std::acos(ct);
  const double phi = rng.uniform(0.0, 2.0 * M_PI);
  return {theta, theta == 0.0 ? 0.0 : phi};
}

GroupElement sample_group(RandomSource& rng) {
  for (;;) {
    GroupElement g{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    const double n = g.norm();
    if (n > 1e-12) {
      g.w /= n;
      g.x /= n;
      g.y /= n;
      g.z /= n;
      return g;
    }
  }
}

}  // namespace spintradeoff
