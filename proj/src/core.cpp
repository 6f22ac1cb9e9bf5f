#include "dirac1d/core.hpp"

#include <cmath>

namespace dirac1d {

namespace {

constexpr double kThresholdRelTol = 1e-12;

bool at_threshold(double eps, double m) {
  return std::abs(eps - m) <= kThresholdRelTol * (m + eps);
}

}  // namespace

double current(const Spinor& psi) {
  // -psi^dagger sigma_y psi = -2 Im(conj(upper) * lower)
  return -2.0 * std::imag(std::conj(psi.upper) * psi.lower);
}

MomentumBranch momentum_branch(double E, double V, double m) {
  if (!(m > 0.0)) throw domain_error("mass must be positive");
  const double d = E - V;
  const double eps = std::abs(d);
  if (at_threshold(eps, m)) {
    return {complex(0.0, 0.0), MomentumClass::EvanescentThreshold};
  }
  if (eps > m) {
    const double q = std::sqrt(eps * eps - m * m);
    if (d > 0.0) return {complex(q, 0.0), MomentumClass::ParticlePropagating};
    // Klein zone: v_g = q/(E - V) > 0 forces q < 0 for the right mover.
    return {complex(-q, 0.0), MomentumClass::HolePropagating};
  }
  return {complex(0.0, std::sqrt(m * m - eps * eps)), MomentumClass::Evanescent};
}

PlaneWaveMode plane_wave(double E, double V, double m, WaveDirection direction,
                         Normalization normalization, double box_half_length) {
  const MomentumBranch branch = momentum_branch(E, V, m);
  const double d = E - V;
  const double eps = std::abs(d);

  if (branch.cls == MomentumClass::EvanescentThreshold) {
    throw normalization_error(
        "plane_wave: |E - V| = m is a threshold mode (normalization factor "
        "divides by epsilon -+ m = 0)");
  }

  complex q = branch.q;
  if (direction == WaveDirection::LeftMoving) q = -q;
  // For evanescent modes momentum_branch returns +i*gamma, so RightMoving
  // decays to the right (e^{iqx} = e^{-gamma x}) and LeftMoving to the left.

  double factor = 1.0;
  if (branch.cls != MomentumClass::Evanescent) {
    const double sign = (d > 0.0) ? -1.0 : 1.0;  // N+ : eps - m, N- : eps + m
    const double denom = 2.0 * eps * (eps + sign * m);
    const double front = (normalization == Normalization::Energy)
                             ? 2.0 * M_PI
                             : 2.0 * box_half_length;
    factor = 1.0 / (std::sqrt(front) * std::sqrt(denom));
  }

  PlaneWaveMode mode;
  mode.energy = E;
  mode.local_potential = V;
  mode.mass = m;
  mode.momentum = q;
  mode.direction = direction;
  mode.normalization = normalization;
  mode.epsilon = eps;
  mode.amplitude = complex(factor, 0.0) *
                   Spinor(complex(0.0, 1.0) * q, complex(d - m, 0.0));
  return mode;
}

double dirac_residual(const PlaneWaveMode& mode, double x) {
  const complex i(0.0, 1.0);
  const complex q = mode.momentum;
  const double d = mode.energy - mode.local_potential;
  const double m = mode.mass;
  const Spinor psi = mode.evaluate(x);
  // sigma_x (iq) psi swaps components; sigma_z flips the lower sign.
  const complex r_up = i * q * psi.lower - d * psi.upper + m * psi.upper;
  const complex r_lo = i * q * psi.upper + d * psi.lower + m * psi.lower;
  return Spinor(r_up, r_lo).norm();
}

}  // namespace dirac1d
