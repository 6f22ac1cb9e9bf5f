#pragma once

#include <complex>

#include "dirac1d/errors.hpp"

// Kinematics and plane-wave solutions of the 1D Dirac equation
//
//   (sigma_x d/dx - (E - V) sigma_z + m) psi = 0
//
// in the two-component representation gamma_0 = sigma_z, gamma_1 = i sigma_x.
// Natural units hbar = c = 1; the fermion mass m sets every scale.
//
// A plane wave psi = (i q, (E-V) - m)^T e^{i q x} solves the equation whenever
// the dispersion relation (E - V)^2 = q^2 + m^2 holds. In the Klein zone
// (E - V < -m) the physically right-moving wave carries *negative* spatial
// momentum so that the group velocity v_g = q/(E - V) stays positive; this
// branch rule is encoded once here and consumed by every scattering routine.

namespace dirac1d {

using complex = std::complex<double>;

/// Global model parameters. Everything is expressed in units of the mass.
struct ModelParams {
  double m = 1.0;

  explicit ModelParams(double mass = 1.0) : m(mass) {
    if (!(m > 0.0)) throw domain_error("mass must be positive");
  }
};

/// Two-component wavefunction value.
struct Spinor {
  complex upper{0.0, 0.0};
  complex lower{0.0, 0.0};

  Spinor() = default;
  Spinor(complex up, complex lo) : upper(up), lower(lo) {}

  friend Spinor operator+(const Spinor& a, const Spinor& b) {
    return {a.upper + b.upper, a.lower + b.lower};
  }
  friend Spinor operator-(const Spinor& a, const Spinor& b) {
    return {a.upper - b.upper, a.lower - b.lower};
  }
  friend Spinor operator*(complex c, const Spinor& s) {
    return {c * s.upper, c * s.lower};
  }

  double norm() const {
    return std::sqrt(std::norm(upper) + std::norm(lower));
  }
};

/// Conserved current j = -psi^dagger sigma_y psi of a spinor value.
/// Positive means flow in the +x direction.
double current(const Spinor& psi);

enum class MomentumClass {
  ParticlePropagating,   // E - V > m
  HolePropagating,       // E - V < -m (Klein zone relative to this region)
  Evanescent,            // |E - V| < m, q on the positive imaginary axis
  EvanescentThreshold,   // |E - V| = m exactly: q = 0
};

struct MomentumBranch {
  complex q;            // right-moving branch (signed for propagating modes)
  MomentumClass cls;
};

/// Momentum of the right-moving (group-velocity) branch at energy E in a
/// region of constant potential V. Hole modes return negative real q;
/// evanescent modes return q = i*gamma with gamma > 0. The threshold
/// |E - V| = m is reported explicitly, never as a silent signed zero.
MomentumBranch momentum_branch(double E, double V, double m);

enum class WaveDirection { RightMoving, LeftMoving };

enum class Normalization {
  Box,     // periodic box of length 2L: 1/(sqrt(2L) sqrt(2 eps (eps -+ m)))
  Energy,  // continuum: 1/(sqrt(2 pi) sqrt(2 eps (eps -+ m)))
};

/// A single plane-wave solution in a region of constant potential.
struct PlaneWaveMode {
  double energy = 0.0;
  double local_potential = 0.0;
  double mass = 1.0;
  complex momentum{0.0, 0.0};  // signed (or imaginary) momentum of this wave
  WaveDirection direction = WaveDirection::RightMoving;
  Normalization normalization = Normalization::Energy;
  double epsilon = 0.0;        // |E - V|
  Spinor amplitude;            // normalization already applied

  Spinor evaluate(double x) const {
    return std::exp(complex(0.0, 1.0) * momentum * x) * amplitude;
  }
};

/// Build a normalized plane wave. Propagating modes carry the particle or
/// hole normalization factor; evanescent modes are produced unnormalized
/// (factor 1), with `direction` selecting the rightward- or leftward-decaying
/// exponential. Threshold energies raise normalization_error.
PlaneWaveMode plane_wave(double E, double V, double m, WaveDirection direction,
                         Normalization normalization,
                         double box_half_length = 1.0);

/// Norm of (sigma_x d/dx - (E - V) sigma_z + m) psi for the mode's analytic
/// x-dependence, evaluated at x. Exact solutions return values at roundoff
/// level (<= 1e-12 for normalized modes).
double dirac_residual(const PlaneWaveMode& mode, double x);

}  // namespace dirac1d
