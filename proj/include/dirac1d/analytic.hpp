#pragma once

#include <complex>
#include <vector>

#include "dirac1d/core.hpp"

// Closed-form scattering and penetration formulas: the Klein step, the square
// barrier with its transmission resonances and wide-barrier limit, the Sauter
// weak-field asymptotic, and Coulomb penetration ratios. These serve both as
// the fast user-facing path and as ground truth for the transfer engine.

namespace dirac1d::analytic {

struct ScatteringResult {
  double E = 0.0;
  double R = 0.0;
  double T = 0.0;
  /// Kinematic factor, positive branch. In regimes where the transmitted
  /// channel is evanescent kappa is not a real number; 0 is stored.
  double kappa = 0.0;
  complex B{0.0, 0.0};  // reflected amplitude
  complex F{0.0, 0.0};  // transmitted amplitude
  bool resonance = false;
};

/// kappa^2 = (E+m)((E-V)-m) / ((E-m)((E-V)+m)).
/// Positive with kappa >= 1 in the Klein zone m < E < V-m, positive with
/// kappa <= 1 for E > V+m, negative for |E-V| < m.
double kappa_squared(double E, double V, double m);

/// Transmission through the Klein step for m < E < V-m, zero outside the
/// open Klein zone. Never throws; used as the pair-production integrand.
double step_transmission_klein(double E, double V, double m);

/// Scattering off the semi-infinite step V(x>0) = V for an electron incident
/// from the left. For V-m < E < V+m the transmitted region is evanescent and
/// the step reflects totally (R = 1, T = 0).
ScatteringResult step_scatter(double E, double V, double m);

/// Scattering off the square barrier V(x) = V for |x| < a. Uses the real
/// hyperbolic form in the evanescent window |E-V| < m (no complex kappa
/// intermediates) with an overflow-safe branch for wide opaque barriers.
/// The resonance flag is set when 2 p a = N pi within 1e-9.
ScatteringResult barrier_scatter(double E, double V, double a, double m);

struct BarrierLimit {
  double R_inf = 0.0;
  double T_inf = 0.0;
};

/// Phase-averaged wide-barrier coefficients in the Klein zone:
/// R_inf = (1-k^2)^2 / (8k^2 + (1-k^2)^2), T_inf = 8k^2 / (8k^2 + (1-k^2)^2).
/// This is the average of the denominator phase (equivalently the harmonic
/// mean of T over one oscillation period).
BarrierLimit wide_barrier_limit(double E, double V, double m);

/// Transmission-resonance energies E_N = V - sqrt(m^2 + N^2 pi^2 / 4a^2)
/// inside the Klein zone (m, V-m), ascending N.
std::vector<double> resonance_energies(double V, double a, double m);

struct SauterTransmission {
  double T = 0.0;
  /// False when the field strength reaches the critical scale ~pi m^2 where
  /// the weak-field asymptotic stops being a controlled approximation.
  bool weak_field_valid = true;
};

/// Weak-field transmission through the linear ramp V(x) = v x:
/// T = exp(-pi m^2 / v).
SauterTransmission sauter_transmission(double v, double m);

enum class CoulombRegime { NonRelativistic, Relativistic };

struct CoulombRatio {
  double Z = 0.0;
  double alpha = 0.0;
  CoulombRegime regime = CoulombRegime::Relativistic;
  double rho = 0.0;
  double f = 1.0;
};

inline constexpr double kFineStructureAlpha = 1.0 / 137.036;

/// Ratio of positron to electron probability at the origin of a Coulomb
/// field: exp(-2 pi Z alpha E / p) nonrelativistically, f exp(-2 pi Z alpha)
/// relativistically. The gamma-function prefactor f is caller-supplied
/// (approximately unity for large Z).
CoulombRatio coulomb_penetration(double Z, CoulombRegime regime, double E = 0.0,
                                 double p = 0.0, double f = 1.0,
                                 double alpha = kFineStructureAlpha);

/// Schroedinger-equivalent potential V_eff = (2 E V - V^2) / (2m). Changes
/// sign with the energy: a barrier for electrons is a well for holes.
double effective_potential(double V, double E, double m);

}  // namespace dirac1d::analytic
