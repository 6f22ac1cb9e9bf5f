#pragma once

#include <utility>
#include <vector>

#include "dirac1d/core.hpp"
#include "dirac1d/transfer.hpp"

// Klein-zone normal modes of the step, their currents, the spontaneous
// pair-production current, and the closed-form emission-dynamics estimators
// for a wide supercritical well.

namespace dirac1d::vacuum {

/// One normal mode of the Klein step in the overlap window m < E < V-m.
/// Kind Left: wave sourced from the left with no reflected wave on that side;
/// kind Right: sourced from the right, mirrored structure. Energy-normalized
/// continuum convention.
struct KleinMode {
  enum class Kind { Left, Right };

  struct Wave {
    complex coefficient;     // all scalar prefactors folded in
    double momentum = 0.0;   // signed momentum of this component
    double local_d = 0.0;    // E - V on this side
  };

  Kind kind = Kind::Left;
  double E = 0.0;
  double V = 0.0;
  double m = 1.0;
  double kappa = 1.0;
  std::vector<Wave> left_waves;   // x < 0
  std::vector<Wave> right_waves;  // x > 0

  Spinor evaluate(double x) const;
};

/// Construct both Klein-zone modes at energy E; throws domain_error outside
/// the open window (m, V-m). Spinor continuity at x = 0 is checked at
/// construction.
std::pair<KleinMode, KleinMode> klein_modes(double E, double V, double m);

/// Charge current carried by a mode, with the charge of the species the mode
/// injects (electrons from the left, charge -1; positrons from the right,
/// charge +1). Independent of x; both kinds carry -(2 kappa/pi)/(kappa+1)^2,
/// which is -(1/2pi) T_S(E).
double mode_current(const KleinMode& mode, double x);

struct CurrentReport {
  double j_left = 0.0;    // integrated left-family charge current
  double j_right = 0.0;   // integrated right-family charge current (equal)
  double j_vacuum = 0.0;  // <0|j|0> = -(1/2pi) integral of T over the zone
  double e_min = 0.0;
  double e_max = 0.0;
  double quadrature_error = 0.0;
  bool subcritical = false;
};

/// Pair-production current of the Klein step of height V:
/// j = -(1/2 pi) int_m^{V-m} T_S(E) dE. The sqrt edge behaviour of the
/// integrand is removed with the substitution E = m cosh(theta) (mirrored at
/// the top edge via the T(E) = T(V-E) symmetry). Subcritical steps
/// (V <= 2m) return an explicit zero-current report.
CurrentReport pair_current(double V, double m, double rel_tol = 1e-9);

/// Same integral for a general step-like profile, with T(E) evaluated by the
/// transfer engine over the window (V_left + m, V_right - m).
CurrentReport pair_current(const transfer::PotentialProfile& profile,
                           double rel_tol = 1e-7);

struct EmissionEstimate {
  double excess = 0.0;           // Delta = V - 2m
  int q_supercritical = 0;
  double lifetime = 0.0;         // tau = 2 m a^2 / pi (slowest positron)
  double mean_momentum = 0.0;    // pbar = sqrt(m Delta / 2)
  double emission_time = 0.0;    // taubar = a sqrt(2m / Delta)
  std::vector<double> emitted_energies;  // |E_N|, N = 1..Q_S
  bool narrow_excess = true;     // Delta <= 0.2 m, the regime of validity
};

/// Closed-form estimates for the transient positron emission of a wide well
/// just past supercriticality. No wavepacket dynamics: scaling laws only.
EmissionEstimate emission_estimates(double V, double a, double m);

}  // namespace dirac1d::vacuum
