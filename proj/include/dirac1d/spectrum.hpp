#pragma once

#include <vector>

#include "dirac1d/core.hpp"

// Bound states of the delta well and the square well, supercritical
// thresholds, and the vacuum-charge ledger. Sign convention: V > 0 is the
// well depth for electrons (V(x) = -V inside); the barrier case follows by
// charge conjugation.

namespace dirac1d::spectrum {

enum class Parity { Even, Odd };

struct BoundState {
  Parity parity = Parity::Even;
  int index = 0;             // 1-based rank, decreasing energy at fixed V
  double energy = 0.0;       // in (-m, m)
  double well_momentum = 0.0;  // p with p^2 = (E+V)^2 - m^2
};

/// Integer charge bookkeeping (electron charge is -1).
struct ChargeLedger {
  int q_particle = 0;       // positrons produced: +1 per E = 0 crossing
  int q_vacuum = 0;         // vacuum charge, -q_particle after adiabatic turn-on
  int q_supercritical = 0;  // states that crossed E = -m
  int total() const { return q_particle + q_vacuum; }
};

struct DeltaWellState {
  Parity parity = Parity::Even;
  double energy = 0.0;
};

/// The single bound state of V(x) = -lambda delta(x): E = m cos(lambda) on
/// even branches, -m cos(lambda) on odd ones, parity alternating at each
/// multiple of pi (the even state leaves at supercriticality and the first
/// odd state appears).
DeltaWellState delta_well_energy(double lambda, double m = 1.0);

/// Q_p = floor(lambda/pi + 1/2), Q_S = floor(lambda/pi), Q_0 = -Q_p.
ChargeLedger delta_ledger(double lambda);

/// All bound states of the square well of depth V and half-width a, found by
/// bracketing the even/odd transcendental equations per tangent branch in
/// p*a and refining to machine precision. Ordered by decreasing energy.
std::vector<BoundState> well_bound_states(double V, double a, double m);

/// V_N^c = m + sqrt(m^2 + N^2 pi^2 / 4 a^2): depth at which the Nth level
/// reaches E = -m.
double supercritical_threshold(int N, double a, double m);

/// Q_S from the closed form, Q_p by explicit root counting (negative-energy
/// states plus those already supercritical), Q_0 = -Q_p.
ChargeLedger well_ledger(double V, double a, double m);

enum class SweepEventKind { StateAppears, CrossesZero, GoesSupercritical };

struct SweepEvent {
  double strength = 0.0;  // V (square well) or lambda (delta well)
  SweepEventKind kind = SweepEventKind::StateAppears;
  Parity parity = Parity::Even;
  int index = 0;
  double energy = 0.0;
  ChargeLedger ledger;    // state of the ledger after the event
};

/// Adiabatic turn-on of the square well from 0 to v_max: ordered event log of
/// level appearances (E = m), zero crossings (Q_p += 1, Q_0 -= 1), and
/// supercritical escapes (E = -m, Q_S += 1). Steps too coarse to separate
/// events are refined automatically down to dv/1024, then raise
/// numeric_error.
std::vector<SweepEvent> adiabatic_sweep(double a, double m, double v_max,
                                        double dv);

/// Same event log for the delta well, from the closed-form spectrum. Events
/// fire on strict crossings, so an endpoint sitting exactly on a multiple of
/// pi/2 is not yet counted.
std::vector<SweepEvent> delta_adiabatic_sweep(double lambda_max,
                                              double m = 1.0);

}  // namespace dirac1d::spectrum
