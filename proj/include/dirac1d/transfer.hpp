#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dirac1d/core.hpp"

// Numerical scattering off arbitrary piecewise-constant potential profiles.
// Acts as the brute-force oracle for every closed-form result and as the
// stand-in for smooth profiles (linear ramps become staircases).

namespace dirac1d::transfer {

struct Segment {
  double x_begin = 0.0;
  double x_end = 0.0;
  double potential = 0.0;
};

/// Piecewise-constant potential: left_level for x below the first segment,
/// right_level above the last. With no segments the single interface sits
/// at x = 0.
struct PotentialProfile {
  double left_level = 0.0;
  double right_level = 0.0;
  double mass = 1.0;
  std::vector<Segment> segments;  // contiguous, strictly increasing

  double interface_begin() const {
    return segments.empty() ? 0.0 : segments.front().x_begin;
  }
  double interface_end() const {
    return segments.empty() ? 0.0 : segments.back().x_end;
  }
};

/// Validate, sort, and assemble a profile. Overlaps, gaps, and reversed
/// segments raise validation_error carrying the offending segment index.
PotentialProfile build_profile(double left_level, double right_level,
                               std::vector<Segment> segments,
                               double mass = 1.0);

/// n equal-width segments sampling the linear ramp V0 -> V1 at midpoints;
/// the total potential drop is preserved exactly.
std::vector<Segment> staircase(double x0, double x1, double V0, double V1,
                               int n);

struct TransferResult {
  double E = 0.0;
  double R = 0.0;
  double T = 0.0;
  double kappa = 0.0;      // asymptotic kinematic factor (0 if not defined)
  complex B{0.0, 0.0};     // reflected amplitude (left region, left mover)
  complex F{0.0, 0.0};     // transmitted amplitude (right region, right mover)
  bool resonance = false;
  double matrix_cond = 1.0;
  int n_segments = 0;
};

/// Scatter a unit-amplitude wave incident from the left (incidence defined by
/// group velocity, so Klein-zone channels use the negative-momentum branch).
/// R and T are ratios of the conserved current, not amplitude magnitudes.
/// Interior evanescent stretches are handled with per-segment scaling; the
/// conditioning of the cascade is reported and cond > 1e12 raises
/// numeric_error.
TransferResult scatter_numeric(const PotentialProfile& profile, double E);

enum class SweepStatus { Ok, SkippedThreshold, NoIncidentChannel, Failed };

struct SweepPoint {
  double E = 0.0;
  SweepStatus status = SweepStatus::Ok;
  std::optional<TransferResult> result;
  std::string note;
};

/// Deterministic ascending-E evaluation over an inclusive uniform grid.
/// Points at any region threshold |E - V| = m are skipped and reported;
/// a failed point never aborts the sweep.
std::vector<SweepPoint> transmission_sweep(const PotentialProfile& profile,
                                           double e_min, double e_max,
                                           int n_points);

/// Mirror image x -> -x of a profile (swaps the roles of the two sides).
PotentialProfile reversed(const PotentialProfile& profile);

}  // namespace dirac1d::transfer
