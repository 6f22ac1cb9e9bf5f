#include "dirac1d/vacuum.hpp"

#include <cmath>
#include <functional>

#include "dirac1d/analytic.hpp"

namespace dirac1d::vacuum {

namespace {

const complex kI(0.0, 1.0);

/// Deterministic adaptive Simpson with a fixed subdivision tree.
struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

void simpson_step(const std::function<double(double)>& f, double a, double b,
                  double fa, double fm, double fb, double whole, double tol,
                  int depth, QuadResult& out) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    out.value += left + right + delta / 15.0;
    out.error += std::abs(delta) / 15.0;
    return;
  }
  simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, out);
  simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out);
}

QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, double abs_tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  QuadResult out;
  simpson_step(f, a, b, fa, fm, fb, whole, abs_tol, 40, out);
  return out;
}

struct StepKinematics {
  double k = 0.0;       // left momentum magnitude
  double p = 0.0;       // right momentum magnitude (|p|, branch is -|p|)
  double kappa = 1.0;
};

StepKinematics klein_kinematics(double E, double V, double m) {
  if (!(E > m) || !(E < V - m)) {
    throw domain_error("Klein modes need m < E < V - m");
  }
  StepKinematics out;
  out.k = std::sqrt(E * E - m * m);
  out.p = std::sqrt((V - E) * (V - E) - m * m);
  out.kappa = std::sqrt(analytic::kappa_squared(E, V, m));
  return out;
}

Spinor wave_spinor(const KleinMode::Wave& w, double m, double x) {
  const complex phase = std::exp(kI * w.momentum * x);
  return (w.coefficient * phase) *
         Spinor(kI, complex(w.momentum / (w.local_d + m), 0.0));
}

}  // namespace

Spinor KleinMode::evaluate(double x) const {
  Spinor acc;
  const auto& waves = (x < 0.0) ? left_waves : right_waves;
  for (const Wave& w : waves) acc = acc + wave_spinor(w, m, x);
  return acc;
}

std::pair<KleinMode, KleinMode> klein_modes(double E, double V, double m) {
  if (!(m > 0.0)) throw domain_error("mass must be positive");
  const StepKinematics kin = klein_kinematics(E, V, m);
  const double k = kin.k;
  const double p = kin.p;
  const double kap = kin.kappa;
  const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * M_PI);

  // Spinors in the (i, q/(D+m)) normalization with all scalar factors in
  // the coefficients. Left side: D = E; right side: D = E - V, right mover
  // at momentum -|p| (group-velocity branch).
  const double d_left = E;
  const double d_right = E - V;

  KleinMode left_mode;
  left_mode.kind = KleinMode::Kind::Left;
  left_mode.E = E;
  left_mode.V = V;
  left_mode.m = m;
  left_mode.kappa = kap;
  left_mode.left_waves = {
      {inv_sqrt2pi * (std::sqrt(2.0 * kap) / (kap + 1.0)) *
           std::sqrt((E + m) / k),
       k, d_left},
  };
  left_mode.right_waves = {
      {inv_sqrt2pi * ((kap - 1.0) / (kap + 1.0)) *
           std::sqrt((V - E - m) / (2.0 * p)),
       p, d_right},
      {inv_sqrt2pi * std::sqrt((V - E - m) / (2.0 * p)), -p, d_right},
  };

  KleinMode right_mode;
  right_mode.kind = KleinMode::Kind::Right;
  right_mode.E = E;
  right_mode.V = V;
  right_mode.m = m;
  right_mode.kappa = kap;
  right_mode.left_waves = {
      {inv_sqrt2pi * ((1.0 - kap) / (1.0 + kap)) *
           std::sqrt((E + m) / (2.0 * k)),
       k, d_left},
      {inv_sqrt2pi * std::sqrt((E + m) / (2.0 * k)), -k, d_left},
  };
  right_mode.right_waves = {
      {inv_sqrt2pi * (std::sqrt(2.0 * kap) / (kap + 1.0)) *
           std::sqrt((V - E - m) / p),
       p, d_right},
  };

  for (const KleinMode* mode : {&left_mode, &right_mode}) {
    const Spinor below = mode->evaluate(-1e-30);
    const Spinor above = mode->evaluate(0.0);
    const double mismatch = (below - above).norm();
    if (!(mismatch < 1e-10 * (below.norm() + above.norm()))) {
      throw numeric_error("Klein mode discontinuous at x = 0", mismatch);
    }
  }
  return {left_mode, right_mode};
}

double mode_current(const KleinMode& mode, double x) {
  const double species = (mode.kind == KleinMode::Kind::Left) ? -1.0 : 1.0;
  return species * current(mode.evaluate(x));
}

namespace {

CurrentReport subcritical_report(double e_min, double e_max) {
  CurrentReport out;
  out.subcritical = true;
  out.e_min = e_min;
  out.e_max = e_max;
  return out;
}

CurrentReport current_from_transmission(
    const std::function<double(double)>& transmission, double e_min,
    double e_max, double m_left, double m_right, double rel_tol,
    bool symmetric) {
  // Substitute E = e_min - m + m cosh(theta) at the bottom edge (and the
  // mirror at the top) so the sqrt(E - edge) vanishing of T has a smooth
  // integrand. For the symmetric step the two halves are equal.
  CurrentReport out;
  out.e_min = e_min;
  out.e_max = e_max;

  const double mid = 0.5 * (e_min + e_max);
  const double scale = 0.5 * (e_max - e_min);  // crude integrand scale
  const double abs_tol = rel_tol * std::max(1e-6, scale);

  const double base_lo = e_min - m_left;
  auto lower = [&](double th) {
    const double e = base_lo + m_left * std::cosh(th);
    if (e <= e_min || e >= e_max) return 0.0;
    return transmission(e) * m_left * std::sinh(th);
  };
  const double th_lo = std::acosh((mid - base_lo) / m_left);
  QuadResult q_lo = integrate(lower, 0.0, th_lo, abs_tol);

  QuadResult q_hi;
  if (symmetric) {
    q_hi = q_lo;
  } else {
    const double base_hi = e_max + m_right;
    auto upper = [&](double th) {
      const double e = base_hi - m_right * std::cosh(th);
      if (e <= e_min || e >= e_max) return 0.0;
      return transmission(e) * m_right * std::sinh(th);
    };
    const double th_hi = std::acosh((base_hi - mid) / m_right);
    q_hi = integrate(upper, 0.0, th_hi, abs_tol);
  }

  const double integral = q_lo.value + q_hi.value;
  out.j_vacuum = -integral / (2.0 * M_PI);
  out.quadrature_error = (q_lo.error + q_hi.error) / (2.0 * M_PI);
  out.j_left = out.j_vacuum;
  out.j_right = out.j_vacuum;
  return out;
}

}  // namespace

CurrentReport pair_current(double V, double m, double rel_tol) {
  if (!(m > 0.0)) throw domain_error("mass must be positive");
  if (!(V > 2.0 * m)) return subcritical_report(m, V - m);
  auto t_step = [V, m](double e) {
    return analytic::step_transmission_klein(e, V, m);
  };
  return current_from_transmission(t_step, m, V - m, m, m, rel_tol,
                                   /*symmetric=*/true);
}

CurrentReport pair_current(const transfer::PotentialProfile& profile,
                           double rel_tol) {
  const double m = profile.mass;
  const double e_min = profile.left_level + m;
  const double e_max = profile.right_level - m;
  if (!(e_max > e_min)) return subcritical_report(e_min, e_max);
  auto t_profile = [&profile](double e) {
    try {
      return transfer::scatter_numeric(profile, e).T;
    } catch (const threshold_error&) {
      // measure-zero node exactly on an interior threshold: nudge
      return transfer::scatter_numeric(profile, e * (1.0 + 1e-13) + 1e-13).T;
    }
  };
  return current_from_transmission(t_profile, e_min, e_max, m, m, rel_tol,
                                   /*symmetric=*/false);
}

EmissionEstimate emission_estimates(double V, double a, double m) {
  if (!(m > 0.0) || !(a > 0.0)) throw domain_error("need m > 0 and a > 0");
  if (!(V > 2.0 * m)) {
    throw domain_error("emission estimates need a supercritical well V > 2m");
  }
  EmissionEstimate out;
  out.excess = V - 2.0 * m;
  out.q_supercritical = static_cast<int>(
      std::floor((2.0 * a / M_PI) * std::sqrt(V * V - 2.0 * m * V)));
  out.lifetime = 2.0 * m * a * a / M_PI;
  out.mean_momentum = std::sqrt(m * out.excess / 2.0);
  out.emission_time = a * std::sqrt(2.0 * m / out.excess);
  out.narrow_excess = out.excess <= 0.2 * m;
  out.emitted_energies.reserve(static_cast<std::size_t>(out.q_supercritical));
  for (int n = 1; n <= out.q_supercritical; ++n) {
    const double pn = n * M_PI / (2.0 * a);
    out.emitted_energies.push_back(V - std::sqrt(pn * pn + m * m));
  }
  return out;
}

}  // namespace dirac1d::vacuum
