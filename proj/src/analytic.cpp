#include "dirac1d/analytic.hpp"

#include <cmath>

#include "dirac1d/mat2.hpp"

namespace dirac1d::analytic {

namespace {

constexpr double kResonancePhaseTol = 1e-9;

void require_incident_electron(double E, double m) {
  if (!(m > 0.0)) throw domain_error("mass must be positive");
  if (!(E > m)) {
    throw no_channel_error(
        "no incident electron channel: requires E > m on the incident side");
  }
}

void require_off_threshold(double E, double V, double m) {
  const MomentumBranch b = momentum_branch(E, V, m);
  if (b.cls == MomentumClass::EvanescentThreshold) {
    throw threshold_error("threshold energy: |E - V| = m");
  }
}

/// Interface + propagation cascade for the two faces of a square barrier,
/// scaled so wide opaque barriers cannot overflow. Returns the scaled
/// cascade K~ together with log of the factor pulled out.
struct ScaledCascade {
  Mat2 K;
  double log_scale = 0.0;
};

ScaledCascade barrier_cascade(double E, double V, double a, double m) {
  const complex i(0.0, 1.0);
  const double k = std::sqrt(E * E - m * m);
  const complex q = momentum_branch(E, V, m).q;
  const double d_in = E - V;

  const Mat2 u_out{i * k, -i * k, complex(E - m), complex(E - m)};
  const Mat2 u_in{i * q, -i * q, complex(d_in - m), complex(d_in - m)};

  ScaledCascade out;
  complex e_plus = std::exp(i * q * (2.0 * a));    // tiny when evanescent
  complex e_minus = std::exp(-i * q * (2.0 * a));  // huge when evanescent
  if (q.imag() > 0.0) {
    const double s = 2.0 * q.imag() * a;
    out.log_scale = s;
    e_plus = complex(std::exp(-2.0 * s), 0.0);
    e_minus = complex(1.0, 0.0);
  }
  const Mat2 phase{e_plus, 0.0, 0.0, e_minus};
  out.K = u_out.inverse() * (u_in * (phase * (u_in.inverse() * u_out)));
  return out;
}

}  // namespace

double kappa_squared(double E, double V, double m) {
  const double d = E - V;
  return (E + m) * (d - m) / ((E - m) * (d + m));
}

double step_transmission_klein(double E, double V, double m) {
  if (!(E > m) || !(E < V - m)) return 0.0;
  const double kappa = std::sqrt(kappa_squared(E, V, m));
  return 4.0 * kappa / ((1.0 + kappa) * (1.0 + kappa));
}

ScatteringResult step_scatter(double E, double V, double m) {
  require_incident_electron(E, m);
  require_off_threshold(E, V, m);

  ScatteringResult res;
  res.E = E;

  const double k = std::sqrt(E * E - m * m);
  const MomentumBranch t = momentum_branch(E, V, m);
  const double d = E - V;

  // Complex kinematic factor of the matching conditions; real and positive
  // whenever the transmitted channel propagates.
  const complex kappa_c = k * (d - m) / (t.q * (E - m));
  res.B = (kappa_c - 1.0) / (kappa_c + 1.0);
  res.F = 2.0 * k / (t.q * (kappa_c + 1.0));

  if (t.cls == MomentumClass::Evanescent) {
    // Semi-infinite evanescent region transmits nothing.
    res.kappa = 0.0;
    res.R = 1.0;
    res.T = 0.0;
    return res;
  }

  const double kappa = kappa_c.real();
  res.kappa = kappa;
  res.R = ((1.0 - kappa) / (1.0 + kappa)) * ((1.0 - kappa) / (1.0 + kappa));
  res.T = 4.0 * kappa / ((1.0 + kappa) * (1.0 + kappa));
  res.resonance = std::abs(res.T - 1.0) <= kResonancePhaseTol;
  return res;
}

ScatteringResult barrier_scatter(double E, double V, double a, double m) {
  require_incident_electron(E, m);
  if (!(a > 0.0)) throw domain_error("barrier half-width must be positive");
  require_off_threshold(E, V, m);

  ScatteringResult res;
  res.E = E;

  const double d = E - V;
  const double k2 = kappa_squared(E, V, m);

  if (std::abs(d) > m) {
    const double p = std::sqrt(d * d - m * m);
    const double phase = 2.0 * p * a;
    const double s2 = std::sin(phase) * std::sin(phase);
    const double den = 4.0 * k2 + (1.0 - k2) * (1.0 - k2) * s2;
    res.kappa = std::sqrt(k2);
    res.R = (1.0 - k2) * (1.0 - k2) * s2 / den;
    res.T = 4.0 * k2 / den;
    const double n_res = std::round(phase / M_PI);
    res.resonance =
        n_res >= 1.0 && std::abs(phase - n_res * M_PI) <= kResonancePhaseTol;
  } else {
    // Evanescent window: sin(2pa) -> i sinh(2|p|a) and kappa^2 = -mu^2 < 0.
    // The combined expressions stay real; use the asymptotic form once
    // sinh would overflow.
    const double gamma = std::sqrt(m * m - d * d);
    const double mu2 = -k2;
    const double x = 2.0 * gamma * a;
    res.kappa = 0.0;
    if (x <= 30.0) {
      const double sh2 = std::sinh(x) * std::sinh(x);
      const double den = 4.0 * mu2 + (1.0 + mu2) * (1.0 + mu2) * sh2;
      res.T = 4.0 * mu2 / den;
      res.R = (1.0 + mu2) * (1.0 + mu2) * sh2 / den;
    } else {
      res.T = 16.0 * mu2 * std::exp(-2.0 * x) / ((1.0 + mu2) * (1.0 + mu2));
      res.R = 1.0 - res.T;
    }
  }

  // Reflected/transmitted amplitudes from the two-face cascade.
  const ScaledCascade cas = barrier_cascade(E, V, a, m);
  const double k = std::sqrt(E * E - m * m);
  const complex e2ika = std::exp(complex(0.0, -2.0 * k * a));
  res.B = -(cas.K.c / cas.K.d) * e2ika;
  res.F = (cas.log_scale < 700.0)
              ? e2ika / (cas.K.d * std::exp(cas.log_scale))
              : complex(0.0, 0.0);
  return res;
}

BarrierLimit wide_barrier_limit(double E, double V, double m) {
  require_incident_electron(E, m);
  if (!(E < V - m)) {
    throw domain_error("wide-barrier limit requires the Klein zone m < E < V-m");
  }
  const double k2 = kappa_squared(E, V, m);
  const double den = 8.0 * k2 + (1.0 - k2) * (1.0 - k2);
  return {(1.0 - k2) * (1.0 - k2) / den, 8.0 * k2 / den};
}

std::vector<double> resonance_energies(double V, double a, double m) {
  if (!(m > 0.0)) throw domain_error("mass must be positive");
  if (!(a > 0.0)) throw domain_error("half-width must be positive");
  std::vector<double> out;
  for (int n = 1;; ++n) {
    const double pn = n * M_PI / (2.0 * a);
    const double en = V - std::sqrt(m * m + pn * pn);
    if (!(en > m)) break;
    out.push_back(en);
  }
  return out;
}

SauterTransmission sauter_transmission(double v, double m) {
  if (!(m > 0.0)) throw domain_error("mass must be positive");
  if (!(v > 0.0)) throw domain_error("field strength v must be positive");
  SauterTransmission out;
  out.T = std::exp(-M_PI * m * m / v);
  out.weak_field_valid = v < M_PI * m * m;
  return out;
}

CoulombRatio coulomb_penetration(double Z, CoulombRegime regime, double E,
                                 double p, double f, double alpha) {
  if (Z < 0.0) throw domain_error("nuclear charge Z must be nonnegative");
  if (!(alpha > 0.0)) throw domain_error("alpha must be positive");
  CoulombRatio out;
  out.Z = Z;
  out.alpha = alpha;
  out.regime = regime;
  out.f = f;
  if (regime == CoulombRegime::NonRelativistic) {
    if (p == 0.0) {
      throw input_error(
          "divergent exponent: nonrelativistic ratio needs momentum p > 0");
    }
    if (!(p > 0.0) || !(E > 0.0)) {
      throw domain_error("nonrelativistic regime requires E > 0 and p > 0");
    }
    out.f = 1.0;
    out.rho = std::exp(-2.0 * M_PI * Z * alpha * E / p);
  } else {
    if (!(f > 0.0)) throw domain_error("prefactor f must be positive");
    out.rho = f * std::exp(-2.0 * M_PI * Z * alpha);
  }
  return out;
}

double effective_potential(double V, double E, double m) {
  if (!(m > 0.0)) throw domain_error("mass must be positive");
  return (2.0 * E * V - V * V) / (2.0 * m);
}

}  // namespace dirac1d::analytic
