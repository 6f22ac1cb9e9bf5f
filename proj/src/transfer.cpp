#include "dirac1d/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "dirac1d/mat2.hpp"

namespace dirac1d::transfer {

namespace {

constexpr double kCondLimit = 1e12;
constexpr double kRescaleTrigger = 1e100;

/// Exact solution operator exp(w A) of psi' = A psi across one constant
/// segment, with A = [[0, -(D+m)], [D-m, 0]] and A^2 = -q^2 I. Regular at
/// q -> 0 (sinc form), so interior thresholds need no special casing. For
/// evanescent segments the e^{gamma w} growth is pulled out into log_scale.
struct ScaledPropagator {
  Mat2 P;
  double log_scale = 0.0;
};

ScaledPropagator segment_propagator(double E, double V, double m, double w) {
  const double d = E - V;
  const double q2 = d * d - m * m;
  double c;       // cos(q w), possibly rescaled
  double s_over;  // sin(q w)/q, same scaling
  double log_scale = 0.0;
  if (q2 >= 0.0) {
    const double q = std::sqrt(q2);
    c = std::cos(q * w);
    s_over = (q * w < 1e-8) ? w : std::sin(q * w) / q;
  } else {
    const double g = std::sqrt(-q2);
    const double x = g * w;
    if (x <= 30.0) {
      c = std::cosh(x);
      s_over = (x < 1e-8) ? w : std::sinh(x) / g;
    } else {
      // cosh, sinh ~ e^x / 2: factor the growth out.
      log_scale = x;
      const double em = std::exp(-2.0 * x);
      c = 0.5 * (1.0 + em);
      s_over = 0.5 * (1.0 - em) / g;
    }
  }
  Mat2 P{complex(c), complex(-s_over * (d + m)), complex(s_over * (d - m)),
         complex(c)};
  return {P, log_scale};
}

Mat2 channel_basis(complex q, double d, double m) {
  const complex i(0.0, 1.0);
  return {i * q, -i * q, complex(d - m), complex(d - m)};
}

}  // namespace

PotentialProfile build_profile(double left_level, double right_level,
                               std::vector<Segment> segments, double mass) {
  if (!(mass > 0.0)) throw domain_error("mass must be positive");
  std::stable_sort(segments.begin(), segments.end(),
                   [](const Segment& a, const Segment& b) {
                     return a.x_begin < b.x_begin;
                   });
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!(segments[i].x_begin < segments[i].x_end)) {
      throw validation_error(
          "segment " + std::to_string(i) + " is reversed or empty", i);
    }
    if (i > 0) {
      if (segments[i].x_begin < segments[i - 1].x_end) {
        throw validation_error(
            "segment " + std::to_string(i) + " overlaps previous segment", i);
      }
      if (segments[i].x_begin > segments[i - 1].x_end) {
        throw validation_error(
            "segment " + std::to_string(i) + " leaves a gap after previous",
            i);
      }
    }
  }
  PotentialProfile profile;
  profile.left_level = left_level;
  profile.right_level = right_level;
  profile.mass = mass;
  profile.segments = std::move(segments);
  return profile;
}

std::vector<Segment> staircase(double x0, double x1, double V0, double V1,
                               int n) {
  if (n < 1) throw domain_error("staircase needs at least one step");
  if (!(x1 > x0)) throw domain_error("staircase needs x1 > x0");
  std::vector<Segment> out;
  out.reserve(static_cast<std::size_t>(n));
  auto edge = [&](int i) { return x0 + (x1 - x0) * (double(i) / n); };
  for (int i = 0; i < n; ++i) {
    out.push_back({edge(i), edge(i + 1), V0 + (V1 - V0) * ((i + 0.5) / n)});
  }
  return out;
}

TransferResult scatter_numeric(const PotentialProfile& profile, double E) {
  const double m = profile.mass;
  const MomentumBranch left = momentum_branch(E, profile.left_level, m);
  const MomentumBranch right = momentum_branch(E, profile.right_level, m);

  if (left.cls == MomentumClass::EvanescentThreshold ||
      right.cls == MomentumClass::EvanescentThreshold) {
    throw threshold_error("threshold energy in an asymptotic region");
  }
  if (left.cls == MomentumClass::Evanescent) {
    throw no_channel_error("incident side is evanescent: no incoming channel");
  }

  const double d_left = E - profile.left_level;
  const double d_right = E - profile.right_level;

  // Spinor solution operator across all segments, growth factored out.
  Mat2 W = Mat2::identity();
  double log_scale = 0.0;
  for (const Segment& seg : profile.segments) {
    const ScaledPropagator p =
        segment_propagator(E, seg.potential, m, seg.x_end - seg.x_begin);
    W = p.P * W;
    log_scale += p.log_scale;
    const double f = W.max_abs();
    if (f > kRescaleTrigger) {
      W.scale(1.0 / f);
      log_scale += std::log(f);
    }
  }

  // Channel decomposition: psi(b0) = U_L (1, B)^T, psi(bn) = U_R (F, 0)^T.
  const Mat2 u_left = channel_basis(left.q, d_left, m);
  const Mat2 u_right = channel_basis(right.q, d_right, m);
  const Mat2 M = u_right.inverse() * (W * u_left);

  TransferResult res;
  res.E = E;
  res.n_segments = static_cast<int>(profile.segments.size());
  res.matrix_cond = M.cond();
  if (!(res.matrix_cond <= kCondLimit)) {
    throw numeric_error("transfer cascade ill-conditioned (cond = " +
                            std::to_string(res.matrix_cond) + ")",
                        res.matrix_cond);
  }

  res.B = -M.c / M.d;
  res.R = std::norm(res.B);

  // Incident and transmitted channel currents j = 2 q (D - m) |c|^2; both
  // positive for right movers. det M = j_in / j_out up to the factored scale,
  // which makes F = det(M)/M22 stable even under deep tunnelling.
  const double j_in = (left.q * complex(d_left - m)).real();
  if (right.cls == MomentumClass::Evanescent) {
    res.T = 0.0;
    res.kappa = 0.0;
    const complex det_m =
        (left.q * complex(d_left - m)) / (right.q * complex(d_right - m));
    res.F = (log_scale < 700.0) ? det_m / M.d * std::exp(-log_scale)
                                : complex(0.0, 0.0);
  } else {
    const double j_out = (right.q * complex(d_right - m)).real();
    const double det_m = j_in / j_out;
    const double log_f = std::log(std::abs(det_m)) -
                         std::log(std::abs(M.d)) - log_scale;
    res.T = (j_out / j_in) * std::exp(2.0 * log_f);
    res.F = (log_f > -700.0)
                ? complex(det_m, 0.0) / M.d * std::exp(-log_scale)
                : complex(0.0, 0.0);
    res.kappa =
        (left.q.real() * (d_right - m)) / (right.q.real() * (d_left - m));
    res.resonance = std::abs(res.T - 1.0) <= 1e-9;
  }
  return res;
}

std::vector<SweepPoint> transmission_sweep(const PotentialProfile& profile,
                                           double e_min, double e_max,
                                           int n_points) {
  if (!(e_min < e_max)) throw domain_error("sweep needs e_min < e_max");
  if (n_points < 2) throw domain_error("sweep needs at least two points");

  std::vector<double> levels{profile.left_level, profile.right_level};
  for (const Segment& s : profile.segments) levels.push_back(s.potential);

  std::vector<SweepPoint> out;
  out.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    SweepPoint pt;
    pt.E = e_min + (e_max - e_min) * (double(i) / (n_points - 1));
    const bool threshold =
        std::any_of(levels.begin(), levels.end(), [&](double v) {
          return momentum_branch(pt.E, v, profile.mass).cls ==
                 MomentumClass::EvanescentThreshold;
        });
    if (threshold) {
      pt.status = SweepStatus::SkippedThreshold;
      pt.note = "skipped: |E - V| = m in some region";
      out.push_back(pt);
      continue;
    }
    try {
      pt.result = scatter_numeric(profile, pt.E);
      pt.status = SweepStatus::Ok;
    } catch (const no_channel_error& e) {
      pt.status = SweepStatus::NoIncidentChannel;
      pt.note = e.what();
    } catch (const error& e) {
      pt.status = SweepStatus::Failed;
      pt.note = e.what();
    }
    out.push_back(pt);
  }
  return out;
}

PotentialProfile reversed(const PotentialProfile& profile) {
  std::vector<Segment> segs;
  segs.reserve(profile.segments.size());
  for (auto it = profile.segments.rbegin(); it != profile.segments.rend();
       ++it) {
    segs.push_back({-it->x_end, -it->x_begin, it->potential});
  }
  return build_profile(profile.right_level, profile.left_level,
                       std::move(segs), profile.mass);
}

}  // namespace dirac1d::transfer
