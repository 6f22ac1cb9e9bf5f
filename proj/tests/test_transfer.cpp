#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dirac1d/analytic.hpp"
#include "dirac1d/transfer.hpp"

using namespace dirac1d;
using namespace dirac1d::transfer;

namespace {

PotentialProfile klein_step(double V, double m = 1.0) {
  return build_profile(0.0, V, {}, m);
}

PotentialProfile square_barrier(double V, double a, double m = 1.0) {
  return build_profile(0.0, 0.0, {{-a, a, V}}, m);
}

PotentialProfile sauter_ramp(double v, double dv, int n, double m = 1.0) {
  return build_profile(0.0, dv, staircase(0.0, dv / v, 0.0, dv, n), m);
}

/// Current of the reconstructed solution in the asymptotic regions, from the
/// reported amplitudes: an independent cross-check of R + T = 1.
double asymptotic_current(const PotentialProfile& profile,
                          const TransferResult& res, bool left, double x) {
  const double m = profile.mass;
  const double V = left ? profile.left_level : profile.right_level;
  const auto b = momentum_branch(res.E, V, m);
  const double d = res.E - V;
  const complex i(0.0, 1.0);
  const complex q = b.q;
  auto u = [&](complex qq) { return Spinor(i * qq, complex(d - m)); };
  Spinor psi;
  if (left) {
    psi = std::exp(i * q * x) * u(q) + (res.B * std::exp(-i * q * x)) * u(-q);
  } else {
    psi = (res.F * std::exp(i * q * x)) * u(q);
  }
  return current(psi);
}

}  // namespace

TEST_CASE("build_profile validation") {
  CHECK_NOTHROW(klein_step(5.0));
  CHECK_NOTHROW(square_barrier(5.0, 1.0));
  CHECK_THROWS_AS(build_profile(0.0, 0.0, {{0.0, 2.0, 1.0}, {1.0, 3.0, 2.0}}),
                  validation_error);
  CHECK_THROWS_AS(build_profile(0.0, 0.0, {{0.0, 1.0, 1.0}, {2.0, 3.0, 2.0}}),
                  validation_error);
  CHECK_THROWS_AS(build_profile(0.0, 0.0, {{2.0, 1.0, 1.0}}), validation_error);
  try {
    build_profile(0.0, 0.0, {{0.0, 2.0, 1.0}, {1.0, 3.0, 2.0}});
  } catch (const validation_error& e) {
    CHECK(e.segment_index == 1);
  }
  // unsorted input is normalized
  const auto p = build_profile(0.0, 0.0, {{1.0, 2.0, 5.0}, {0.0, 1.0, 3.0}});
  CHECK(p.segments[0].potential == 3.0);
}

TEST_CASE("staircase sampling") {
  const auto one = staircase(0.0, 10.0, 0.0, 5.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].potential == doctest::Approx(2.5).epsilon(1e-15));

  const auto five = staircase(0.0, 10.0, 0.0, 5.0, 5);
  REQUIRE(five.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(five[i].potential == doctest::Approx(0.5 + i).epsilon(1e-15));
  }
  CHECK(five.front().x_begin == 0.0);
  CHECK(five.back().x_end == 10.0);
  // adjacent edges shared exactly, so profiles validate
  CHECK_NOTHROW(build_profile(0.0, 5.0, five));
}

TEST_CASE("Klein step matches the analytic formula to 1e-10") {
  const auto res = scatter_numeric(klein_step(5.0), 1.5);
  CHECK(res.R == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(res.T == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(res.kappa == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(res.n_segments == 0);
}

TEST_CASE("oracle equivalence over a step and barrier grid") {
  const auto step = klein_step(5.0);
  const auto barrier = square_barrier(5.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double E = 1.015 + (11.9 - 1.015) * i / 299.0;
    if (std::abs(std::abs(E - 5.0) - 1.0) < 1e-6) continue;
    const auto sa = analytic::step_scatter(E, 5.0, 1.0);
    const auto sn = scatter_numeric(step, E);
    CHECK(std::abs(sn.T - sa.T) <= 1e-9);
    CHECK(std::abs(sn.R - sa.R) <= 1e-9);
    const auto ba = analytic::barrier_scatter(E, 5.0, 1.0, 1.0);
    const auto bn = scatter_numeric(barrier, E);
    CHECK(std::abs(bn.T - ba.T) <= 1e-9);
    CHECK(std::abs(bn.R - ba.R) <= 1e-9);
  }
}

TEST_CASE("barrier resonance through the numeric engine") {
  const double e1 = 5.0 - std::sqrt(1.0 + M_PI * M_PI / 4.0);
  const auto res = scatter_numeric(square_barrier(5.0, 1.0), e1);
  CHECK(std::abs(res.T - 1.0) <= 1e-9);
  CHECK(res.resonance);
}

TEST_CASE("free profile is transparent") {
  const auto res = scatter_numeric(build_profile(0.0, 0.0, {}), 1.5);
  CHECK(res.R == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(res.T == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("current conservation between the asymptotic regions") {
  const auto profile = sauter_ramp(0.5, 10.0, 64);
  for (double E : {1.5, 3.0, 5.0, 7.2, 8.9}) {
    const auto res = scatter_numeric(profile, E);
    const double j_left = asymptotic_current(profile, res, true, -3.7);
    const double j_right = asymptotic_current(profile, res, false, 25.2);
    CHECK(j_left == doctest::Approx(j_right).epsilon(1e-10));
    CHECK(std::abs(res.R + res.T - 1.0) <= 1e-10);
  }
}

TEST_CASE("splitting a segment leaves R and T unchanged") {
  const auto whole = square_barrier(5.0, 1.0);
  const auto split =
      build_profile(0.0, 0.0, {{-1.0, 0.25, 5.0}, {0.25, 1.0, 5.0}});
  for (double E : {1.5, 3.0, 4.2, 6.5}) {
    const auto w = scatter_numeric(whole, E);
    const auto s = scatter_numeric(split, E);
    CHECK(std::abs(w.R - s.R) <= 1e-12);
    CHECK(std::abs(w.T - s.T) <= 1e-12);
  }
}

TEST_CASE("reciprocity: reversed profile transmits identically") {
  const auto profile = sauter_ramp(0.5, 10.0, 128);
  const auto mirrored = reversed(profile);
  for (double E : {1.5, 5.0, 8.5}) {
    const auto fwd = scatter_numeric(profile, E);
    const auto bwd = scatter_numeric(mirrored, E);
    CHECK(fwd.T == doctest::Approx(bwd.T).epsilon(1e-11));
  }
}

TEST_CASE("hole-side incidence works through the branch rule") {
  // step down: incident channel is the hole continuum of the left region
  const auto res = scatter_numeric(build_profile(5.0, 0.0, {}), 1.5);
  CHECK(res.T == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("evanescent far side gives total reflection") {
  const auto res = scatter_numeric(klein_step(1.0), 1.5);  // V-m < E < V+m
  CHECK(res.T == 0.0);
  CHECK(res.R == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("error paths: threshold, no channel, ill-conditioned") {
  CHECK_THROWS_AS(scatter_numeric(klein_step(5.0), 4.0), threshold_error);
  CHECK_THROWS_AS(scatter_numeric(klein_step(5.0), 6.0), threshold_error);
  CHECK_THROWS_AS(scatter_numeric(klein_step(5.0), 0.5), no_channel_error);
  // a hugely opaque interior region drives cond past 1e12
  try {
    scatter_numeric(build_profile(0.0, 0.0, {{0.0, 40.0, 1.5}}), 1.5);
    FAIL("expected numeric_error");
  } catch (const numeric_error& e) {
    CHECK(e.diagnostic > 1e12);
  }
}

TEST_CASE("interior threshold energies are handled exactly (sinc propagator)") {
  // segment at V=0.5 puts E=1.5 exactly on its threshold; the solution
  // operator is regular there and unitarity must survive
  const auto profile = build_profile(0.0, 0.0, {{0.0, 2.0, 0.5}});
  const auto res = scatter_numeric(profile, 1.5);
  CHECK(std::abs(res.R + res.T - 1.0) <= 1e-10);
}

TEST_CASE("transmission sweep: unitarity scan and threshold reporting") {
  const auto pts = transmission_sweep(klein_step(5.0), 1.01, 3.99, 10);
  REQUIRE(pts.size() == 10);
  for (const auto& pt : pts) {
    REQUIRE(pt.status == SweepStatus::Ok);
    CHECK(std::abs(pt.result->R + pt.result->T - 1.0) <= 1e-8);
  }
  // grid passing through E = 4 exactly reports the skip
  const auto with_thr = transmission_sweep(klein_step(5.0), 3.0, 5.0, 3);
  CHECK(with_thr[1].status == SweepStatus::SkippedThreshold);
  CHECK(with_thr[0].status == SweepStatus::Ok);
  CHECK(with_thr[2].status == SweepStatus::Ok);
  // no-channel points are reported, not fatal
  const auto low = transmission_sweep(klein_step(5.0), 0.2, 0.8, 3);
  for (const auto& pt : low) CHECK(pt.status == SweepStatus::NoIncidentChannel);
}

TEST_CASE("subcritical step sweep stays classical") {
  const auto pts = transmission_sweep(klein_step(1.5), 2.6, 6.0, 12);
  for (const auto& pt : pts) {
    REQUIRE(pt.status == SweepStatus::Ok);
    CHECK(pt.result->T > 0.0);
    CHECK(std::abs(pt.result->R + pt.result->T - 1.0) <= 1e-8);
  }
}

TEST_CASE("sweep brackets the barrier resonances") {
  const auto pts = transmission_sweep(square_barrier(5.0, 1.0), 1.05, 3.95, 300);
  const auto es = analytic::resonance_energies(5.0, 1.0, 1.0);
  for (double e_res : es) {
    bool bracketed = false;
    for (const auto& pt : pts) {
      if (pt.status != SweepStatus::Ok) continue;
      if (std::abs(pt.E - e_res) < 0.01 && pt.result->T > 0.999) bracketed = true;
    }
    CHECK(bracketed);
  }
}

TEST_CASE("staircase transmission is Cauchy in the step count") {
  // Sauter ramp check case: v = 0.5, total drop 10, mid-zone energy
  double prev = scatter_numeric(sauter_ramp(0.5, 10.0, 128), 5.0).T;
  double diff_prev = 1.0;
  int n_star = 0;
  for (int n = 256; n <= 4096; n *= 2) {
    const double next = scatter_numeric(sauter_ramp(0.5, 10.0, n), 5.0).T;
    const double diff = std::abs(next - prev);
    CHECK(diff < diff_prev + 1e-12);  // shrinking beyond n ~ 100
    if (diff < 1e-6 && n_star == 0) n_star = n;
    prev = next;
    diff_prev = diff;
  }
  CHECK(n_star > 0);  // convergence driver found its n*
}
