#include "dirac1d/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dirac1d::spectrum {

namespace {

/// Root search workspace for one well. The even/odd conditions
///   tan(pa) = +sqrt((m-E)(E+V+m) / ((m+E)(E+V-m)))   (even)
///   tan(pa) = -sqrt((m+E)(E+V+m) / ((m-E)(E+V-m)))   (odd)
/// are solved through the pole-free phase function
///   g(pa) = pa - atan(rhs(E(pa))),
/// whose roots sit at integer multiples of pi, one per tangent branch.
class WellSolver {
public:
  WellSolver(double V, double a, double m) : v_(V), a_(a), m_(m) {
    // Energy window for an oscillatory interior: E + V > m and |E| < m.
    // The guard scales with V because E(pa) loses absolute precision ~V*eps.
    eps_ = 1e-14 * std::max(m_, v_);
    e_lo_ = std::max(-m_ + eps_, m_ - v_ + eps_);
    e_hi_ = m_ - eps_;
    if (e_lo_ < e_hi_) {
      pa_lo_ = a_ * std::sqrt((e_lo_ + v_) * (e_lo_ + v_) - m_ * m_);
      pa_hi_ = a_ * std::sqrt((e_hi_ + v_) * (e_hi_ + v_) - m_ * m_);
    }
  }

  bool empty() const { return !(e_lo_ < e_hi_); }

  double energy(double pa) const {
    const double p = pa / a_;
    const double e = std::sqrt(p * p + m_ * m_) - v_;
    return std::clamp(e, e_lo_, e_hi_);
  }

  double rhs(double E, Parity parity) const {
    const double num_e = (m_ - E) * (E + v_ + m_);
    const double den_e = (m_ + E) * (E + v_ - m_);
    if (parity == Parity::Even) return std::sqrt(num_e / den_e);
    const double num_o = (m_ + E) * (E + v_ + m_);
    const double den_o = (m_ - E) * (E + v_ - m_);
    return -std::sqrt(num_o / den_o);
  }

  double g(double pa, Parity parity) const {
    return pa - std::atan(rhs(energy(pa), parity));
  }

  /// Residual of the transcendental equation in the bounded form
  /// sin(pa) sqrt(den) -+ cos(pa) sqrt(num), normalized by the scale of the
  /// two terms. Zero at genuine roots including the window edges.
  double residual(double pa, Parity parity) const {
    const double E = energy(pa);
    double num, den;
    if (parity == Parity::Even) {
      num = (m_ - E) * (E + v_ + m_);
      den = (m_ + E) * (E + v_ - m_);
      const double t1 = std::sin(pa) * std::sqrt(den);
      const double t2 = std::cos(pa) * std::sqrt(num);
      return std::abs(t1 - t2) / std::max(1e-300, std::abs(t1) + std::abs(t2));
    }
    num = (m_ + E) * (E + v_ + m_);
    den = (m_ - E) * (E + v_ - m_);
    const double t1 = std::sin(pa) * std::sqrt(den);
    const double t2 = std::cos(pa) * std::sqrt(num);
    return std::abs(t1 + t2) / std::max(1e-300, std::abs(t1) + std::abs(t2));
  }

  std::vector<BoundState> solve() const {
    std::vector<BoundState> states;
    if (empty()) return states;
    for (Parity parity : {Parity::Even, Parity::Odd}) {
      collect_parity(parity, states);
    }
    std::sort(states.begin(), states.end(),
              [](const BoundState& x, const BoundState& y) {
                return x.energy > y.energy;
              });
    // drop duplicates from a sample landing exactly on a root
    states.erase(std::unique(states.begin(), states.end(),
                             [](const BoundState& x, const BoundState& y) {
                               return x.parity == y.parity &&
                                      std::abs(x.energy - y.energy) <
                                          1e-12 * std::max(1.0, std::abs(x.energy));
                             }),
                 states.end());
    for (std::size_t i = 0; i < states.size(); ++i) {
      states[i].index = static_cast<int>(i) + 1;
    }
    return states;
  }

private:
  void collect_parity(Parity parity, std::vector<BoundState>& states) const {
    const int branches = static_cast<int>(pa_hi_ / M_PI) + 2;
    const int n_samples = std::max(512, 96 * branches);
    std::vector<bool> found(static_cast<std::size_t>(branches) + 2, false);

    double pa_prev = pa_lo_;
    double g_prev = g(pa_prev, parity);
    for (int i = 1; i <= n_samples; ++i) {
      const double pa =
          pa_lo_ + (pa_hi_ - pa_lo_) * (double(i) / n_samples);
      const double gv = g(pa, parity);
      // every multiple of pi strictly between g_prev and gv is one root
      const int j_lo = static_cast<int>(std::ceil(std::min(g_prev, gv) / M_PI));
      const int j_hi = static_cast<int>(std::floor(std::max(g_prev, gv) / M_PI));
      for (int j = std::max(0, j_lo); j <= j_hi; ++j) {
        const double pa_root = bisect(pa_prev, pa, j * M_PI, parity);
        emit(pa_root, parity, states);
        if (j < static_cast<int>(found.size())) found[j] = true;
      }
      pa_prev = pa;
      g_prev = gv;
    }

    // Threshold snapping: a level sitting exactly at a window edge (E = -m at
    // a supercritical depth, E = m at an appearance depth) shows up as
    // g(edge) = j*pi within roundoff of the edge guard. Counted as still
    // bound, per the strict-crossing convention.
    for (double pa_edge : {pa_lo_, pa_hi_}) {
      const double ge = g(pa_edge, parity);
      const double j = std::round(ge / M_PI);
      if (j >= 0 && std::abs(ge - j * M_PI) < 1e-6 &&
          (j >= static_cast<double>(found.size()) ||
           !found[static_cast<std::size_t>(j)])) {
        emit(pa_edge, parity, states);
      }
    }
  }

  double bisect(double lo, double hi, double target, Parity parity) const {
    double f_lo = g(lo, parity) - target;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const double f_mid = g(mid, parity) - target;
      if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  void emit(double pa, Parity parity, std::vector<BoundState>& states) const {
    BoundState s;
    s.parity = parity;
    s.energy = energy(pa);
    s.well_momentum = pa / a_;
    states.push_back(s);
  }

  double v_, a_, m_;
  double eps_ = 0.0;
  double e_lo_ = 0.0, e_hi_ = -1.0;
  double pa_lo_ = 0.0, pa_hi_ = 0.0;
};

struct WellSignature {
  int n_even = 0;
  int n_odd = 0;
  int n_negative = 0;

  bool operator==(const WellSignature&) const = default;
};

WellSignature signature_at(double V, double a, double m) {
  WellSignature sig;
  if (!(V > 0.0)) return sig;
  for (const BoundState& s : WellSolver(V, a, m).solve()) {
    if (s.parity == Parity::Even) ++sig.n_even;
    else ++sig.n_odd;
    if (s.energy < 0.0) ++sig.n_negative;
  }
  return sig;
}

}  // namespace

DeltaWellState delta_well_energy(double lambda, double m) {
  if (!(m > 0.0)) throw domain_error("mass must be positive");
  if (!(lambda > 0.0)) throw domain_error("delta-well strength must be positive");
  DeltaWellState out;
  const bool even = (static_cast<long long>(std::floor(lambda / M_PI)) % 2) == 0;
  out.parity = even ? Parity::Even : Parity::Odd;
  out.energy = (even ? 1.0 : -1.0) * m * std::cos(lambda);
  return out;
}

ChargeLedger delta_ledger(double lambda) {
  if (lambda < 0.0) throw domain_error("delta-well strength must be nonnegative");
  ChargeLedger ledger;
  ledger.q_particle = static_cast<int>(std::floor(lambda / M_PI + 0.5));
  ledger.q_supercritical = static_cast<int>(std::floor(lambda / M_PI));
  ledger.q_vacuum = -ledger.q_particle;
  return ledger;
}

std::vector<BoundState> well_bound_states(double V, double a, double m) {
  if (!(m > 0.0)) throw domain_error("mass must be positive");
  if (!(V > 0.0)) throw domain_error("well depth must be positive");
  if (!(a > 0.0)) throw domain_error("well half-width must be positive");
  return WellSolver(V, a, m).solve();
}

double supercritical_threshold(int N, double a, double m) {
  if (N < 1) throw domain_error("level index N must be >= 1");
  if (!(a > 0.0) || !(m > 0.0)) throw domain_error("need a > 0 and m > 0");
  const double pn = N * M_PI / (2.0 * a);
  return m + std::sqrt(m * m + pn * pn);
}

ChargeLedger well_ledger(double V, double a, double m) {
  if (!(V > 0.0)) throw domain_error("well depth must be positive");
  ChargeLedger ledger;
  if (V > 2.0 * m) {
    ledger.q_supercritical = static_cast<int>(
        std::floor((2.0 * a / M_PI) * std::sqrt(V * V - 2.0 * m * V)));
  }
  int negatives = 0;
  for (const BoundState& s : well_bound_states(V, a, m)) {
    if (s.energy < 0.0) ++negatives;
  }
  ledger.q_particle = negatives + ledger.q_supercritical;
  ledger.q_vacuum = -ledger.q_particle;
  return ledger;
}

namespace {

struct RawEvent {
  double V = 0.0;
  SweepEventKind kind = SweepEventKind::StateAppears;
  Parity parity = Parity::Even;
};

/// Classify the signature change across one interval, or report that more
/// than one event must be hiding inside.
bool single_event(const WellSignature& before, const WellSignature& after,
                  RawEvent& ev) {
  const int de = after.n_even - before.n_even;
  const int do_ = after.n_odd - before.n_odd;
  const int dn = after.n_negative - before.n_negative;
  if (de == 1 && do_ == 0 && dn == 0) {
    ev.kind = SweepEventKind::StateAppears;
    ev.parity = Parity::Even;
    return true;
  }
  if (de == 0 && do_ == 1 && dn == 0) {
    ev.kind = SweepEventKind::StateAppears;
    ev.parity = Parity::Odd;
    return true;
  }
  if (de == 0 && do_ == 0 && dn == 1) {
    ev.kind = SweepEventKind::CrossesZero;
    return true;
  }
  if (de == -1 && do_ == 0 && dn == -1) {
    ev.kind = SweepEventKind::GoesSupercritical;
    ev.parity = Parity::Even;
    return true;
  }
  if (de == 0 && do_ == -1 && dn == -1) {
    ev.kind = SweepEventKind::GoesSupercritical;
    ev.parity = Parity::Odd;
    return true;
  }
  return false;
}

void locate_events(double v_lo, double v_hi, const WellSignature& sig_lo,
                   const WellSignature& sig_hi, double a, double m,
                   double min_width, std::vector<RawEvent>& events) {
  if (sig_lo == sig_hi) return;
  RawEvent ev;
  if (single_event(sig_lo, sig_hi, ev)) {
    // binary-search the event position
    double lo = v_lo, hi = v_hi;
    WellSignature s_lo = sig_lo;
    for (int it = 0; it < 60 && hi - lo > 1e-10 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      const WellSignature s_mid = signature_at(mid, a, m);
      if (s_mid == s_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    ev.V = 0.5 * (lo + hi);
    events.push_back(ev);
    return;
  }
  if (v_hi - v_lo < min_width) {
    throw numeric_error(
        "adiabatic sweep cannot separate events near V = " +
        std::to_string(0.5 * (v_lo + v_hi)) +
        " (refined to dV/1024); use a smaller dV");
  }
  const double mid = 0.5 * (v_lo + v_hi);
  const WellSignature sig_mid = signature_at(mid, a, m);
  locate_events(v_lo, mid, sig_lo, sig_mid, a, m, min_width, events);
  locate_events(mid, v_hi, sig_mid, sig_hi, a, m, min_width, events);
}

}  // namespace

std::vector<SweepEvent> adiabatic_sweep(double a, double m, double v_max,
                                        double dv) {
  if (!(dv > 0.0)) throw domain_error("sweep step dv must be positive");
  if (!(a > 0.0) || !(m > 0.0)) throw domain_error("need a > 0 and m > 0");

  std::vector<RawEvent> raw;
  const double min_width = dv / 1024.0;
  double v_prev = 0.0;
  WellSignature sig_prev;  // empty well at V = 0
  while (v_prev < v_max) {
    const double v_next = std::min(v_prev + dv, v_max);
    const WellSignature sig_next = signature_at(v_next, a, m);
    locate_events(v_prev, v_next, sig_prev, sig_next, a, m, min_width, raw);
    v_prev = v_next;
    sig_prev = sig_next;
  }
  std::sort(raw.begin(), raw.end(),
            [](const RawEvent& x, const RawEvent& y) { return x.V < y.V; });

  std::vector<SweepEvent> events;
  ChargeLedger ledger;
  for (const RawEvent& r : raw) {
    SweepEvent ev;
    ev.strength = r.V;
    ev.kind = r.kind;
    ev.parity = r.parity;
    // Resolve the participating state just past (or before, for an escape)
    // the event to attach its energy and rank.
    const double probe =
        (r.kind == SweepEventKind::GoesSupercritical) ? r.V - 1e-7 : r.V + 1e-7;
    const auto states = well_bound_states(std::max(probe, 1e-12), a, m);
    const BoundState* pick = nullptr;
    double best_score = 0.0;
    for (const BoundState& s : states) {
      double score = 0.0;
      switch (r.kind) {
        case SweepEventKind::StateAppears:
          if (s.parity != r.parity) continue;
          score = m - s.energy;
          break;
        case SweepEventKind::CrossesZero:
          score = std::abs(s.energy);
          break;
        case SweepEventKind::GoesSupercritical:
          if (s.parity != r.parity) continue;
          score = s.energy + m;
          break;
      }
      if (pick == nullptr || score < best_score) {
        pick = &s;
        best_score = score;
      }
    }
    if (pick != nullptr) {
      ev.energy = pick->energy;
      ev.index = pick->index;
      if (r.kind == SweepEventKind::CrossesZero) ev.parity = pick->parity;
    }
    if (r.kind == SweepEventKind::CrossesZero) {
      ledger.q_particle += 1;
      ledger.q_vacuum -= 1;
    } else if (r.kind == SweepEventKind::GoesSupercritical) {
      ledger.q_supercritical += 1;
    }
    ev.ledger = ledger;
    events.push_back(ev);
  }
  return events;
}

std::vector<SweepEvent> delta_adiabatic_sweep(double lambda_max, double m) {
  if (!(m > 0.0)) throw domain_error("mass must be positive");
  if (lambda_max < 0.0) throw domain_error("lambda_max must be nonnegative");

  std::vector<SweepEvent> events;
  ChargeLedger ledger;
  auto parity_of = [](long long branch) {
    return (branch % 2 == 0) ? Parity::Even : Parity::Odd;
  };

  // Interleave appearance (j pi), crossing ((j+1/2) pi), and supercritical
  // ((j+1) pi) events branch by branch; strict crossings only.
  for (long long j = 0;; ++j) {
    const double lam_appear = j * M_PI;
    if (lam_appear >= lambda_max && !(j == 0 && lambda_max > 0.0)) break;
    if (j == 0 || lam_appear < lambda_max) {
      SweepEvent ev;
      ev.strength = lam_appear;
      ev.kind = SweepEventKind::StateAppears;
      ev.parity = parity_of(j);
      ev.index = 1;
      ev.energy = m;
      ev.ledger = ledger;
      events.push_back(ev);
    }
    const double lam_cross = (j + 0.5) * M_PI;
    if (lam_cross < lambda_max) {
      ledger.q_particle += 1;
      ledger.q_vacuum -= 1;
      SweepEvent ev;
      ev.strength = lam_cross;
      ev.kind = SweepEventKind::CrossesZero;
      ev.parity = parity_of(j);
      ev.index = 1;
      ev.energy = 0.0;
      ev.ledger = ledger;
      events.push_back(ev);
    }
    const double lam_super = (j + 1) * M_PI;
    if (lam_super < lambda_max) {
      ledger.q_supercritical += 1;
      SweepEvent ev;
      ev.strength = lam_super;
      ev.kind = SweepEventKind::GoesSupercritical;
      ev.parity = parity_of(j);
      ev.index = 1;
      ev.energy = -m;
      ev.ledger = ledger;
      events.push_back(ev);
    } else {
      break;
    }
  }
  return events;
}

}  // namespace dirac1d::spectrum
