#include "dirac1d/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "dirac1d/analytic.hpp"
#include "dirac1d/output.hpp"
#include "dirac1d/potential_dsl.hpp"
#include "dirac1d/spectrum.hpp"
#include "dirac1d/transfer.hpp"
#include "dirac1d/vacuum.hpp"

namespace dirac1d::cli {

namespace {

using output::json;
using output::OutputRecord;

struct Options {
  double m = 1.0;
  double V = 5.0;
  double a = 1.0;
  double E = 1.5;
  double e_min = 1.01;
  double e_max = 3.99;
  int e_steps = 100;
  std::string potential = "step";
  std::string format = "json";
  std::string out_path;
  std::string engine = "auto";
  double lambda = 2.0;
  double lambda_max = 3.5;
  double v_max = 3.0;
  double dv = 0.01;
  bool well_mode = false;
  bool delta_mode = false;
  double Z = 137.036;
  double alpha = analytic::kFineStructureAlpha;
  std::string regime = "rel";
  double p = 1.0;
  double f_prefactor = 1.0;
  double slope = 0.5;
  int steps = 512;
  double x_min = -5.0;
  double x_max = 5.0;
  int x_steps = 101;
  double rel_tol = 1e-9;
};

bool is_builtin(const std::string& name) {
  return name == "step" || name == "barrier" || name == "well" ||
         name == "free" || name == "sauter";
}

transfer::PotentialProfile load_profile(const Options& opt) {
  if (opt.potential == "step") {
    return transfer::build_profile(0.0, opt.V, {}, opt.m);
  }
  if (opt.potential == "barrier") {
    return transfer::build_profile(0.0, 0.0, {{-opt.a, opt.a, opt.V}}, opt.m);
  }
  if (opt.potential == "well") {
    return transfer::build_profile(0.0, 0.0, {{-opt.a, opt.a, -opt.V}}, opt.m);
  }
  if (opt.potential == "free") {
    return transfer::build_profile(0.0, 0.0, {}, opt.m);
  }
  if (opt.potential == "sauter") {
    if (!(opt.slope > 0.0)) throw input_error("sauter ramp needs --v > 0");
    const double length = opt.V / opt.slope;
    return transfer::build_profile(
        0.0, opt.V, transfer::staircase(0.0, length, 0.0, opt.V, opt.steps),
        opt.m);
  }
  std::ifstream in(opt.potential);
  if (!in) {
    throw input_error("cannot open potential file '" + opt.potential + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  dsl::PotentialSpecDocument doc = dsl::parse_potential(buffer.str());
  return doc.to_profile();
}

std::string parity_name(spectrum::Parity p) {
  return p == spectrum::Parity::Even ? "even" : "odd";
}

std::string event_name(spectrum::SweepEventKind k) {
  switch (k) {
    case spectrum::SweepEventKind::StateAppears: return "state-appears";
    case spectrum::SweepEventKind::CrossesZero: return "crosses-zero";
    case spectrum::SweepEventKind::GoesSupercritical: return "goes-supercritical";
  }
  return "?";
}

json ledger_json(const spectrum::ChargeLedger& ledger) {
  json j;
  j["Q_p"] = ledger.q_particle;
  j["Q_0"] = ledger.q_vacuum;
  j["Q_S"] = ledger.q_supercritical;
  j["Q_total"] = ledger.total();
  return j;
}

void emit_object(std::ostream& os, const Options& opt, const json& obj,
                 const OutputRecord& csv_form) {
  if (opt.format == "csv") {
    output::write_csv(os, csv_form);
  } else {
    os << obj.dump(2) << '\n';
  }
}

json scatter_json(const char* schema, const char* engine, const Options& opt,
                  double E, double R, double T, double kappa, complex B,
                  complex F, bool resonance) {
  json j;
  j["schema"] = schema;
  j["engine"] = engine;
  j["m"] = opt.m;
  j["E"] = E;
  j["kappa"] = kappa;
  j["R"] = R;
  j["T"] = T;
  j["B_re"] = B.real();
  j["B_im"] = B.imag();
  j["F_re"] = F.real();
  j["F_im"] = F.imag();
  j["resonance"] = resonance;
  return j;
}

OutputRecord scatter_record(const json& j) {
  OutputRecord rec;
  rec.schema = j.at("schema").get<std::string>();
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "schema" || it.key() == "engine") continue;
    rec.columns.push_back(it.key());
  }
  rec.rows.emplace_back();
  for (const auto& col : rec.columns) rec.rows.back().push_back(j.at(col));
  return rec;
}

int cmd_scatter(const Options& opt, std::ostream& os) {
  std::string engine = opt.engine;
  if (engine == "auto") engine = is_builtin(opt.potential) ? "analytic" : "numeric";

  if (opt.potential == "sauter" && engine == "analytic") {
    const auto res = analytic::sauter_transmission(opt.slope, opt.m);
    json j;
    j["schema"] = "sauter.v1";
    j["m"] = opt.m;
    j["v"] = opt.slope;
    j["T"] = res.T;
    j["weak_field_valid"] = res.weak_field_valid;
    OutputRecord rec;
    rec.schema = "sauter.v1";
    rec.columns = {"m", "v", "T", "weak_field_valid"};
    rec.rows = {{opt.m, opt.slope, res.T, res.weak_field_valid}};
    emit_object(os, opt, j, rec);
    return 0;
  }

  if (engine == "analytic") {
    analytic::ScatteringResult res;
    if (opt.potential == "step") {
      res = analytic::step_scatter(opt.E, opt.V, opt.m);
    } else if (opt.potential == "barrier") {
      res = analytic::barrier_scatter(opt.E, opt.V, opt.a, opt.m);
    } else if (opt.potential == "well") {
      res = analytic::barrier_scatter(opt.E, -opt.V, opt.a, opt.m);
    } else if (opt.potential == "free") {
      res = analytic::step_scatter(opt.E, 0.0, opt.m);
    } else {
      throw input_error("--engine analytic needs a builtin potential");
    }
    const json j = scatter_json("scatter.v1", "analytic", opt, res.E, res.R,
                                res.T, res.kappa, res.B, res.F, res.resonance);
    emit_object(os, opt, j, scatter_record(j));
    return 0;
  }

  const auto profile = load_profile(opt);
  const auto res = transfer::scatter_numeric(profile, opt.E);
  json j = scatter_json("scatter.v1", "numeric", opt, res.E, res.R, res.T,
                        res.kappa, res.B, res.F, res.resonance);
  j["matrix_cond"] = res.matrix_cond;
  j["n_segments"] = res.n_segments;
  emit_object(os, opt, j, scatter_record(j));
  return 0;
}

int cmd_sweep(const Options& opt, std::ostream& os, std::ostream& err) {
  std::string engine = opt.engine;
  if (engine == "auto") engine = "numeric";

  OutputRecord rec;
  rec.schema = "sweep.v1";
  rec.columns = {"E", "R", "T", "kappa", "resonance"};
  json skipped = json::array();

  auto note_skip = [&](double e, const std::string& why) {
    json s;
    s["E"] = e;
    s["note"] = why;
    skipped.push_back(s);
  };

  if (engine == "analytic") {
    if (opt.potential != "step" && opt.potential != "barrier" &&
        opt.potential != "well") {
      throw input_error("--engine analytic sweeps support step/barrier/well");
    }
    if (opt.e_steps < 2) throw input_error("sweep needs --esteps >= 2");
    for (int i = 0; i < opt.e_steps; ++i) {
      const double e =
          opt.e_min + (opt.e_max - opt.e_min) * (double(i) / (opt.e_steps - 1));
      try {
        const auto res =
            (opt.potential == "step")
                ? analytic::step_scatter(e, opt.V, opt.m)
                : analytic::barrier_scatter(
                      e, opt.potential == "well" ? -opt.V : opt.V, opt.a, opt.m);
        rec.rows.push_back({res.E, res.R, res.T, res.kappa, res.resonance});
      } catch (const input_error& ex) {
        note_skip(e, ex.what());
      }
    }
  } else {
    const auto profile = load_profile(opt);
    for (const auto& pt :
         transfer::transmission_sweep(profile, opt.e_min, opt.e_max, opt.e_steps)) {
      if (pt.status == transfer::SweepStatus::Ok) {
        const auto& r = *pt.result;
        rec.rows.push_back({r.E, r.R, r.T, r.kappa, r.resonance});
      } else {
        note_skip(pt.E, pt.note);
      }
    }
  }

  if (opt.format == "csv") {
    output::write_csv(os, rec);
    for (const auto& s : skipped) {
      err << "note: E=" << output::format_double(s.at("E").get<double>())
          << " " << s.at("note").get<std::string>() << "\n";
    }
  } else {
    json doc;
    doc["schema"] = rec.schema;
    doc["columns"] = rec.columns;
    doc["rows"] = rec.rows;
    doc["skipped"] = skipped;
    os << doc.dump(2) << '\n';
  }
  return 0;
}

int cmd_spectrum(const Options& opt, std::ostream& os) {
  if (opt.delta_mode) {
    const auto state = spectrum::delta_well_energy(opt.lambda, opt.m);
    const auto ledger = spectrum::delta_ledger(opt.lambda);
    json j;
    j["schema"] = "spectrum-delta.v1";
    j["m"] = opt.m;
    j["lambda"] = opt.lambda;
    j["parity"] = parity_name(state.parity);
    j["E"] = state.energy;
    j["ledger"] = ledger_json(ledger);
    OutputRecord rec;
    rec.schema = "spectrum-delta.v1";
    rec.columns = {"lambda", "parity", "E", "Q_p", "Q_0", "Q_S"};
    rec.rows = {{opt.lambda, parity_name(state.parity), state.energy,
                 ledger.q_particle, ledger.q_vacuum, ledger.q_supercritical}};
    emit_object(os, opt, j, rec);
    return 0;
  }

  const auto states = spectrum::well_bound_states(opt.V, opt.a, opt.m);
  const auto ledger = spectrum::well_ledger(opt.V, opt.a, opt.m);
  if (opt.format == "csv") {
    OutputRecord rec;
    rec.schema = "spectrum.v1";
    rec.columns = {"N", "parity", "E", "p"};
    for (const auto& s : states) {
      rec.rows.push_back(
          {s.index, parity_name(s.parity), s.energy, s.well_momentum});
    }
    output::write_csv(os, rec);
  } else {
    json j;
    j["schema"] = "spectrum.v1";
    j["m"] = opt.m;
    j["V"] = opt.V;
    j["a"] = opt.a;
    json arr = json::array();
    for (const auto& s : states) {
      json st;
      st["N"] = s.index;
      st["parity"] = parity_name(s.parity);
      st["E"] = s.energy;
      st["p"] = s.well_momentum;
      arr.push_back(st);
    }
    j["states"] = arr;
    j["ledger"] = ledger_json(ledger);
    os << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_adiabatic(const Options& opt, std::ostream& os) {
  const auto events =
      opt.delta_mode
          ? spectrum::delta_adiabatic_sweep(opt.lambda_max, opt.m)
          : spectrum::adiabatic_sweep(opt.a, opt.m, opt.v_max, opt.dv);
  const char* key = opt.delta_mode ? "lambda" : "V";
  if (opt.format == "csv") {
    OutputRecord rec;
    rec.schema = "adiabatic.v1";
    rec.columns = {key, "event", "parity", "N", "E", "Q_p", "Q_0", "Q_S"};
    for (const auto& ev : events) {
      rec.rows.push_back({ev.strength, event_name(ev.kind),
                          parity_name(ev.parity), ev.index, ev.energy,
                          ev.ledger.q_particle, ev.ledger.q_vacuum,
                          ev.ledger.q_supercritical});
    }
    output::write_csv(os, rec);
  } else {
    // JSON lines: one event object per line
    for (const auto& ev : events) {
      json j;
      j[key] = ev.strength;
      j["event"] = event_name(ev.kind);
      j["parity"] = parity_name(ev.parity);
      j["N"] = ev.index;
      j["E"] = ev.energy;
      j["ledger"] = ledger_json(ev.ledger);
      os << j.dump() << '\n';
    }
  }
  return 0;
}

int cmd_current(const Options& opt, std::ostream& os) {
  vacuum::CurrentReport report;
  if (opt.potential == "step") {
    report = vacuum::pair_current(opt.V, opt.m, opt.rel_tol);
  } else {
    report = vacuum::pair_current(load_profile(opt),
                                  std::max(opt.rel_tol, 1e-7));
  }
  json j;
  j["schema"] = "current.v1";
  j["m"] = opt.m;
  j["potential"] = opt.potential;
  j["j_vacuum"] = report.j_vacuum;
  j["j_L"] = report.j_left;
  j["j_R"] = report.j_right;
  j["E_min"] = report.e_min;
  j["E_max"] = report.e_max;
  j["quadrature_error"] = report.quadrature_error;
  j["subcritical"] = report.subcritical;
  OutputRecord rec;
  rec.schema = "current.v1";
  rec.columns = {"j_vacuum", "j_L", "j_R", "E_min", "E_max",
                 "quadrature_error", "subcritical"};
  rec.rows = {{report.j_vacuum, report.j_left, report.j_right, report.e_min,
               report.e_max, report.quadrature_error, report.subcritical}};
  emit_object(os, opt, j, rec);
  return 0;
}

int cmd_modes(const Options& opt, std::ostream& os) {
  const auto [mode_l, mode_r] = vacuum::klein_modes(opt.E, opt.V, opt.m);
  if (opt.x_steps < 2) throw input_error("modes needs --xsteps >= 2");
  OutputRecord rec;
  rec.schema = "modes.v1";
  rec.columns = {"x",
                 "uL_upper_re", "uL_upper_im", "uL_lower_re", "uL_lower_im",
                 "uR_upper_re", "uR_upper_im", "uR_lower_re", "uR_lower_im"};
  for (int i = 0; i < opt.x_steps; ++i) {
    const double x =
        opt.x_min + (opt.x_max - opt.x_min) * (double(i) / (opt.x_steps - 1));
    const Spinor ul = mode_l.evaluate(x);
    const Spinor ur = mode_r.evaluate(x);
    rec.rows.push_back({x, ul.upper.real(), ul.upper.imag(), ul.lower.real(),
                        ul.lower.imag(), ur.upper.real(), ur.upper.imag(),
                        ur.lower.real(), ur.lower.imag()});
  }
  if (opt.format == "csv") {
    output::write_csv(os, rec);
  } else {
    json doc;
    doc["schema"] = rec.schema;
    doc["kappa"] = mode_l.kappa;
    doc["j_L"] = vacuum::mode_current(mode_l, 0.5 * (opt.x_min + opt.x_max));
    doc["j_R"] = vacuum::mode_current(mode_r, 0.5 * (opt.x_min + opt.x_max));
    doc["columns"] = rec.columns;
    doc["rows"] = rec.rows;
    os << doc.dump(2) << '\n';
  }
  return 0;
}

int cmd_emission(const Options& opt, std::ostream& os) {
  const auto est = vacuum::emission_estimates(opt.V, opt.a, opt.m);
  json j;
  j["schema"] = "emission.v1";
  j["m"] = opt.m;
  j["V"] = opt.V;
  j["a"] = opt.a;
  j["Delta"] = est.excess;
  j["Q_S"] = est.q_supercritical;
  j["tau"] = est.lifetime;
  j["p_bar"] = est.mean_momentum;
  j["tau_bar"] = est.emission_time;
  j["E_N"] = est.emitted_energies;
  j["narrow_excess_valid"] = est.narrow_excess;
  OutputRecord rec;
  rec.schema = "emission.v1";
  rec.columns = {"N", "E_N"};
  for (std::size_t i = 0; i < est.emitted_energies.size(); ++i) {
    rec.rows.push_back({static_cast<int>(i) + 1, est.emitted_energies[i]});
  }
  emit_object(os, opt, j, rec);
  return 0;
}

int cmd_coulomb(const Options& opt, std::ostream& os) {
  analytic::CoulombRegime regime;
  if (opt.regime == "rel" || opt.regime == "relativistic") {
    regime = analytic::CoulombRegime::Relativistic;
  } else if (opt.regime == "nonrel" || opt.regime == "nonrelativistic") {
    regime = analytic::CoulombRegime::NonRelativistic;
  } else {
    throw input_error("--regime must be rel or nonrel");
  }
  const auto ratio = analytic::coulomb_penetration(
      opt.Z, regime, opt.E, opt.p, opt.f_prefactor, opt.alpha);
  json j;
  j["schema"] = "coulomb.v1";
  j["Z"] = ratio.Z;
  j["alpha"] = ratio.alpha;
  j["Z_alpha"] = ratio.Z * ratio.alpha;
  j["regime"] = opt.regime;
  j["rho"] = ratio.rho;
  j["f"] = ratio.f;
  OutputRecord rec;
  rec.schema = "coulomb.v1";
  rec.columns = {"Z", "alpha", "Z_alpha", "regime", "rho", "f"};
  rec.rows = {{ratio.Z, ratio.alpha, ratio.Z * ratio.alpha, opt.regime,
               ratio.rho, ratio.f}};
  emit_object(os, opt, j, rec);
  return 0;
}

int cmd_resonances(const Options& opt, std::ostream& os) {
  const auto energies = analytic::resonance_energies(opt.V, opt.a, opt.m);
  OutputRecord rec;
  rec.schema = "resonances.v1";
  rec.columns = {"N", "E"};
  for (std::size_t i = 0; i < energies.size(); ++i) {
    rec.rows.push_back({static_cast<int>(i) + 1, energies[i]});
  }
  if (opt.format == "csv") {
    output::write_csv(os, rec);
  } else {
    json j;
    j["schema"] = rec.schema;
    j["m"] = opt.m;
    j["V"] = opt.V;
    j["a"] = opt.a;
    j["E_N"] = energies;
    os << j.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"1D Dirac scattering, bound states, and vacuum currents"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--m", opt.m, "fermion mass (natural units)");
  app.add_option("--format", opt.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", opt.out_path, "write output to this file");

  auto add_potential = [&](CLI::App* cmd) {
    cmd->add_option("--potential", opt.potential,
                    "step|barrier|well|free|sauter or a potential file");
    cmd->add_option("--V", opt.V, "potential height / well depth");
    cmd->add_option("--a", opt.a, "half-width");
    cmd->add_option("--v", opt.slope, "sauter ramp slope (field strength)");
    cmd->add_option("--steps", opt.steps, "sauter staircase steps");
    cmd->add_option("--engine", opt.engine, "auto|analytic|numeric")
        ->check(CLI::IsMember({"auto", "analytic", "numeric"}));
  };

  CLI::App* scatter = app.add_subcommand("scatter", "single-point R/T");
  add_potential(scatter);
  scatter->add_option("--E", opt.E, "incident energy");

  CLI::App* sweep = app.add_subcommand("sweep", "R(E), T(E) table");
  add_potential(sweep);
  sweep->add_option("--emin", opt.e_min, "lowest energy");
  sweep->add_option("--emax", opt.e_max, "highest energy");
  sweep->add_option("--esteps", opt.e_steps, "number of grid points");

  CLI::App* spec_cmd = app.add_subcommand("spectrum", "bound states + ledger");
  spec_cmd->add_flag("--well", opt.well_mode, "square well of depth V");
  spec_cmd->add_flag("--delta", opt.delta_mode, "delta well of strength lambda");
  spec_cmd->add_option("--V", opt.V, "well depth");
  spec_cmd->add_option("--a", opt.a, "well half-width");
  spec_cmd->add_option("--lambda", opt.lambda, "delta-well strength");

  CLI::App* adiabatic = app.add_subcommand("adiabatic", "turn-on event log");
  adiabatic->add_flag("--well", opt.well_mode, "square well sweep");
  adiabatic->add_flag("--delta", opt.delta_mode, "delta well sweep");
  adiabatic->add_option("--a", opt.a, "well half-width");
  adiabatic->add_option("--vmax", opt.v_max, "final well depth");
  adiabatic->add_option("--dv", opt.dv, "sweep step");
  adiabatic->add_option("--lambda-max", opt.lambda_max, "final delta strength");

  CLI::App* current = app.add_subcommand("current", "pair-production current");
  add_potential(current);
  current->add_option("--rel-tol", opt.rel_tol, "quadrature tolerance");

  CLI::App* modes = app.add_subcommand("modes", "Klein-zone mode table");
  modes->add_option("--V", opt.V, "step height");
  modes->add_option("--E", opt.E, "energy in the Klein zone");
  modes->add_option("--xmin", opt.x_min, "grid start");
  modes->add_option("--xmax", opt.x_max, "grid end");
  modes->add_option("--xsteps", opt.x_steps, "grid points");

  CLI::App* emission = app.add_subcommand("emission", "emission estimates");
  emission->add_option("--V", opt.V, "well depth (V > 2m)");
  emission->add_option("--a", opt.a, "well half-width");

  CLI::App* coulomb = app.add_subcommand("coulomb", "penetration ratio");
  coulomb->add_option("--Z", opt.Z, "nuclear charge");
  coulomb->add_option("--alpha", opt.alpha, "fine-structure constant");
  coulomb->add_option("--regime", opt.regime, "rel or nonrel");
  coulomb->add_option("--E", opt.E, "energy (nonrel regime)");
  coulomb->add_option("--p", opt.p, "momentum (nonrel regime)");
  coulomb->add_option("--f-prefactor", opt.f_prefactor,
                      "gamma-function prefactor (rel regime)");

  CLI::App* resonances =
      app.add_subcommand("resonances", "barrier transmission resonances");
  resonances->add_option("--V", opt.V, "barrier height");
  resonances->add_option("--a", opt.a, "barrier half-width");

  // global flags (--m, --format, --out) may appear after the subcommand
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("dirac1d");
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::ofstream file_out;
  std::ostream* sink = &out;
  if (!opt.out_path.empty()) {
    file_out.open(opt.out_path, std::ios::binary);
    if (!file_out) {
      err << "error: cannot open output file '" << opt.out_path << "'\n";
      return 2;
    }
    sink = &file_out;
  }

  try {
    if (scatter->parsed()) return cmd_scatter(opt, *sink);
    if (sweep->parsed()) return cmd_sweep(opt, *sink, err);
    if (spec_cmd->parsed()) return cmd_spectrum(opt, *sink);
    if (adiabatic->parsed()) return cmd_adiabatic(opt, *sink);
    if (current->parsed()) return cmd_current(opt, *sink);
    if (modes->parsed()) return cmd_modes(opt, *sink);
    if (emission->parsed()) return cmd_emission(opt, *sink);
    if (coulomb->parsed()) return cmd_coulomb(opt, *sink);
    if (resonances->parsed()) return cmd_resonances(opt, *sink);
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand given\n";
  return 2;
}

}  // namespace dirac1d::cli
