#include "mch/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mch/errors.hpp"
#include "mch/evolution.hpp"
#include "mch/fft.hpp"
#include "mch/hessian.hpp"
#include "mch/io.hpp"
#include "mch/parallel.hpp"
#include "mch/spectral.hpp"

namespace mch::cli {

namespace {

using nlohmann::ordered_json;

struct CommonOpts {
  double kappa = 1.0, c1 = 5.0, c2 = 4.0;
  double y10 = 0.0, y20 = 0.0, d = 0.0;
  double t = 0.0;
  std::size_t n = 8192;
  double half_width = 0.0;  // 0 = default 60/k2
  std::string out = ".";
  std::string format = "json";
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--kappa", o.kappa, "background level");
  cmd->add_option("--c1", o.c1, "fast soliton speed");
  cmd->add_option("--c2", o.c2, "slow soliton speed");
  cmd->add_option("--y10", o.y10, "fast soliton phase");
  cmd->add_option("--y20", o.y20, "slow soliton phase");
  cmd->add_option("--d", o.d, "x-parametrization offset");
  cmd->add_option("--t", o.t, "evaluation time");
  cmd->add_option("--n", o.n, "grid points (power of two for spectral ops)");
  cmd->add_option("--half-width", o.half_width,
                  "domain half-width (default 60/k2)");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--format", o.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--jobs", o.jobs, "max worker threads (0 = all cores)");
}

std::string out_dir(const CommonOpts& o) {
  const char* env = std::getenv("MCHLAB_OUT");
  std::string dir = env != nullptr && *env != '\0' ? env : o.out;
  std::filesystem::create_directories(dir);
  return dir;
}

ordered_json params_json(const SolitonParams& p) {
  ordered_json j;
  j["kappa"] = p.kappa;
  j["c1"] = p.c1;
  j["c2"] = p.c2;
  j["y10"] = p.y10;
  j["y20"] = p.y20;
  j["d"] = p.d;
  j["k1"] = p.k1;
  j["k2"] = p.k2;
  j["ctilde1"] = p.ctilde1;
  j["ctilde2"] = p.ctilde2;
  j["psi1"] = p.psi1;
  j["psi2"] = p.psi2;
  j["exp_2h"] = std::exp(p.two_h);
  return j;
}

void write_report(const CommonOpts& o, const ordered_json& j,
                  const std::string& name = "report") {
  const std::string dir = out_dir(o);
  if (o.format == "csv") {
    // flat key,value rendering for spreadsheet-style consumption
    std::string csv = "key,value\n";
    const std::function<void(const std::string&, const ordered_json&)> walk =
        [&](const std::string& prefix, const ordered_json& v) {
          if (v.is_object()) {
            for (auto it = v.begin(); it != v.end(); ++it)
              walk(prefix.empty() ? it.key() : prefix + "." + it.key(),
                   it.value());
          } else if (v.is_array()) {
            for (std::size_t i = 0; i < v.size(); ++i)
              walk(prefix + "[" + std::to_string(i) + "]", v[i]);
          } else if (v.is_number_float()) {
            csv += prefix + "," + float17(v.get<double>()) + "\n";
          } else {
            csv += prefix + "," + v.dump() + "\n";
          }
        };
    walk("", j);
    write_text_file(dir + "/" + name + ".csv", csv);
  } else {
    write_text_file(dir + "/" + name + ".json", to_json_text(j));
  }
}

GridField standard_field(const SolitonParams& p, const CommonOpts& o,
                         bool periodic) {
  const double hw = o.half_width > 0.0 ? o.half_width : 60.0 / p.k2;
  const TauSystem sys = two_soliton_system(p);
  double xc, mv;
  curve_point_values(sys, o.t, soliton_center_y(p, o.t, 2), xc, mv);
  const auto curve = eval_curve(
      sys, o.t, y_grid_covering_x(sys, o.t, xc - hw, xc + hw, 4 * o.n));
  const double h = 2.0 * hw / static_cast<double>(o.n);
  ResampleOptions opts;
  opts.deriv_order = 4;
  opts.periodic = periodic;
  return resample(curve, xc - hw, h, o.n, opts);
}

int cmd_build(const CommonOpts& o) {
  const SolitonParams p = build_params(o.kappa, o.c1, o.c2, o.y10, o.y20, o.d);
  ordered_json j;
  j["params"] = params_json(p);
  const PhaseShift shift = collision_phase_shift(p);
  j["phase_shift"] = {{"delta1_plus", shift.xi_shift},
                      {"x_shift_prediction", shift.x_shift_prediction}};
  const std::string dir = out_dir(o);
  write_text_file(dir + "/report.json", to_json_text(j));
  if (o.format == "csv") write_field_csv(dir + "/field.csv", standard_field(p, o, false));
  return 0;
}

int cmd_conserved(const CommonOpts& o) {
  const SolitonParams p = build_params(o.kappa, o.c1, o.c2, o.y10, o.y20, o.d);
  const GridField field = standard_field(p, o, false);
  const ConservedReport rep = conserved_report(field);
  const auto [f1c, f2c] = two_soliton_invariants(o.c1, o.c2, o.kappa);

  ordered_json j;
  j["E1"] = rep.E1;
  j["E2"] = rep.E2;
  j["E3"] = rep.E3;
  j["E4"] = rep.E4;
  j["F1"] = rep.F1;
  j["F2"] = rep.F2;
  j["F3"] = rep.F3;
  ordered_json res;
  res["recombination_F1"] = std::abs(rep.F1 - (rep.E2 + rep.E1 / (p.kappa * p.kappa)));
  res["recombination_F2"] =
      std::abs(rep.F2 - (rep.E3 + 0.75 * rep.E1 / std::pow(p.kappa, 4)));
  res["recombination_F3"] =
      std::abs(rep.F3 - (rep.E4 + 5.0 / 16.0 * rep.E1 / std::pow(p.kappa, 6)));
  res["closed_form_F1"] = std::abs(rep.F1 - f1c);
  res["closed_form_F2"] = std::abs(rep.F2 - f2c);
  ordered_json qerr = ordered_json::array();
  for (double e : rep.quadrature_error) qerr.push_back(e);
  res["quadrature_error"] = qerr;
  j["residuals"] = res;
  write_report(o, j);
  return 0;
}

int cmd_criticality(const CommonOpts& o) {
  const SolitonParams p = build_params(o.kappa, o.c1, o.c2, o.y10, o.y20, o.d);
  const GridField field = standard_field(p, o, false);
  const LagrangePair l = lagrange_multipliers(o.c1, o.c2, o.kappa);
  ordered_json j;
  j["lambda1"] = l.lambda1;
  j["lambda2"] = l.lambda2;
  j["max_abs_G"] = criticality_residual(field, l);
  j["n"] = o.n;
  j["t"] = o.t;
  write_report(o, j);
  return 0;
}

int cmd_spectrum(const CommonOpts& o, int count) {
  const SolitonParams p = build_params(o.kappa, o.c1, o.c2, o.y10, o.y20, o.d);
  const GridField field = spectral_mu_field(p, o.t, o.n, o.half_width);
  const LagrangePair l = lagrange_multipliers(o.c1, o.c2, o.kappa);
  const SelfAdjointOperator op = assemble_L(field, l);
  const SpectrumReport rep =
      bottom_spectrum(op, count, essential_edge(o.c1, o.c2, o.kappa));
  ordered_json j;
  ordered_json evs = ordered_json::array();
  for (double v : rep.lowest) evs.push_back(v);
  j["eigenvalues"] = evs;
  j["n_negative"] = rep.n_negative;
  j["n_kernel"] = rep.n_kernel;
  j["essential_edge"] = rep.essential_edge;
  j["tol"] = rep.tol;
  j["grid"] = {{"x0", rep.x0}, {"h", rep.h}, {"n", rep.n}};
  write_report(o, j);
  return 0;
}

int cmd_hessian(const CommonOpts& o) {
  const HessianReport rep = hessian_M(o.c1, o.c2, o.kappa);
  ordered_json j;
  j["M"] = {{rep.M[0][0], rep.M[0][1]}, {rep.M[1][0], rep.M[1][1]}};
  j["det_numeric"] = rep.det_numeric;
  j["det_closed_form"] = rep.det_closed_form;
  j["eigenvalues"] = {rep.eigenvalues[0], rep.eigenvalues[1]};
  j["inertia"] = {rep.n_plus, rep.n_minus};
  write_report(o, j);
  return 0;
}

ordered_json drift_json(const DriftReport& d) {
  ordered_json j;
  const char* names[7] = {"E1", "E2", "E3", "E4", "F1", "F2", "F3"};
  for (int q = 0; q < 7; ++q) j[names[q]] = d.drift[q];
  return j;
}

ordered_json config_json(const EvolutionConfig& c) {
  ordered_json j;
  j["dt"] = c.dt;
  j["t_end"] = c.t_end;
  j["sample_interval"] = c.sample_interval;
  j["dealias"] = c.dealias;
  return j;
}

int status_code(RunStatus s) { return s == RunStatus::ok ? 0 : 3; }

int cmd_evolve(const CommonOpts& o, EvolutionConfig cfg, bool orbital,
               int snapshot_stride) {
  const SolitonParams p = build_params(o.kappa, o.c1, o.c2, o.y10, o.y20, o.d);
  const double hw = o.half_width > 0.0 ? o.half_width : 60.0 / p.k2;
  const TauSystem sys = two_soliton_system(p);
  double xc1, xc2, mv;
  curve_point_values(sys, o.t, soliton_center_y(p, o.t, 1), xc1, mv);
  curve_point_values(sys, o.t, soliton_center_y(p, o.t, 2), xc2, mv);
  const double h = 2.0 * hw / static_cast<double>(o.n);
  const double x0 = 0.5 * (xc1 + xc2) - hw;
  const GridField m0 = orbital_reference_field(p, o.t, x0, h, o.n);

  const Trajectory traj = evolve(m0, cfg);
  ordered_json j;
  j["config"] = config_json(cfg);
  j["config"]["dt_used"] = traj.dt_used;
  j["params"] = params_json(p);
  j["status"] = traj.status == RunStatus::ok
                    ? "ok"
                    : (traj.status == RunStatus::positivity_lost
                           ? "positivity_lost"
                           : "blow_up");
  if (traj.status != RunStatus::ok) j["t_fail"] = traj.t_fail;
  j["drift"] = drift_json(conservation_drift(traj));
  ordered_json series = ordered_json::array();
  for (const auto& s : traj.samples) {
    ordered_json row;
    row["t"] = s.t;
    row["min_m"] = s.min_m;
    if (orbital) {
      const OrbitalFit fit = orbital_distance(s.field, p, o.t + s.t);
      row["distance"] = fit.distance;
      row["y10_fit"] = fit.y10_fit;
      row["y20_fit"] = fit.y20_fit;
    }
    series.push_back(row);
  }
  j["samples"] = series;
  const std::string dir = out_dir(o);
  write_text_file(dir + "/manifest.json", to_json_text(j));
  if (snapshot_stride > 0) {
    for (std::size_t i = 0; i < traj.samples.size();
         i += static_cast<std::size_t>(snapshot_stride)) {
      char name[64];
      std::snprintf(name, sizeof(name), "/field_%05zu.csv", i);
      write_field_csv(dir + name, traj.samples[i].field);
    }
  }
  return status_code(traj.status);
}

int cmd_collide(const CommonOpts& o, EvolutionConfig cfg) {
  SolitonParams p = build_params(o.kappa, o.c1, o.c2, o.y10, o.y20, o.d);
  const CollisionReport rep = collision_experiment(p, cfg);
  ordered_json j;
  j["config"] = config_json(cfg);
  j["params"] = params_json(p);
  j["amplitudes"] = {{"fast_measured", rep.amp_fast_measured},
                     {"fast_expected", rep.amp_fast_expected},
                     {"slow_measured", rep.amp_slow_measured},
                     {"slow_expected", rep.amp_slow_expected}};
  j["shifts"] = {{"fast_measured", rep.shift_fast_measured},
                 {"fast_predicted", rep.shift_fast_predicted},
                 {"slow_measured", rep.shift_slow_measured},
                 {"slow_predicted", rep.shift_slow_predicted}};
  j["ordering_restored"] = rep.ordering_restored;
  j["drift"] = drift_json(rep.drift);
  write_report(o, j);
  return status_code(rep.status);
}

int cmd_stability(const CommonOpts& o, EvolutionConfig cfg,
                  std::vector<double> deltas) {
  SolitonParams p = build_params(o.kappa, o.c1, o.c2, o.y10, o.y20, o.d);
  PerturbationSpec pert;
  if (!deltas.empty()) pert.deltas = std::move(deltas);
  const StabilityReport rep = stability_experiment(p, pert, cfg);
  ordered_json j;
  j["config"] = config_json(cfg);
  j["params"] = params_json(p);
  ordered_json runs = ordered_json::array();
  int code = 0;
  for (const auto& run : rep.runs) {
    ordered_json r;
    r["delta"] = run.delta;
    r["sup_distance"] = run.sup_distance;
    r["amplification"] = run.amplification;
    r["status"] = run.status == RunStatus::ok ? "ok" : "failed";
    ordered_json times = ordered_json::array(), dists = ordered_json::array();
    for (double v : run.times) times.push_back(v);
    for (double v : run.distances) dists.push_back(v);
    r["t"] = times;
    r["distance"] = dists;
    runs.push_back(r);
    code = std::max(code, status_code(run.status));
  }
  j["runs"] = runs;
  j["amplification_ratio"] = rep.amp_ratio;
  write_report(o, j);
  return code;
}

// --config file.json provides defaults that explicit flags override: the
// file is applied to the option defaults before parsing.
void load_config_defaults(int argc, const char* const* argv, CommonOpts& o,
                          EvolutionConfig& cfg, int& count,
                          std::vector<double>& deltas) {
  std::string path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") path = argv[i + 1];
  if (path.empty()) return;
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open config: " + path);
  nlohmann::json j = nlohmann::json::parse(f, nullptr, true, true);
  auto num = [&](const char* key, double& slot) {
    if (j.contains(key)) slot = j[key].get<double>();
  };
  num("kappa", o.kappa);
  num("c1", o.c1);
  num("c2", o.c2);
  num("y10", o.y10);
  num("y20", o.y20);
  num("d", o.d);
  num("t", o.t);
  num("half-width", o.half_width);
  num("dt", cfg.dt);
  num("t-end", cfg.t_end);
  num("sample-interval", cfg.sample_interval);
  if (j.contains("n")) o.n = j["n"].get<std::size_t>();
  if (j.contains("count")) count = j["count"].get<int>();
  if (j.contains("jobs")) o.jobs = j["jobs"].get<int>();
  if (j.contains("out")) o.out = j["out"].get<std::string>();
  if (j.contains("format")) o.format = j["format"].get<std::string>();
  if (j.contains("delta")) deltas = j["delta"].get<std::vector<double>>();
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"mchlab: numerical laboratory for 2-soliton stability of the "
               "modified Camassa-Holm equation"};
  app.require_subcommand(1);

  CommonOpts o;
  EvolutionConfig cfg;
  int count = 8;
  bool orbital = false;
  int snapshot_stride = 0;
  std::vector<double> deltas;
  std::string config_path;
  try {
    load_config_defaults(argc, argv, o, cfg, count, deltas);
  } catch (const std::exception& e) {
    std::cerr << "mchlab: " << e.what() << "\n";
    return 2;
  }
  app.add_option("--config", config_path, "JSON file with flag defaults");

  auto* c_build = app.add_subcommand("build", "derived soliton constants");
  auto* c_cons = app.add_subcommand("conserved", "conserved integrals E1..E4, F1..F3");
  auto* c_crit = app.add_subcommand("criticality", "variational gradient residual");
  auto* c_spec = app.add_subcommand("spectrum", "bottom spectrum of the second variation");
  auto* c_hess = app.add_subcommand("hessian", "constrained-problem Hessian M");
  auto* c_evol = app.add_subcommand("evolve", "evolve the exact 2-soliton");
  auto* c_coll = app.add_subcommand("collide", "collision experiment");
  auto* c_stab = app.add_subcommand("stability", "perturbed-evolution stability experiment");
  for (auto* sub : {c_build, c_cons, c_crit, c_spec, c_hess, c_evol, c_coll, c_stab}) {
    add_common(sub, o);
    sub->add_option("--config", config_path, "JSON file with flag defaults");
  }
  c_spec->add_option("--count", count, "number of eigenvalues to report");
  for (auto* sub : {c_evol, c_coll, c_stab}) {
    sub->add_option("--dt", cfg.dt, "time step (0 = auto)");
    sub->add_option("--t-end", cfg.t_end, "final time");
    sub->add_option("--sample-interval", cfg.sample_interval,
                    "time between retained samples");
    sub->add_option("--positivity-floor", cfg.positivity_floor,
                    "abort when min m falls below this (0 = 1e-10*kappa)");
  }
  c_evol->add_flag("--orbital", orbital, "fit orbital distance per sample");
  c_evol->add_option("--snapshot-stride", snapshot_stride,
                     "write every k-th sample as CSV (0 = none)");
  c_stab->add_option("--delta", deltas, "perturbation sizes in H2");

  try {
    app.parse(argc, argv);
    set_max_threads(o.jobs);
    if (c_build->parsed()) return cmd_build(o);
    if (c_cons->parsed()) return cmd_conserved(o);
    if (c_crit->parsed()) return cmd_criticality(o);
    if (c_spec->parsed()) return cmd_spectrum(o, count);
    if (c_hess->parsed()) return cmd_hessian(o);
    if (c_evol->parsed()) return cmd_evolve(o, cfg, orbital, snapshot_stride);
    if (c_coll->parsed()) return cmd_collide(o, cfg);
    if (c_stab->parsed()) return cmd_stability(o, cfg, deltas);
    std::cerr << "mchlab: no subcommand\n";
    return 2;
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "mchlab: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "mchlab: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "mchlab: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "mchlab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mchlab: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace mch::cli
