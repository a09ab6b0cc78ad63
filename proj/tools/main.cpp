// Command-line front end for the collapse-strength / heating / exclusion pipeline.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cslbound/beam.hpp"
#include "cslbound/collapse_strength.hpp"
#include "cslbound/config.hpp"
#include "cslbound/dataset.hpp"
#include "cslbound/device.hpp"
#include "cslbound/errors.hpp"
#include "cslbound/exclusion.hpp"
#include "cslbound/heating.hpp"
#include "cslbound/io.hpp"
#include "cslbound/kspace_oracle.hpp"
#include "cslbound/langevin.hpp"
#include "cslbound/spectrum.hpp"
#include "cslbound/stats.hpp"
#include "cslbound/svg_plot.hpp"
#include "cslbound/units.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace cslbound;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitNumerical = 2;

struct Common {
  std::string config_path;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
};

RunConfig load_config(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_run_config(c.config_path);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

/// JSON to the file (atomically) or to stdout.
void emit_json(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    atomic_write(path, text);
  }
}

void emit_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    atomic_write(path, text);
  }
}

std::optional<double> opt_quantity(const std::string& text, Dimension d) {
  if (text.empty()) return std::nullopt;
  return parse_quantity(text, d);
}

json strength_json(const CollapseStrength& s) {
  return {{"eta_total_per_m2_s", s.eta_total},
          {"eta_sphere_per_m2_s", s.eta_sphere},
          {"eta_cuboid_per_m2_s", s.eta_cuboid},
          {"eta_mix_per_m2_s", s.eta_mix}};
}

json geometry_json(const ResonatorGeometry& g) {
  return {{"R1_m", g.R1}, {"R2_m", g.R2}, {"R3_m", g.R3}, {"R_m", g.R},
          {"rho_c_kg_per_m3", g.rho_c}, {"rho_s_kg_per_m3", g.rho_s}, {"sphere_gap_m", g.sphere_gap}};
}

json oscillator_json(const OscillatorParams& o) {
  return {{"mass_kg", o.m}, {"f0_hz", o.f0()}, {"Q", o.Q}, {"T_bath_K", o.T_bath}};
}

json curve_json(const ExclusionCurve& c) {
  json r = json::array(), l = json::array();
  for (Eigen::Index i = 0; i < c.r_C_grid.size(); ++i) {
    r.push_back(c.r_C_grid[i]);
    l.push_back(c.lambda_upper[i]);
  }
  return {{"label", c.label}, {"provenance", std::string(to_string(c.provenance))}, {"r_C_m", r},
          {"lambda_up_per_s", l}};
}

std::string curve_csv(const ExclusionCurve& c) {
  std::vector<std::vector<double>> rows;
  for (Eigen::Index i = 0; i < c.r_C_grid.size(); ++i) rows.push_back({c.r_C_grid[i], c.lambda_upper[i]});
  return format_csv(kCurveHeader, rows);
}

json linear_json(const LinearFitResult& f) {
  json j = {{"alpha", f.alpha}, {"T0_K", f.T0}, {"sigma_T0_K", f.sigma_T0}};
  if (f.sigma_alpha) {
    j["sigma_alpha"] = *f.sigma_alpha;
    j["cov_alpha_T0_K"] = f.cov_alpha_T0;
  } else {
    j["sigma_alpha"] = nullptr;
  }
  j["chi2_reduced"] = f.chi2_reduced;
  j["n_points"] = f.n_points;
  j["dof"] = f.dof;
  return j;
}

json fc_json(const FcLimit& f) {
  return {{"measured_K", f.measured}, {"sigma_K", f.sigma}, {"confidence", f.confidence},
          {"upper_limit_K", f.upper_limit}, {"lower_limit_K", f.lower_limit}};
}

// --- subcommands -----------------------------------------------------------

struct EtaArgs {
  std::string r_C, lambda, output;
  bool oracle = false;
};

int run_eta(const Common& common, const EtaArgs& a) {
  const RunConfig cfg = load_config(common);
  const ResolvedDevice dev = resolve_device(cfg);
  const CslParameters params{opt_quantity(a.lambda, Dimension::rate).value_or(cfg.lambda),
                             opt_quantity(a.r_C, Dimension::length).value_or(cfg.r_C)};
  const CollapseStrength s = eta_total(dev.geometry, params);
  json j = {{"lambda_per_s", params.lambda}, {"r_C_m", params.r_C}};
  j.update(strength_json(s));
  j["delta_T_K"] = delta_T_csl(dev.oscillator, s.eta_total);
  if (a.oracle) j["kspace_oracle"] = strength_json(eta_kspace_oracle(dev.geometry, params));
  j["geometry"] = geometry_json(dev.geometry);
  j["oscillator"] = oscillator_json(dev.oscillator);
  emit_json(j, a.output);
  return kExitOk;
}

struct ModeshapeArgs {
  int points = 101;
  std::string output = "modeshape.csv";
};

int run_modeshape(const Common& common, const ModeshapeArgs& a) {
  const RunConfig cfg = load_config(common);
  if (cfg.geometry) throw ConfigError("modeshape needs a 'device' section, not an explicit geometry");
  if (a.points < 2) throw DomainError("--points must be at least 2");
  CantileverSpec spec = cfg.device.cantilever;
  spec.tip_mass = cfg.device.sphere.mass();
  const ModeModel mode = solve_fundamental_mode(spec);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < a.points; ++i) {
    const double x = spec.L * i / (a.points - 1.0);
    rows.push_back({x, mode.shape(x)});
  }
  emit_text(format_csv("# x_m,A", rows), a.output);
  const json j = {{"beta_eff", mode.beta_eff},
                  {"kL", mode.kL},
                  {"mass_ratio", spec.tip_mass / spec.beam_mass()},
                  {"R1_m", rigid_reduction(mode, spec).R1},
                  {"m_effective_kg", mode.m_effective},
                  {"motional_mass_kg", total_motional_mass(mode, spec, cfg.device.sphere)}};
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

struct HeatingArgs {
  std::string output = "heating.csv";
  std::string lambda;
  int points = 0;
};

int run_heating(const Common& common, const HeatingArgs& a) {
  const RunConfig cfg = load_config(common);
  const ResolvedDevice dev = resolve_device(cfg);
  const double lambda = opt_quantity(a.lambda, Dimension::rate).value_or(cfg.lambda);
  const int n = a.points > 0 ? a.points : cfg.grid.points;
  const Eigen::ArrayXd grid = log_grid(cfg.grid.min, cfg.grid.max, n);
  const auto rows = heating_scan(dev.geometry, dev.oscillator, lambda, grid, {}, common.threads);
  std::vector<std::vector<double>> table;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    table.push_back({r.r_C, r.eta.eta_total, r.eta.eta_sphere, r.eta.eta_cuboid, r.eta.eta_mix, r.delta_T});
    if (r.delta_T > rows[peak].delta_T) peak = i;
  }
  emit_text(format_csv("# r_C,eta_total,eta_s,eta_c,eta_mix,deltaT_K", table), a.output);
  if (!a.output.empty() && a.output != "-") {
    const json j = {{"lambda_per_s", lambda},
                    {"grid_peak_r_C_m", rows[peak].r_C},
                    {"peak_delta_T_K", rows[peak].delta_T},
                    {"rows", rows.size()}};
    std::cout << j.dump(2) << "\n";
  }
  return kExitOk;
}

struct FitSpectrumArgs {
  std::string input, output;
  int averages = 20;
  double scale = 1.0;
};

int run_fit_spectrum(const Common& common, const FitSpectrumArgs& a) {
  const RunConfig cfg = load_config(common);
  const ResolvedDevice dev = resolve_device(cfg);
  const SpectrumRecord spec = load_spectrum_csv(a.input, a.averages, a.scale);
  const LorentzianFit fit = fit_lorentzian(spec, {}, &dev.oscillator);
  json cov = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int k = 0; k < 4; ++k) row.push_back(fit.covariance(i, k));
    cov.push_back(row);
  }
  const json j = {{"f0_fit_hz", fit.f0_fit},
                  {"gamma_fit_per_s", fit.gamma_fit},
                  {"area_m2", fit.area},
                  {"white_floor_m2_per_hz", fit.white_floor},
                  {"covariance_order", {"f0_hz", "gamma_per_s", "area_m2", "floor_m2_per_hz"}},
                  {"covariance", cov},
                  {"T_m_K", fit.T_m},
                  {"sigma_T_m_K", fit.sigma_T_m},
                  {"chi2_reduced", fit.chi2_reduced},
                  {"iterations", fit.iterations},
                  {"n_bins", spec.freqs.size()},
                  {"n_averages", spec.n_averages},
                  {"oscillator", oscillator_json(dev.oscillator)}};
  emit_json(j, a.output);
  return kExitOk;
}

struct FitLinearArgs {
  std::string input, output, cut_low;
  double fixed_slope = 1.0;
};

int run_fit_linear(const Common& common, const FitLinearArgs& a) {
  const RunConfig cfg = load_config(common);
  const double cut = opt_quantity(a.cut_low, Dimension::temperature).value_or(cfg.cut_low);
  const TemperatureSeries series = load_temperature_csv(a.input, cut);
  const LinearFitResult fixed = linear_fit(series, a.fixed_slope);
  const LinearFitResult free = linear_fit(series);
  const FcLimit fc = feldman_cousins_upper_limit(fixed.T0, fixed.sigma_T0, cfg.confidence);
  const json j = {{"cut_low_K", cut},
                  {"points_total", series.points.size()},
                  {"fixed_slope", linear_json(fixed)},
                  {"free_slope", linear_json(free)},
                  {"feldman_cousins", fc_json(fc)}};
  emit_json(j, a.output);
  return kExitOk;
}

struct FcArgs {
  std::string measured, sigma, output;
  double cl = 0.95;
};

int run_fc_limit(const Common&, const FcArgs& a) {
  const FcLimit fc = feldman_cousins_upper_limit(parse_quantity(a.measured, Dimension::temperature),
                                                 parse_quantity(a.sigma, Dimension::temperature), a.cl);
  emit_json(fc_json(fc), a.output);
  return kExitOk;
}

struct ExclusionArgs {
  std::string output_dir = "exclusion";
  std::string deltaT_max;
};

int run_exclusion(const Common& common, const ExclusionArgs& a) {
  const RunConfig cfg = load_config(common);
  const ResolvedDevice dev = resolve_device(cfg);
  const double dT = opt_quantity(a.deltaT_max, Dimension::temperature).value_or(cfg.deltaT_max);
  const Eigen::ArrayXd grid = log_grid(cfg.grid.min, cfg.grid.max, cfg.grid.points);

  std::vector<ExclusionCurve> curves;
  curves.push_back(lambda_upper_curve(dev.geometry, dev.oscillator, dT, grid, "this_experiment", {}, common.threads));
  if (cfg.xray_anchor_lambda) curves.push_back(xray_bound_curve(*cfg.xray_anchor_lambda, cfg.xray_anchor_rC, grid));
  if (cfg.forecast) curves.push_back(forecast_curve(cfg.upgrade, cfg.deltaT_detectable, grid, "forecast", common.threads));
  const ExclusionReport report = assemble_exclusion_report(curves, reference_parameter_points());

  const fs::path dir(a.output_dir);
  json files = json::array();
  for (const auto& c : report.curves) {
    const fs::path p = dir / (c.label + ".csv");
    atomic_write(p, curve_csv(c));
    files.push_back(p.string());
  }
  json points = json::array();
  for (const auto& p : report.points)
    points.push_back({{"name", p.name}, {"r_C_m", p.params.r_C}, {"lambda_per_s", p.params.lambda},
                      {"lambda_low_per_s", p.lambda_low}, {"lambda_high_per_s", p.lambda_high}, {"is_bar", p.is_bar}});
  json bars = json::array();
  for (const auto& b : report.bars)
    bars.push_back({{"name", b.name}, {"r_C_m", b.r_C}, {"lambda_up_per_s", b.lambda_up},
                    {"excluded_fraction", b.excluded_fraction}, {"fully_excluded", b.fully_excluded}});
  json curves_json = json::array();
  for (const auto& c : report.curves) curves_json.push_back(curve_json(c));

  json j = {{"deltaT_max_K", dT},
            {"geometry", geometry_json(dev.geometry)},
            {"oscillator", oscillator_json(dev.oscillator)},
            {"adler_threshold_r_C_m", report.adler_threshold_rC ? json(*report.adler_threshold_rC) : json(nullptr)},
            {"adler_bars", bars},
            {"points", points},
            {"curves", curves_json}};
  if (!cfg.xray_anchor_lambda) j["notes"] = json::array({"X-ray curve omitted: exclusion.xray_anchor.lambda not set"});
  atomic_write(dir / "report.json", j.dump(2) + "\n");
  atomic_write(dir / "exclusion.svg", render_exclusion_svg(report));
  files.push_back((dir / "report.json").string());
  files.push_back((dir / "exclusion.svg").string());
  std::cout << json({{"written", files}}).dump(2) << "\n";
  return kExitOk;
}

struct SimulateArgs {
  std::string output, psd;
  long steps = 0;
  int trajectories = 0;
};

int run_simulate(const Common& common, const SimulateArgs& a) {
  const RunConfig cfg = load_config(common);
  const ResolvedDevice dev = resolve_device(cfg);
  SimulationSpec spec;
  // A high-Q device needs ~Q/omega0 seconds per linewidth, so unless the
  // simulation section names an oscillator a small test-scale one is used.
  const bool use_device = cfg.sim_f0 || cfg.sim_Q || cfg.sim_mass;
  spec.osc = use_device ? dev.oscillator : OscillatorParams{1e-12, 2.0 * kPi * 1e3, 20.0, 0.0};
  if (cfg.sim_f0) spec.osc.omega0 = 2.0 * kPi * *cfg.sim_f0;
  if (cfg.sim_Q) spec.osc.Q = *cfg.sim_Q;
  if (cfg.sim_mass) spec.osc.m = *cfg.sim_mass;
  spec.osc.T_bath = cfg.sim_T_bath;
  spec.osc.validate();
  // Default collapse strength: Delta T_CSL equal to the bath temperature.
  spec.eta = cfg.sim_eta.value_or(spec.osc.T_bath * 2.0 * kConstants.k_B * spec.osc.m * spec.osc.omega0 /
                                  (kConstants.hbar * kConstants.hbar * spec.osc.Q));
  spec.dt = cfg.sim_dt.value_or(1.0 / (200.0 * spec.osc.f0()));
  spec.n_steps = a.steps > 0 ? a.steps : cfg.sim_steps;
  spec.n_trajectories = a.trajectories > 0 ? a.trajectories : cfg.sim_trajectories;
  spec.burn_in = cfg.sim_burn_in.value_or(5.0 * spec.osc.Q / spec.osc.omega0);
  spec.welch_segment = a.psd.empty() ? 0 : cfg.sim_welch_segment;
  spec.seed = cfg.seed;

  const SimulationStats stats = simulate(spec, common.threads);
  const EffectiveTemperature te = effective_temperature(stats);
  const double predicted = spec.osc.T_bath + delta_T_csl(spec.osc, spec.eta);
  json j = {{"eta_per_m2_s", spec.eta},
            {"dt_s", spec.dt},
            {"steps", spec.n_steps},
            {"trajectories", spec.n_trajectories},
            {"burn_in_s", spec.burn_in},
            {"seed", spec.seed},
            {"oscillator", oscillator_json(spec.osc)},
            {"mean_energy_J", stats.mean_energy},
            {"energy_sem_J", stats.energy_sem},
            {"T_eff_K", te.T_eff},
            {"sigma_T_eff_K", te.sigma},
            {"predicted_T_K", predicted},
            {"mean_q2_m2", stats.mean_q2},
            {"predicted_q2_m2", position_variance(spec.osc, spec.eta)},
            {"mean_p2", stats.mean_p2}};
  if (!a.psd.empty()) {
    atomic_write(a.psd, format_spectrum_csv(stats.psd));
    j["psd_segments"] = stats.psd.n_averages;
  }
  emit_json(j, a.output);
  return kExitOk;
}

struct SynthSpectrumArgs {
  std::string output, floor, T;
  int averages = 20;
  double span = 40.0;
  double df = 0.02;
};

int run_synth_spectrum(const Common& common, const SynthSpectrumArgs& a) {
  const RunConfig cfg = load_config(common);
  ResolvedDevice dev = resolve_device(cfg);
  if (auto T = opt_quantity(a.T, Dimension::temperature)) dev.oscillator.T_bath = *T;
  SynthesisOptions opt;
  opt.floor = opt_quantity(a.floor, Dimension::displacement_psd).value_or(0.0);
  opt.df = a.df;
  opt.n_averages = a.averages;
  opt.span_linewidths = a.span;
  opt.seed = cfg.seed;
  const double eta = eta_total(dev.geometry, {cfg.lambda, cfg.r_C}).eta_total;
  emit_text(format_spectrum_csv(synthesize_spectrum(dev.oscillator, eta, opt)), a.output);
  return kExitOk;
}

struct SynthDatasetArgs {
  std::string output, T_sat;
  double alpha = 1.0;
};

int run_synth_dataset(const Common& common, const SynthDatasetArgs& a) {
  const RunConfig cfg = load_config(common);
  DatasetSpec spec;
  spec.alpha = a.alpha;
  spec.seed = cfg.seed;
  spec.cut_low = cfg.cut_low;
  if (auto ts = opt_quantity(a.T_sat, Dimension::temperature)) spec.T_sat = *ts;
  emit_text(format_temperature_csv(synthesize_dataset(spec)), a.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collapse-model (CSL) bounds from the thermal noise of a loaded nanocantilever."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  app.footer("Dimensional flags take a unit, e.g. --measured 0.28mK. Exit status: 0 ok, 1 user error, "
             "2 numerical failure.\n\n" + config_schema_help());

  Common common;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", common.config_path, "JSON run configuration (see main --help)");
    sub->add_option("-j,--threads", common.threads, "Worker threads (0 = hardware concurrency)");
    sub->add_option("--seed", common.seed, "Master RNG seed (overrides the config 'seed')");
  };

  EtaArgs eta;
  auto* s_eta = app.add_subcommand("eta", "Collapse strength eta of the device at one (lambda, r_C)");
  add_common(s_eta);
  s_eta->add_option("--r-c", eta.r_C, "Correlation length with unit, e.g. 1e-7m (default csl.r_C)");
  s_eta->add_option("--lambda", eta.lambda, "Collapse rate with unit, e.g. 2.2e-17/s (default csl.lambda)");
  s_eta->add_flag("--oracle", eta.oracle, "Also evaluate the independent k-space form");
  s_eta->add_option("-o,--output", eta.output, "JSON output path (default stdout)");
  s_eta->footer("Output JSON: lambda_per_s, r_C_m, eta_*_per_m2_s (1/(m^2 s)), delta_T_K, geometry, oscillator.");

  ModeshapeArgs mode;
  auto* s_mode = app.add_subcommand("modeshape", "Fundamental mode shape A(x) and effective-mass fraction");
  add_common(s_mode);
  s_mode->add_option("-n,--points", mode.points, "Number of samples along the beam")->capture_default_str();
  s_mode->add_option("-o,--output", mode.output, "CSV output (columns x_m,A; '-' for stdout)")->capture_default_str();
  s_mode->footer("CSV: header '# x_m,A', x in m, A dimensionless with A(L) = 1.\n"
                 "stdout: JSON with beta_eff, kL, mass_ratio, R1_m, m_effective_kg, motional_mass_kg.");

  HeatingArgs heat;
  auto* s_heat = app.add_subcommand("heating", "eta breakdown and Delta T_CSL over a log grid of r_C");
  add_common(s_heat);
  s_heat->add_option("--lambda", heat.lambda, "Collapse rate with unit (default csl.lambda)");
  s_heat->add_option("-n,--points", heat.points, "Grid points (default csl.r_C_grid.points)");
  s_heat->add_option("-o,--output", heat.output, "CSV output ('-' for stdout)")->capture_default_str();
  s_heat->footer("CSV: '# r_C,eta_total,eta_s,eta_c,eta_mix,deltaT_K'; r_C in m, eta in 1/(m^2 s), deltaT in K.");

  FitSpectrumArgs fspec;
  auto* s_fspec = app.add_subcommand("fit-spectrum", "Lorentzian-plus-floor fit of an averaged spectrum");
  add_common(s_fspec);
  s_fspec->add_option("-i,--input", fspec.input, "Spectrum CSV")->required();
  s_fspec->add_option("--averages", fspec.averages, "Number of averaged spectra per bin")->capture_default_str();
  s_fspec->add_option("--scale", fspec.scale, "Calibration factor applied to the psd column")->capture_default_str();
  s_fspec->add_option("-o,--output", fspec.output, "JSON output path (default stdout)");
  s_fspec->footer("Input CSV: header '# freq_hz,psd_m2_per_hz', uniform one-sided grid, psd in m^2/Hz.\n"
                  "Output JSON: f0_fit_hz, gamma_fit_per_s, area_m2, white_floor_m2_per_hz, covariance, T_m_K "
                  "(m omega0^2 area / k_B with the configured oscillator).");

  FitLinearArgs flin;
  auto* s_flin = app.add_subcommand("fit-linear", "Weighted linear fits of T_m versus bath temperature");
  add_common(s_flin);
  s_flin->add_option("-i,--input", flin.input, "Temperature CSV")->required();
  s_flin->add_option("--cut-low", flin.cut_low, "Exclude T_bath at or below this, e.g. 25mK");
  s_flin->add_option("--fixed-slope", flin.fixed_slope, "Slope of the fixed-slope fit")->capture_default_str();
  s_flin->add_option("-o,--output", flin.output, "JSON output path (default stdout)");
  s_flin->footer("Input CSV: header '# T_K,Tm_K,sigma_K', all in K, sigma > 0.\n"
                 "Output JSON: fixed_slope and free_slope fits (alpha, T0_K, sigma_T0_K, chi2_reduced) and the\n"
                 "Feldman-Cousins upper limit on T0 from the fixed-slope fit at analysis.confidence.");

  FcArgs fc;
  auto* s_fc = app.add_subcommand("fc-limit", "Feldman-Cousins upper limit for a Gaussian measurement of mu >= 0");
  add_common(s_fc);
  s_fc->add_option("--measured", fc.measured, "Measured value with unit, e.g. 0.28mK")->required();
  s_fc->add_option("--sigma", fc.sigma, "Standard deviation with unit, e.g. 1.18mK")->required();
  s_fc->add_option("--cl", fc.cl, "Confidence level in (0.5, 0.9999)")->capture_default_str();
  s_fc->add_option("-o,--output", fc.output, "JSON output path (default stdout)");
  s_fc->footer("Output JSON: measured_K, sigma_K, confidence, upper_limit_K, lower_limit_K.");

  ExclusionArgs excl;
  auto* s_excl = app.add_subcommand("exclusion", "lambda(r_C) exclusion curve, comparison bounds and plot");
  add_common(s_excl);
  s_excl->add_option("--deltaT-max", excl.deltaT_max, "Upper limit on Delta T_CSL, e.g. 2.5mK (default analysis)");
  s_excl->add_option("-d,--output-dir", excl.output_dir, "Directory for the outputs")->capture_default_str();
  s_excl->footer("Writes <label>.csv per curve ('# r_C_m,lambda_up_per_s'), report.json (curves, reference points,\n"
                 "Adler bar status and threshold) and exclusion.svg (log-log).");

  SimulateArgs sim;
  auto* s_sim = app.add_subcommand("simulate", "Langevin simulation of the oscillator with the collapse force");
  add_common(s_sim);
  s_sim->add_option("--steps", sim.steps, "Recorded steps per trajectory (default simulation.steps)");
  s_sim->add_option("--trajectories", sim.trajectories, "Number of trajectories (default simulation.trajectories)");
  s_sim->add_option("--psd", sim.psd, "Also write the Welch PSD of q to this CSV");
  s_sim->add_option("-o,--output", sim.output, "JSON output path (default stdout)");
  s_sim->footer("Output JSON: mean_energy_J, energy_sem_J, T_eff_K, predicted_T_K, mean_q2_m2, predicted_q2_m2.\n"
                "PSD CSV: '# freq_hz,psd_m2_per_hz', one-sided.\n"
                "Oscillator: the device with simulation.f0/Q/mass overrides if any of them is set, otherwise a\n"
                "test-scale oscillator (1 kHz, Q = 20, 1e-12 kg). Default eta makes Delta T_CSL = simulation.T_bath.");

  SynthSpectrumArgs sspec;
  auto* s_sspec = app.add_subcommand("synth-spectrum", "Synthetic averaged spectrum of the configured oscillator");
  add_common(s_sspec);
  s_sspec->add_option("--T", sspec.T, "Bath temperature with unit (default oscillator.T_bath)");
  s_sspec->add_option("--floor", sspec.floor, "White floor with unit, e.g. 1e-24m^2/Hz");
  s_sspec->add_option("--averages", sspec.averages, "Averages per bin (0: noiseless)")->capture_default_str();
  s_sspec->add_option("--span", sspec.span, "Span in linewidths")->capture_default_str();
  s_sspec->add_option("--df", sspec.df, "Resolution in Hz")->capture_default_str();
  s_sspec->add_option("-o,--output", sspec.output, "CSV output path (default stdout)");
  s_sspec->footer("CSV: '# freq_hz,psd_m2_per_hz'. Collapse heating uses csl.lambda and csl.r_C; seed from config.");

  SynthDatasetArgs sdata;
  auto* s_sdata = app.add_subcommand("synth-dataset", "Synthetic T_m versus T dataset with known truth");
  add_common(s_sdata);
  s_sdata->add_option("--alpha", sdata.alpha, "True slope")->capture_default_str();
  s_sdata->add_option("--T-sat", sdata.T_sat, "Saturation temperature with unit (default 25mK, 0K disables)");
  s_sdata->add_option("-o,--output", sdata.output, "CSV output path (default stdout)");
  s_sdata->footer("CSV: '# T_K,Tm_K,sigma_K'.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUser;
  }

  try {
    if (*s_eta) return run_eta(common, eta);
    if (*s_mode) return run_modeshape(common, mode);
    if (*s_heat) return run_heating(common, heat);
    if (*s_fspec) return run_fit_spectrum(common, fspec);
    if (*s_flin) return run_fit_linear(common, flin);
    if (*s_fc) return run_fc_limit(common, fc);
    if (*s_excl) return run_exclusion(common, excl);
    if (*s_sim) return run_simulate(common, sim);
    if (*s_sspec) return run_synth_spectrum(common, sspec);
    if (*s_sdata) return run_synth_dataset(common, sdata);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUser;
  } catch (const UnitError& e) {
    std::cerr << "unit error: " << e.what() << "\n";
    return kExitUser;
  } catch (const DataError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUser;
  } catch (const DomainError& e) {
    std::cerr << "invalid value: " << e.what() << "\n";
    return kExitUser;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUser;
}
