#include "cslbound/config.hpp"

#include <set>
#include <string>

#include <json.hpp>

#include "cslbound/errors.hpp"
#include "cslbound/io.hpp"
#include "cslbound/units.hpp"

namespace cslbound {

namespace {

using nlohmann::json;

/// Cursor over one JSON object that remembers which keys were consumed.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }

  ~Section() = default;

  bool has(const std::string& key) const { return j_.contains(key); }

  std::optional<double> quantity(const std::string& key, Dimension d) {
    if (!take(key)) return std::nullopt;
    const json& v = j_.at(key);
    if (!v.is_string())
      throw UnitError(where(key) + " needs a unit, e.g. \"1.0 " + std::string(si_unit(d)) + "\" (accepted: " +
                      accepted_units(d) + ")");
    try {
      return parse_quantity(v.get<std::string>(), d);
    } catch (const UnitError& e) {
      throw UnitError(where(key) + ": " + e.what());
    }
  }

  template <class T>
  std::optional<T> number(const std::string& key) {
    if (!take(key)) return std::nullopt;
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(where(key) + " must be a number");
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(where(key) + " must be an integer");
    }
    return v.get<T>();
  }

  std::optional<bool> boolean(const std::string& key) {
    if (!take(key)) return std::nullopt;
    if (!j_.at(key).is_boolean()) throw ConfigError(where(key) + " must be true or false");
    return j_.at(key).get<bool>();
  }

  std::optional<Section> child(const std::string& key) {
    if (!take(key)) return std::nullopt;
    return Section(j_.at(key), path_.empty() ? key : path_ + "." + key);
  }

  /// Rejects keys that no reader consumed.
  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!used_.count(key)) throw ConfigError("unknown configuration key '" + where(key) + "'");
  }

 private:
  bool take(const std::string& key) {
    if (!j_.contains(key)) return false;
    used_.insert(key);
    return true;
  }
  std::string where(const std::string& key = {}) const {
    if (key.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

template <class T>
void assign(T& target, const std::optional<T>& v) {
  if (v) target = *v;
}

template <class T>
void assign(std::optional<T>& target, const std::optional<T>& v) {
  if (v) target = v;
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  Section top(root, "");

  if (auto dev = top.child("device")) {
    if (auto c = dev->child("cantilever")) {
      assign(cfg.device.cantilever.L, c->quantity("length", Dimension::length));
      assign(cfg.device.cantilever.w, c->quantity("width", Dimension::length));
      assign(cfg.device.cantilever.d, c->quantity("thickness", Dimension::length));
      assign(cfg.device.cantilever.rho_c, c->quantity("density", Dimension::density));
      c->finish();
    }
    if (auto s = dev->child("sphere")) {
      assign(cfg.device.sphere.radius, s->quantity("radius", Dimension::length));
      assign(cfg.device.sphere.density, s->quantity("density", Dimension::density));
      s->finish();
    }
    assign(cfg.sphere_gap, dev->quantity("sphere_gap", Dimension::length));
    dev->finish();
  }
  if (auto g = top.child("geometry")) {
    if (top.has("device")) throw ConfigError("give either 'device' or 'geometry', not both");
    ResonatorGeometry geom;
    const auto need = [&](const char* key, Dimension d) {
      const auto v = g->quantity(key, d);
      if (!v) throw ConfigError(std::string("geometry.") + key + " is required");
      return *v;
    };
    geom.R1 = need("R1", Dimension::length);
    geom.R2 = need("R2", Dimension::length);
    geom.R3 = need("R3", Dimension::length);
    geom.R = need("R", Dimension::length);
    geom.rho_c = need("rho_c", Dimension::density);
    geom.rho_s = need("rho_s", Dimension::density);
    assign(geom.sphere_gap, g->quantity("sphere_gap", Dimension::length));
    g->finish();
    cfg.geometry = geom;
  }
  if (auto o = top.child("oscillator")) {
    assign(cfg.device.f0_hz, o->quantity("f0", Dimension::frequency));
    assign(cfg.device.Q, o->number<double>("Q"));
    assign(cfg.device.T_bath, o->quantity("T_bath", Dimension::temperature));
    assign(cfg.motional_mass, o->quantity("mass", Dimension::mass));
    o->finish();
  }
  if (auto c = top.child("csl")) {
    assign(cfg.lambda, c->quantity("lambda", Dimension::rate));
    assign(cfg.r_C, c->quantity("r_C", Dimension::length));
    if (auto g = c->child("r_C_grid")) {
      assign(cfg.grid.min, g->quantity("min", Dimension::length));
      assign(cfg.grid.max, g->quantity("max", Dimension::length));
      assign(cfg.grid.points, g->number<int>("points"));
      g->finish();
    }
    c->finish();
  }
  if (auto a = top.child("analysis")) {
    assign(cfg.cut_low, a->quantity("cut_low", Dimension::temperature));
    assign(cfg.confidence, a->number<double>("confidence"));
    assign(cfg.deltaT_max, a->quantity("deltaT_max", Dimension::temperature));
    a->finish();
  }
  if (auto e = top.child("exclusion")) {
    if (auto x = e->child("xray_anchor")) {
      assign(cfg.xray_anchor_lambda, x->quantity("lambda", Dimension::rate));
      assign(cfg.xray_anchor_rC, x->quantity("r_C", Dimension::length));
      x->finish();
    }
    if (auto f = e->child("forecast")) {
      assign(cfg.forecast, f->boolean("enabled"));
      assign(cfg.deltaT_detectable, f->quantity("deltaT_detectable", Dimension::temperature));
      assign(cfg.upgrade.f0_hz, f->quantity("f0", Dimension::frequency));
      assign(cfg.upgrade.Q, f->number<double>("Q"));
      if (auto c = f->child("cantilever")) {
        assign(cfg.upgrade.cantilever.L, c->quantity("length", Dimension::length));
        assign(cfg.upgrade.cantilever.w, c->quantity("width", Dimension::length));
        assign(cfg.upgrade.cantilever.d, c->quantity("thickness", Dimension::length));
        assign(cfg.upgrade.cantilever.rho_c, c->quantity("density", Dimension::density));
        c->finish();
      }
      if (auto l = f->child("film")) {
        assign(cfg.upgrade.film.length, l->quantity("length", Dimension::length));
        assign(cfg.upgrade.film.width, l->quantity("width", Dimension::length));
        assign(cfg.upgrade.film.thickness, l->quantity("thickness", Dimension::length));
        assign(cfg.upgrade.film.density, l->quantity("density", Dimension::density));
        l->finish();
      }
      f->finish();
    }
    e->finish();
  }
  if (auto s = top.child("simulation")) {
    assign(cfg.sim_T_bath, s->quantity("T_bath", Dimension::temperature));
    assign(cfg.sim_eta, s->quantity("eta", Dimension::collapse_strength));
    assign(cfg.sim_dt, s->quantity("dt", Dimension::time));
    assign(cfg.sim_steps, s->number<long>("steps"));
    assign(cfg.sim_trajectories, s->number<int>("trajectories"));
    assign(cfg.sim_burn_in, s->quantity("burn_in", Dimension::time));
    assign(cfg.sim_welch_segment, s->number<int>("welch_segment"));
    assign(cfg.sim_f0, s->quantity("f0", Dimension::frequency));
    assign(cfg.sim_Q, s->number<double>("Q"));
    assign(cfg.sim_mass, s->quantity("mass", Dimension::mass));
    s->finish();
  }
  if (const auto seed = top.number<std::uint64_t>("seed")) cfg.seed = *seed;
  top.finish();

  if (cfg.grid.points < 2 || !(cfg.grid.min > 0.0 && cfg.grid.max > cfg.grid.min))
    throw ConfigError("csl.r_C_grid needs 0 < min < max and at least 2 points");
  if (!(cfg.confidence > 0.5 && cfg.confidence < 0.9999)) throw ConfigError("analysis.confidence must lie in (0.5, 0.9999)");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("config file not found: " + path.string());
  try {
    return parse_run_config(read_text_file(path));
  } catch (const UnitError& e) {
    throw UnitError(path.string() + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

ResolvedDevice resolve_device(const RunConfig& config) {
  ResolvedDevice out;
  if (config.geometry) {
    out.geometry = *config.geometry;
    out.geometry.validate();
    if (!config.motional_mass)
      throw ConfigError("an explicit geometry needs oscillator.mass (the mode is not solved)");
    out.oscillator.m = *config.motional_mass;
    out.oscillator.omega0 = 2.0 * kPi * config.device.f0_hz;
    out.oscillator.Q = config.device.Q;
    out.oscillator.T_bath = config.device.T_bath;
  } else {
    const DeviceModel model = build_device(config.device);
    out.geometry = model.geometry;
    out.geometry.sphere_gap = config.sphere_gap;
    out.geometry.validate();
    out.oscillator = model.oscillator;
    out.mode = model.mode;
    if (config.motional_mass) out.oscillator.m = *config.motional_mass;
  }
  out.oscillator.validate();
  return out;
}

std::string config_schema_help() {
  return R"(Config file (JSON). Dimensional values are strings with a unit, e.g. "100 um";
dimensionless values are numbers. Unknown keys are an error. Every section is
optional; absent values keep the defaults shown.

  device.cantilever.{length,width,thickness}  length   100 um, 5 um, 0.1 um
  device.cantilever.density                    density  2330 kg/m^3
  device.sphere.radius                         length   2.25 um
  device.sphere.density                        density  7430 kg/m^3
  device.sphere_gap                            length   0 m
  geometry.{R1,R2,R3,R,sphere_gap}             length   (alternative to device; needs oscillator.mass)
  geometry.{rho_c,rho_s}                       density
  oscillator.f0                                frequency 3084 Hz
  oscillator.Q                                 number   38000
  oscillator.T_bath                            temperature 0 K
  oscillator.mass                              mass     (computed from the mode)
  csl.lambda                                   rate     2.2e-17 1/s
  csl.r_C                                      length   1e-7 m
  csl.r_C_grid.{min,max}                       length   1e-9 m, 1e-3 m
  csl.r_C_grid.points                          integer  200
  analysis.cut_low                             temperature 25 mK
  analysis.confidence                          number   0.95
  analysis.deltaT_max                          temperature 2.5 mK
  exclusion.xray_anchor.lambda                 rate     (none: X-ray curve omitted)
  exclusion.xray_anchor.r_C                    length   1e-7 m
  exclusion.forecast.enabled                   bool     true
  exclusion.forecast.deltaT_detectable         temperature 1 mK
  exclusion.forecast.{f0,Q}                    3084 Hz, 1e7
  exclusion.forecast.cantilever.*              100 um x 12 um x 0.6 um, 3510 kg/m^3
  exclusion.forecast.film.*                    40 um x 12 um x 0.2 um, 15200 kg/m^3
  simulation.T_bath                            temperature 0.1 K
  simulation.eta                               1/(m^2 s) (default: Delta T_CSL = T_bath)
  simulation.{dt,burn_in}                      time     1/(200 f0), 5 Q/omega0
  simulation.{steps,trajectories,welch_segment} integer 1048576, 64, 32768
  simulation.{f0,Q,mass}                       (default: 1 kHz, Q 20, 1e-12 kg test oscillator;
                                               setting any one starts from the device)
  seed                                         integer  1

Units: length )" +
         accepted_units(Dimension::length) + "; mass " + accepted_units(Dimension::mass) + "; density " +
         accepted_units(Dimension::density) + "; temperature " + accepted_units(Dimension::temperature) +
         "; frequency " + accepted_units(Dimension::frequency) + "; rate " + accepted_units(Dimension::rate) +
         "; time " + accepted_units(Dimension::time) + "; collapse strength " +
         accepted_units(Dimension::collapse_strength) + ".\n";
}

}  // namespace cslbound
