#include "qhydro/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "qhydro/error.hpp"

namespace qhydro {

using nlohmann::json;

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::HydroPerfect: return "hydro_perfect";
    case Engine::HydroGP: return "hydro_gp";
    case Engine::GpOracle: return "gp_oracle";
    case Engine::LinearAcoustic: return "linear_acoustic";
    case Engine::Kinetic: return "kinetic";
    case Engine::Dispersion: return "dispersion";
  }
  return "unknown";
}

double ExperimentConfig::particles() const {
  return n_total ? *n_total : params.rho0 * length / params.mass;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::ConfigError, "field '" + field + "' " + why);
}

// Typed access to one JSON object, with dotted paths in every message.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail(path_.empty() ? "<root>" : path_, "must be an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return obj_.contains(key); }

  void allow(std::initializer_list<const char*> keys) const {
    for (const auto& [k, v] : obj_.items()) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
        fail(field(k), "is not a recognized setting");
      }
    }
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number()) fail(field(key), "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field(key), "must be finite");
    return d;
  }

  double number(const std::string& key) const {
    if (!has(key)) fail(field(key), "is required");
    return number(key, 0.0);
  }

  std::optional<double> optional_number(const std::string& key) const {
    if (!has(key) || obj_.at(key).is_null()) return std::nullopt;
    return number(key, 0.0);
  }

  long integer(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) fail(field(key), "must be an integer");
    return v.get<long>();
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    const long v = integer(key, static_cast<long>(fallback));
    if (v < 1) fail(field(key), "must be >= 1");
    return static_cast<std::size_t>(v);
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) fail(field(key), "must be true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_string()) fail(field(key), "must be a string");
    return v.get<std::string>();
  }

  std::string text(const std::string& key) const {
    if (!has(key)) fail(field(key), "is required");
    return text(key, "");
  }

  Section child(const std::string& key) const { return Section(obj_.at(key), field(key)); }
  const json& raw(const std::string& key) const { return obj_.at(key); }

 private:
  const json& obj_;
  std::string path_;
};

template <typename F>
auto parse_enum(const std::string& field, const std::string& value, F&& parser) {
  try {
    return parser(value);
  } catch (const Error&) {
    fail(field, "has unknown value '" + value + "'");
  }
}

Engine parse_engine(const std::string& s) {
  for (Engine e : {Engine::HydroPerfect, Engine::HydroGP, Engine::GpOracle, Engine::LinearAcoustic,
                   Engine::Kinetic, Engine::Dispersion}) {
    if (s == to_string(e)) return e;
  }
  throw Error(ErrorKind::InvalidArgument, s);
}

ModeShape parse_shape(const std::string& s) {
  if (s == "traveling") return ModeShape::Traveling;
  if (s == "standing") return ModeShape::Standing;
  throw Error(ErrorKind::InvalidArgument, s);
}

PressureConvention parse_pressure(const std::string& s) {
  if (s == "1d") return PressureConvention::OneD;
  if (s == "3d") return PressureConvention::ThreeD;
  throw Error(ErrorKind::InvalidArgument, s);
}

void require_positive(const Section& s, const std::string& key, double v) {
  if (!(v > 0.0)) fail(s.field(key), "must be > 0");
}

void parse_params(const Section& s, PhysParams& p) {
  s.allow({"hbar", "mass", "boltzmann", "scatter_len", "rho0"});
  p.hbar = s.number("hbar", p.hbar);
  p.mass = s.number("mass", p.mass);
  p.boltzmann = s.number("boltzmann", p.boltzmann);
  p.scatter_len = s.number("scatter_len", p.scatter_len);
  p.rho0 = s.number("rho0", p.rho0);
  if (p.hbar < 0.0) fail(s.field("hbar"), "must be >= 0");
  require_positive(s, "mass", p.mass);
  require_positive(s, "boltzmann", p.boltzmann);
  if (p.scatter_len < 0.0) fail(s.field("scatter_len"), "must be >= 0");
  require_positive(s, "rho0", p.rho0);
}

void parse_initial(const Section& s, InitialSpec& ic) {
  s.allow({"preset", "mode", "amplitude", "shape", "center", "sigma", "k0", "beta", "temperature",
           "width", "velocity"});
  ic.preset = s.text("preset");
  static const char* known[] = {"uniform", "single_mode", "gaussian", "trap_ground_state", "maxwellian",
                                "cold_beam"};
  if (std::find(std::begin(known), std::end(known), ic.preset) == std::end(known)) {
    fail(s.field("preset"), "has unknown value '" + ic.preset + "'");
  }
  ic.mode = s.integer("mode", ic.mode);
  ic.amplitude = s.number("amplitude", ic.amplitude);
  ic.shape = parse_enum(s.field("shape"), s.text("shape", "traveling"), parse_shape);
  ic.center = s.number("center", ic.center);
  ic.sigma = s.number("sigma", ic.sigma);
  ic.k0 = s.number("k0", ic.k0);
  ic.beta = s.number("beta", ic.beta);
  ic.temperature = s.optional_number("temperature");
  ic.width = s.number("width", ic.width);
  ic.velocity = s.number("velocity", ic.velocity);
  if (ic.mode < 1) fail(s.field("mode"), "must be >= 1");
  require_positive(s, "sigma", ic.sigma);
  require_positive(s, "width", ic.width);
  if (ic.temperature && *ic.temperature < 0.0) fail(s.field("temperature"), "must be >= 0");
  if (ic.preset == "maxwellian" && !(ic.temperature && *ic.temperature > 0.0)) {
    fail(s.field("temperature"), "must be > 0 for the maxwellian preset");
  }
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  const Section root(doc, "");
  root.allow({"name", "engine", "grid", "params", "closure", "vacuum", "step", "potential", "initial",
              "kinetic", "dispersion", "n_total", "t_end", "snapshot_every", "output"});

  ExperimentConfig c;
  c.source_json = doc.dump(2);
  c.name = root.text("name", c.name);
  c.engine = parse_enum("engine", root.text("engine"), parse_engine);

  if (root.has("grid")) {
    const Section g = root.child("grid");
    g.allow({"n_points", "length"});
    const long n = g.integer("n_points", static_cast<long>(c.n_points));
    if (n < 8 || n % 2 != 0) fail(g.field("n_points"), "must be even and >= 8");
    c.n_points = static_cast<std::size_t>(n);
    c.length = g.number("length", c.length);
    require_positive(g, "length", c.length);
  }
  if (root.has("params")) parse_params(root.child("params"), c.params);

  if (root.has("closure")) {
    const Section s = root.child("closure");
    s.allow({"type", "temperature"});
    const std::string type = s.text("type");
    if (type == "pressureless") {
      c.closure = Pressureless{};
    } else if (type == "isothermal") {
      const double t = s.number("temperature");
      if (t < 0.0) fail(s.field("temperature"), "must be >= 0");
      c.closure = Isothermal{t};
    } else if (type == "ideal_gas_heat") {
      c.closure = IdealGasHeat{};
    } else {
      fail(s.field("type"), "has unknown value '" + type + "'");
    }
  }

  if (root.has("vacuum")) {
    const Section s = root.child("vacuum");
    s.allow({"epsilon", "relative"});
    c.vacuum.epsilon = s.number("epsilon", c.vacuum.epsilon);
    c.vacuum.relative = s.boolean("relative", c.vacuum.relative);
    if (c.vacuum.epsilon < 0.0) fail(s.field("epsilon"), "must be >= 0");
  }

  if (root.has("step")) {
    const Section s = root.child("step");
    s.allow({"dt", "cfl_safety", "filter", "filter_strength", "filter_order", "scheme", "force_form"});
    if (auto dt = s.optional_number("dt")) {
      require_positive(s, "dt", *dt);
      c.step.dt = *dt;
      c.auto_dt = false;
    }
    c.step.cfl_safety = s.number("cfl_safety", c.step.cfl_safety);
    if (!(c.step.cfl_safety > 0.0 && c.step.cfl_safety <= 1.0)) fail(s.field("cfl_safety"), "must lie in (0, 1]");
    c.step.filter = s.boolean("filter", c.step.filter);
    c.step.filter_strength = s.number("filter_strength", c.step.filter_strength);
    c.step.filter_order = static_cast<int>(s.integer("filter_order", c.step.filter_order));
    require_positive(s, "filter_strength", c.step.filter_strength);
    if (c.step.filter_order < 2 || c.step.filter_order % 2 != 0) fail(s.field("filter_order"), "must be even and >= 2");
    c.scheme = parse_enum(s.field("scheme"), s.text("scheme", "spectral"), parse_diff_scheme);
    c.force_form = parse_enum(s.field("force_form"), s.text("force_form", "gradient"), parse_quantum_force_form);
  }

  if (root.has("potential")) {
    const Section s = root.child("potential");
    s.allow({"type", "omega", "beta", "center"});
    c.potential.type = s.text("type", "none");
    if (c.potential.type != "none" && c.potential.type != "harmonic" && c.potential.type != "periodic_trap") {
      fail(s.field("type"), "has unknown value '" + c.potential.type + "'");
    }
    c.potential.omega = s.number("omega", c.potential.omega);
    c.potential.beta = s.number("beta", c.potential.beta);
    c.potential.center = s.optional_number("center");
    require_positive(s, "omega", c.potential.omega);
  }

  if (root.has("initial")) {
    parse_initial(root.child("initial"), c.initial);
  } else if (c.engine == Engine::Kinetic) {
    fail("initial", "is required for the kinetic engine");
  }

  if (root.has("kinetic")) {
    const Section s = root.child("kinetic");
    s.allow({"n_v", "v_max", "v_advection", "pressure"});
    const long nv = s.integer("n_v", static_cast<long>(c.kinetic.n_v));
    if (nv < 16 || nv % 2 != 0) fail(s.field("n_v"), "must be even and >= 16");
    c.kinetic.n_v = static_cast<std::size_t>(nv);
    c.kinetic.v_max = s.number("v_max", c.kinetic.v_max);
    require_positive(s, "v_max", c.kinetic.v_max);
    c.kinetic.v_advection =
        parse_enum(s.field("v_advection"), s.text("v_advection", "spectral"), parse_velocity_advection);
    c.kinetic.pressure = parse_enum(s.field("pressure"), s.text("pressure", "1d"), parse_pressure);
  }

  if (root.has("dispersion")) {
    const Section s = root.child("dispersion");
    s.allow({"source", "modes", "amplitude", "t_end", "periods", "shape", "parallel"});
    c.dispersion.source = parse_enum(s.field("source"), s.text("source", "hydro_gp"), parse_dispersion_source);
    if (s.has("modes")) {
      const json& m = s.raw("modes");
      if (!m.is_array() || m.empty()) fail(s.field("modes"), "must be a non-empty array of integers");
      c.dispersion.modes.clear();
      for (const auto& v : m) {
        if (!v.is_number_integer() || v.get<long>() < 1) fail(s.field("modes"), "entries must be integers >= 1");
        c.dispersion.modes.push_back(v.get<long>());
      }
    }
    c.dispersion.amplitude = s.number("amplitude", c.dispersion.amplitude);
    require_positive(s, "amplitude", c.dispersion.amplitude);
    c.dispersion.t_end = s.optional_number("t_end");
    if (c.dispersion.t_end) require_positive(s, "t_end", *c.dispersion.t_end);
    c.dispersion.periods = s.number("periods", c.dispersion.periods);
    if (c.dispersion.periods < 5.0) fail(s.field("periods"), "must be >= 5");
    c.dispersion.shape = parse_enum(s.field("shape"), s.text("shape", "traveling"), parse_shape);
    c.dispersion.parallel = s.boolean("parallel", c.dispersion.parallel);
  }

  c.n_total = root.optional_number("n_total");
  if (c.n_total) require_positive(root, "n_total", *c.n_total);
  c.t_end = root.number("t_end", c.t_end);
  if (c.t_end < 0.0) fail("t_end", "must be >= 0");
  c.snapshot_every = root.count("snapshot_every", c.snapshot_every);
  c.output = root.text("output", c.name.empty() ? "out" : "out/" + c.name);

  if ((c.engine == Engine::GpOracle || c.engine == Engine::Dispersion) && !(c.params.hbar > 0.0)) {
    fail("params.hbar", "must be > 0 for this engine");
  }
  if (c.engine == Engine::HydroPerfect && std::holds_alternative<IdealGasHeat>(c.closure) &&
      !c.initial.temperature) {
    fail("initial.temperature", "is required by the ideal_gas_heat closure");
  }
  for (long j : c.dispersion.modes) {
    if (static_cast<std::size_t>(j) >= c.n_points / 2) fail("dispersion.modes", "contains an unresolvable mode");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingArtifact, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace qhydro
