#include "fluxatom/config.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace fluxatom {

using nlohmann::json;

namespace {

const json& require_object(const json& j, const std::string& ctx) {
  if (!j.is_object()) fail(Errc::SchemaError, ctx + " must be an object");
  return j;
}

void check_keys(const json& j, const std::string& ctx, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(Errc::SchemaError, "unknown field " + ctx + "." + it.key());
  }
}

const json& require_field(const json& j, const std::string& ctx, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(Errc::SchemaError, "missing field " + ctx + "." + key);
  return *it;
}

double as_number(const json& j, const std::string& ctx) {
  if (!j.is_number()) fail(Errc::SchemaError, ctx + " must be a number");
  return j.get<double>();
}

int as_count(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) fail(Errc::SchemaError, ctx + " must be an integer");
  return j.get<int>();
}

std::uint64_t as_seed(const json& j, const std::string& ctx) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0))
    fail(Errc::SchemaError, ctx + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

bool as_bool(const json& j, const std::string& ctx) {
  if (!j.is_boolean()) fail(Errc::SchemaError, ctx + " must be true or false");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& ctx) {
  if (!j.is_string()) fail(Errc::SchemaError, ctx + " must be a string");
  return j.get<std::string>();
}

cx as_complex(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(Errc::SchemaError, ctx + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<cx> as_cvector(const json& j, const std::string& ctx) {
  if (!j.is_array()) fail(Errc::SchemaError, ctx + " must be an array of [re, im] pairs");
  std::vector<cx> v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_complex(j[i], ctx + "[" + std::to_string(i) + "]"));
  return v;
}

CMat as_cmatrix(const json& j, const std::string& ctx, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(Errc::SchemaError, ctx + " must be an array of " + std::to_string(n) + " rows");
  CMat m(n, n);
  for (int r = 0; r < n; ++r) {
    auto row = as_cvector(j[r], ctx + "[" + std::to_string(r) + "]");
    if (static_cast<int>(row.size()) != n)
      fail(Errc::SchemaError, ctx + "[" + std::to_string(r) + "] must have " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) m(r, c) = row[c];
  }
  return m;
}

CVec to_cvec(const std::vector<cx>& v) {
  CVec out(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<int>(i)) = v[i];
  return out;
}

nlohmann::ordered_json complex_json(cx z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); }

void parse_model(const json& root, RunConfig& cfg, bool degrees) {
  const json& model = require_object(require_field(root, "config", "model"), "model");
  check_keys(model, "model", {"generic", "spherical"});
  const bool has_generic = model.contains("generic");
  const bool has_spherical = model.contains("spherical");
  if (has_generic && has_spherical)
    fail(Errc::SchemaError, "model.generic and model.spherical are mutually exclusive");
  if (!has_generic && !has_spherical)
    fail(Errc::SchemaError, "model needs either model.generic or model.spherical");

  const double ang = degrees ? pi / 180.0 : 1.0;
  if (has_generic) {
    const json& g = require_object(model["generic"], "model.generic");
    check_keys(g, "model.generic", {"n", "omega0", "alpha", "S_plus", "S_minus"});
    const int n = as_count(require_field(g, "model.generic", "n"), "model.generic.n");
    if (n < 1) fail(Errc::SchemaError, "model.generic.n must be at least 1");
    const double omega0 = as_number(require_field(g, "model.generic", "omega0"), "model.generic.omega0");
    auto alpha = as_cvector(require_field(g, "model.generic", "alpha"), "model.generic.alpha");
    if (static_cast<int>(alpha.size()) != n)
      fail(Errc::DimensionMismatch, "model.generic.alpha length does not match n");
    CMat sp = as_cmatrix(require_field(g, "model.generic", "S_plus"), "model.generic.S_plus", n);
    CMat sm = as_cmatrix(require_field(g, "model.generic", "S_minus"), "model.generic.S_minus", n);
    cfg.is_spherical = false;
    cfg.generic = make_model(omega0, to_cvec(alpha), sp, sm);
  } else {
    const json& s = require_object(model["spherical"], "model.spherical");
    check_keys(s, "model.spherical",
               {"alpha_norm", "s_plus", "s_minus", "g_plus", "g_minus", "eta", "delta", "omega0", "c_light"});
    SphericalModel sm;
    sm.alpha_norm = as_number(require_field(s, "model.spherical", "alpha_norm"), "model.spherical.alpha_norm");
    sm.s_plus = ang * as_number(require_field(s, "model.spherical", "s_plus"), "model.spherical.s_plus");
    sm.s_minus = ang * as_number(require_field(s, "model.spherical", "s_minus"), "model.spherical.s_minus");
    if (s.contains("g_plus")) sm.g_plus = as_cvector(s["g_plus"], "model.spherical.g_plus");
    if (s.contains("g_minus")) sm.g_minus = as_cvector(s["g_minus"], "model.spherical.g_minus");
    sm.eta = as_number(require_field(s, "model.spherical", "eta"), "model.spherical.eta");
    if (s.contains("delta")) sm.delta = ang * as_number(s["delta"], "model.spherical.delta");
    sm.omega0 = as_number(require_field(s, "model.spherical", "omega0"), "model.spherical.omega0");
    if (s.contains("c_light")) sm.c_light = as_number(s["c_light"], "model.spherical.c_light");
    sm.omega = sm.omega0;  // placeholder until the drive section fixes it
    cfg.is_spherical = true;
    cfg.spherical = sm;
  }
}

void parse_drive(const json& root, RunConfig& cfg) {
  const json& drive = require_object(require_field(root, "config", "drive"), "drive");
  if (!cfg.is_spherical) {
    check_keys(drive, "drive", {"lambda", "omega"});
    const double omega = as_number(require_field(drive, "drive", "omega"), "drive.omega");
    CVec lambda = CVec::Zero(cfg.generic.n);
    if (drive.contains("lambda")) {
      auto l = as_cvector(drive["lambda"], "drive.lambda");
      if (static_cast<int>(l.size()) != cfg.generic.n)
        fail(Errc::DimensionMismatch, "drive.lambda length does not match the model dimension");
      lambda = to_cvec(l);
    }
    cfg.drive = make_drive(std::move(lambda), omega);
    validate_drive(cfg.drive, cfg.generic);
    return;
  }
  check_keys(drive, "drive", {"omega", "omega_scan"});
  const bool has_omega = drive.contains("omega");
  const bool has_scan = drive.contains("omega_scan");
  if (has_omega == has_scan)
    fail(Errc::SchemaError, "drive needs exactly one of drive.omega, drive.omega_scan");
  if (has_omega) {
    cfg.spherical.omega = as_number(drive["omega"], "drive.omega");
    validate_spherical(cfg.spherical);
    return;
  }
  const json& sc = require_object(drive["omega_scan"], "drive.omega_scan");
  check_keys(sc, "drive.omega_scan", {"min", "max", "x_min", "x_max", "points"});
  const bool x_form = sc.contains("x_min") || sc.contains("x_max");
  cfg.scan.points = as_count(require_field(sc, "drive.omega_scan", "points"), "drive.omega_scan.points");
  if (cfg.scan.points < 2) fail(Errc::SchemaError, "drive.omega_scan.points must be at least 2");
  if (x_form) {
    if (sc.contains("min") || sc.contains("max"))
      fail(Errc::SchemaError, "drive.omega_scan mixes omega bounds with x bounds");
    cfg.scan.min = as_number(require_field(sc, "drive.omega_scan", "x_min"), "drive.omega_scan.x_min");
    cfg.scan.max = as_number(require_field(sc, "drive.omega_scan", "x_max"), "drive.omega_scan.x_max");
    if (!(cfg.scan.min < cfg.scan.max)) fail(Errc::SchemaError, "drive.omega_scan.x_min must be below x_max");
    cfg.scan.in_x = true;
  } else {
    cfg.scan.min = as_number(require_field(sc, "drive.omega_scan", "min"), "drive.omega_scan.min");
    cfg.scan.max = as_number(require_field(sc, "drive.omega_scan", "max"), "drive.omega_scan.max");
    if (!(cfg.scan.min > 0.0 && cfg.scan.min < cfg.scan.max))
      fail(Errc::SchemaError, "drive.omega_scan needs 0 < min < max");
    cfg.scan.in_x = false;
  }
  cfg.has_scan = true;
  validate_spherical(cfg.spherical);
}

void parse_initial(const json& j, RunConfig& cfg) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "ground")
      cfg.run.initial = BlochState::ground();
    else if (s == "excited")
      cfg.run.initial = BlochState::excited();
    else
      fail(Errc::SchemaError, "run.initial must be \"ground\", \"excited\", or {u, v}");
    return;
  }
  require_object(j, "run.initial");
  check_keys(j, "run.initial", {"u", "v"});
  BlochState st;
  st.u = as_number(require_field(j, "run.initial", "u"), "run.initial.u");
  st.v = as_complex(require_field(j, "run.initial", "v"), "run.initial.v");
  st.t = 0.0;
  validate_state(st);
  cfg.run.initial = st;
}

void parse_run(const json& root, RunConfig& cfg, bool degrees) {
  if (!root.contains("run")) return;
  const json& run = require_object(root["run"], "run");
  check_keys(run, "run",
             {"command", "t_end", "h", "dt", "n_traj", "n_samples", "n_models", "seed", "out", "format", "theta",
              "initial"});
  const double ang = degrees ? pi / 180.0 : 1.0;
  if (run.contains("command")) {
    const std::string c = as_string(run["command"], "run.command");
    static const char* known[] = {"steady", "evolve", "count", "flux", "lineshape", "diffxs", "oracle", "validate"};
    bool ok = false;
    for (const char* k : known) ok = ok || (c == k);
    if (!ok) fail(Errc::SchemaError, "run.command \"" + c + "\" is not a known command");
    cfg.run.command = c;
  }
  if (run.contains("t_end")) {
    cfg.run.t_end = as_number(run["t_end"], "run.t_end");
    if (!(cfg.run.t_end > 0.0)) fail(Errc::SchemaError, "run.t_end must be positive");
  }
  if (run.contains("h")) {
    cfg.run.h = as_number(run["h"], "run.h");
    if (!(cfg.run.h > 0.0)) fail(Errc::SchemaError, "run.h must be positive");
  }
  if (run.contains("dt")) {
    cfg.run.dt = as_number(run["dt"], "run.dt");
    if (!(cfg.run.dt > 0.0)) fail(Errc::SchemaError, "run.dt must be positive");
  }
  if (run.contains("n_traj")) {
    cfg.run.n_traj = as_count(run["n_traj"], "run.n_traj");
    if (cfg.run.n_traj < 1) fail(Errc::SchemaError, "run.n_traj must be at least 1");
  }
  if (run.contains("n_samples")) {
    cfg.run.n_samples = as_count(run["n_samples"], "run.n_samples");
    if (cfg.run.n_samples < 2) fail(Errc::SchemaError, "run.n_samples must be at least 2");
  }
  if (run.contains("n_models")) {
    cfg.run.n_models = as_count(run["n_models"], "run.n_models");
    if (cfg.run.n_models < 1) fail(Errc::SchemaError, "run.n_models must be at least 1");
  }
  if (run.contains("seed")) {
    cfg.run.seed = as_seed(run["seed"], "run.seed");
    cfg.run.has_seed = true;
  }
  if (run.contains("out")) cfg.run.out = as_string(run["out"], "run.out");
  if (run.contains("format")) {
    cfg.run.format = as_string(run["format"], "run.format");
    if (cfg.run.format != "csv" && cfg.run.format != "json")
      fail(Errc::SchemaError, "run.format must be \"csv\" or \"json\"");
  }
  if (run.contains("theta")) {
    const json& th = require_object(run["theta"], "run.theta");
    check_keys(th, "run.theta", {"min", "max", "points"});
    cfg.run.theta.min = ang * as_number(require_field(th, "run.theta", "min"), "run.theta.min");
    cfg.run.theta.max = ang * as_number(require_field(th, "run.theta", "max"), "run.theta.max");
    cfg.run.theta.points = as_count(require_field(th, "run.theta", "points"), "run.theta.points");
    if (!(cfg.run.theta.min > 0.0 && cfg.run.theta.min < cfg.run.theta.max))
      fail(Errc::SchemaError, "run.theta needs 0 < min < max");
    if (cfg.run.theta.points < 2) fail(Errc::SchemaError, "run.theta.points must be at least 2");
  }
  if (run.contains("initial")) parse_initial(run["initial"], cfg);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& ex) {
    fail(Errc::ParseError, ex.what());
  }
  require_object(root, "config");
  check_keys(root, "config", {"model", "drive", "run", "degrees"});
  bool degrees = false;
  if (root.contains("degrees")) degrees = as_bool(root["degrees"], "degrees");

  RunConfig cfg;
  parse_model(root, cfg, degrees);
  parse_drive(root, cfg);
  parse_run(root, cfg, degrees);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  nlohmann::ordered_json root;
  nlohmann::ordered_json model;
  if (!cfg.is_spherical) {
    nlohmann::ordered_json g;
    const HPModel& m = cfg.generic;
    g["n"] = m.n;
    g["omega0"] = m.omega0;
    nlohmann::ordered_json alpha = nlohmann::ordered_json::array();
    for (int i = 0; i < m.n; ++i) alpha.push_back(complex_json(m.alpha(i)));
    g["alpha"] = std::move(alpha);
    for (const char* key : {"S_plus", "S_minus"}) {
      const CMat& S = (key[2] == 'p') ? m.S_plus : m.S_minus;
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (int r = 0; r < m.n; ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int c = 0; c < m.n; ++c) row.push_back(complex_json(S(r, c)));
        rows.push_back(std::move(row));
      }
      g[key] = std::move(rows);
    }
    model["generic"] = std::move(g);
  } else {
    nlohmann::ordered_json s;
    const SphericalModel& sm = cfg.spherical;
    s["alpha_norm"] = sm.alpha_norm;
    s["s_plus"] = sm.s_plus;
    s["s_minus"] = sm.s_minus;
    nlohmann::ordered_json gp = nlohmann::ordered_json::array();
    for (cx z : sm.g_plus) gp.push_back(complex_json(z));
    s["g_plus"] = std::move(gp);
    nlohmann::ordered_json gm = nlohmann::ordered_json::array();
    for (cx z : sm.g_minus) gm.push_back(complex_json(z));
    s["g_minus"] = std::move(gm);
    s["eta"] = sm.eta;
    s["delta"] = sm.delta;
    s["omega0"] = sm.omega0;
    s["c_light"] = sm.c_light;
    model["spherical"] = std::move(s);
  }
  root["model"] = std::move(model);

  nlohmann::ordered_json drive;
  if (!cfg.is_spherical) {
    nlohmann::ordered_json lambda = nlohmann::ordered_json::array();
    for (int i = 0; i < cfg.generic.n; ++i) lambda.push_back(complex_json(cfg.drive.lambda(i)));
    drive["lambda"] = std::move(lambda);
    drive["omega"] = cfg.drive.omega;
  } else if (cfg.has_scan) {
    nlohmann::ordered_json sc;
    if (cfg.scan.in_x) {
      sc["x_min"] = cfg.scan.min;
      sc["x_max"] = cfg.scan.max;
    } else {
      sc["min"] = cfg.scan.min;
      sc["max"] = cfg.scan.max;
    }
    sc["points"] = cfg.scan.points;
    drive["omega_scan"] = std::move(sc);
  } else {
    drive["omega"] = cfg.spherical.omega;
  }
  root["drive"] = std::move(drive);

  nlohmann::ordered_json run;
  if (!cfg.run.command.empty()) run["command"] = cfg.run.command;
  if (cfg.run.t_end >= 0.0) run["t_end"] = cfg.run.t_end;
  if (cfg.run.h > 0.0) run["h"] = cfg.run.h;
  if (cfg.run.dt > 0.0) run["dt"] = cfg.run.dt;
  run["n_traj"] = cfg.run.n_traj;
  run["n_samples"] = cfg.run.n_samples;
  run["n_models"] = cfg.run.n_models;
  if (cfg.run.has_seed) run["seed"] = cfg.run.seed;
  if (!cfg.run.out.empty()) run["out"] = cfg.run.out;
  run["format"] = cfg.run.format;
  nlohmann::ordered_json th;
  th["min"] = cfg.run.theta.min;
  th["max"] = cfg.run.theta.max;
  th["points"] = cfg.run.theta.points;
  run["theta"] = std::move(th);
  nlohmann::ordered_json init;
  init["u"] = cfg.run.initial.u;
  init["v"] = complex_json(cfg.run.initial.v);
  run["initial"] = std::move(init);
  root["run"] = std::move(run);
  return root.dump(2) + "\n";
}

std::uint64_t config_hash(const RunConfig& cfg) {
  const std::string s = serialize_config(cfg);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash_hex(const RunConfig& cfg) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  return buf;
}

}  // namespace fluxatom
