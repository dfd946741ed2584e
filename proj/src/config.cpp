#include "lrlab/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

namespace lrlab {

std::vector<double> TimeGrid::samples() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = start;
    return out;
  }
  for (int k = 0; k < points; ++k) {
    out[static_cast<std::size_t>(k)] = start + (stop - start) * k / (points - 1);
  }
  out.back() = stop;
  return out;
}

namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": must be an object");
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError(join(path, key) + ": unknown key");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path + ": must be finite");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path + ": must be an integer");
  const auto v = j.get<long long>();
  if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(path + ": out of range");
  return static_cast<int>(v);
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": must be a string");
  return j.get<std::string>();
}

ModelParams parse_model(const json& j) {
  require_object(j, "model");
  allow_keys(j, "model", {"name", "length", "h0", "h1", "truncation", "norm"});
  if (!j.contains("name")) throw ConfigError("model.name: required");
  if (!j.contains("length")) throw ConfigError("model.length: required");
  ModelParams m;
  m.name = text(j["name"], "model.name");
  if (m.name != "tfim" && m.name != "commuting_ising" && m.name != "dicke_chain") {
    throw ConfigError("model.name: unknown model '" + m.name + "'");
  }
  m.length = integer(j["length"], "model.length");
  if (m.length < 2) throw ConfigError("model.length: must be >= 2");
  for (const char* key : {"h0", "h1"}) {
    if (!j.contains(key)) continue;
    const double v = number(j[key], std::string("model.") + key);
    if (v < 0.0) throw ConfigError(std::string("model.") + key + ": " + key + " must be nonnegative");
    (std::string(key) == "h0" ? m.h0 : m.h1) = v;
  }
  if (j.contains("truncation")) {
    m.truncation = integer(j["truncation"], "model.truncation");
    if (m.truncation < 2) throw ConfigError("model.truncation: truncation must be ≥ 2");
  }
  if (j.contains("norm")) {
    const std::string norm = text(j["norm"], "model.norm");
    if (norm == "full") {
      m.norm_mode = CommutatorNorm::full;
    } else if (norm == "interior") {
      m.norm_mode = CommutatorNorm::interior;
    } else {
      throw ConfigError("model.norm: must be \"full\" or \"interior\"");
    }
  }
  return m;
}

ObservablePlacement parse_placement(const json& j, const std::string& path, bool single) {
  require_object(j, path);
  if (single) {
    allow_keys(j, path, {"op", "site"});
  } else {
    allow_keys(j, path, {"op", "sites"});
  }
  if (!j.contains("op")) throw ConfigError(path + ".op: required");
  ObservablePlacement p;
  p.op = text(j["op"], path + ".op");
  if (single) {
    if (!j.contains("site")) throw ConfigError(path + ".site: required");
    p.sites.push_back(integer(j["site"], path + ".site"));
  } else {
    if (!j.contains("sites")) throw ConfigError(path + ".sites: required");
    const json& sites = j["sites"];
    if (!sites.is_array() || sites.empty()) {
      throw ConfigError(path + ".sites: must be a nonempty array");
    }
    for (std::size_t k = 0; k < sites.size(); ++k) {
      p.sites.push_back(integer(sites[k], path + ".sites[" + std::to_string(k) + "]"));
    }
  }
  for (int s : p.sites) {
    if (s < 0) throw ConfigError(path + ": site ids must be nonnegative");
  }
  return p;
}

}  // namespace

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  allow_keys(doc, "", {"model", "lambda", "time_grid", "observables", "output", "tolerances",
                       "methods", "bound_method", "bound_scale", "simulation"});
  if (!doc.contains("model")) throw ConfigError("model: required");
  RunConfig cfg;
  cfg.model = parse_model(doc["model"]);

  if (doc.contains("lambda")) {
    const double l = number(doc["lambda"], "lambda");
    if (!(l > 0.0)) throw ConfigError("lambda: must be positive");
    cfg.lambda = l;
  }
  if (doc.contains("time_grid")) {
    const json& g = doc["time_grid"];
    require_object(g, "time_grid");
    allow_keys(g, "time_grid", {"start", "stop", "points"});
    if (g.contains("start")) cfg.time_grid.start = number(g["start"], "time_grid.start");
    if (g.contains("stop")) cfg.time_grid.stop = number(g["stop"], "time_grid.stop");
    if (g.contains("points")) cfg.time_grid.points = integer(g["points"], "time_grid.points");
    if (cfg.time_grid.points < 1) throw ConfigError("time_grid.points: must be >= 1");
    if (cfg.time_grid.stop < cfg.time_grid.start) {
      throw ConfigError("time_grid.stop: must not be below time_grid.start");
    }
  }
  if (doc.contains("observables")) {
    const json& o = doc["observables"];
    require_object(o, "observables");
    allow_keys(o, "observables", {"p", "q"});
    if (o.contains("p")) cfg.p = parse_placement(o["p"], "observables.p", true);
    if (o.contains("q")) cfg.q = parse_placement(o["q"], "observables.q", false);
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    require_object(o, "output");
    allow_keys(o, "output", {"dir"});
    if (o.contains("dir")) {
      const std::string dir = text(o["dir"], "output.dir");
      if (dir.empty()) throw ConfigError("output.dir: must not be empty");
      cfg.output_dir = dir;
    }
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    require_object(t, "tolerances");
    allow_keys(t, "tolerances", {"series_tol", "velocity_threshold", "margin_slack", "chain_n_max"});
    auto positive = [&](const char* key, double& slot) {
      if (!t.contains(key)) return;
      const std::string path = std::string("tolerances.") + key;
      slot = number(t[key], path);
      if (!(slot > 0.0)) throw ConfigError(path + ": must be positive");
    };
    positive("series_tol", cfg.tolerances.series_tol);
    positive("velocity_threshold", cfg.tolerances.velocity_threshold);
    if (t.contains("margin_slack")) {
      cfg.tolerances.margin_slack = number(t["margin_slack"], "tolerances.margin_slack");
      if (cfg.tolerances.margin_slack < 0.0) {
        throw ConfigError("tolerances.margin_slack: must be nonnegative");
      }
    }
    if (t.contains("chain_n_max")) {
      const int n = integer(t["chain_n_max"], "tolerances.chain_n_max");
      if (n < 0) throw ConfigError("tolerances.chain_n_max: must be nonnegative");
      cfg.tolerances.chain_n_max = n;
    }
  }
  if (doc.contains("methods")) {
    const json& m = doc["methods"];
    if (!m.is_array() || m.empty()) throw ConfigError("methods: must be a nonempty array");
    cfg.methods.clear();
    for (std::size_t k = 0; k < m.size(); ++k) {
      const std::string path = "methods[" + std::to_string(k) + "]";
      try {
        cfg.methods.push_back(parse_bound_method(text(m[k], path)));
      } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
      }
    }
  }
  if (doc.contains("bound_method")) {
    try {
      cfg.bound_method = parse_bound_method(text(doc["bound_method"], "bound_method"));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("bound_method: ") + e.what());
    }
  }
  if (doc.contains("bound_scale")) {
    cfg.bound_scale = number(doc["bound_scale"], "bound_scale");
    if (!(cfg.bound_scale > 0.0)) throw ConfigError("bound_scale: must be positive");
  }
  if (doc.contains("simulation")) {
    const json& s = doc["simulation"];
    require_object(s, "simulation");
    allow_keys(s, "simulation", {"max_initial_occupation"});
    if (s.contains("max_initial_occupation")) {
      const int v = integer(s["max_initial_occupation"], "simulation.max_initial_occupation");
      if (v < 0) throw ConfigError("simulation.max_initial_occupation: must be nonnegative");
      cfg.max_initial_occupation = v;
    }
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

ResolvedObservables resolve_observables(const TwoFamilyHamiltonian& h, const RunConfig& cfg) {
  const bool dicke = cfg.model.name == "dicke_chain";
  const int first_mode = dicke ? dicke_mode_site(cfg.model.length, 0) : 0;
  const ObservablePlacement p =
      cfg.p ? *cfg.p : ObservablePlacement{dicke ? "p" : "Z", {dicke ? first_mode : 0}};
  ResolvedObservables out{site_observable(h, p.op, p.sites.front()), {}};
  if (cfg.q) {
    for (int s : cfg.q->sites) out.q.push_back(site_observable(h, cfg.q->op, s));
    return out;
  }
  const int R = h.locality_radius();
  const auto kind = h.site_kinds()[static_cast<std::size_t>(p.sites.front())];
  for (int s = 0; s < h.graph().site_count(); ++s) {
    if (h.site_kinds()[static_cast<std::size_t>(s)] != kind) continue;
    if (h.graph().distance(p.sites.front(), s) <= R) continue;
    out.q.push_back(site_observable(h, kind == SiteKind::spin ? "Z" : "x", s));
  }
  return out;
}

}  // namespace lrlab
