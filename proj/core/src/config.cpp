#include "lgp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lgp {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "sigma_se",        "lengthscales",      "sigma_y",
    "r_star",          "r",                 "l_u",
    "grid_margin",     "max_grid_centers",  "jitter_initial",
    "jitter_max",      "jitter_growth",     "allow_general_prior",
    "compensated_summation", "dense_cap",   "workers",
};

double as_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config: '" + key + "' must be a number");
  return j.get<double>();
}

}  // namespace

HyperParams RunConfig::hyperparams(int d) const {
  HyperParams hp;
  hp.sigma_se = sigma_se;
  hp.sigma_y = sigma_y;
  hp.r = effective_r();
  hp.r_star = r_star;
  if (lengthscales.size() == 1) {
    hp.lengthscales = Eigen::VectorXd::Constant(d, lengthscales[0]);
  } else if (static_cast<int>(lengthscales.size()) == d) {
    hp.lengthscales =
        Eigen::Map<const Eigen::VectorXd>(lengthscales.data(), d);
  } else {
    std::ostringstream msg;
    msg << "config: " << lengthscales.size() << " lengthscales for "
        << d << "-dimensional data";
    throw ConfigError(msg.str());
  }
  hp.validate(!allow_general_prior);
  return hp;
}

void RunConfig::validate() const {
  if (!(sigma_se > 0)) throw ConfigError("config: sigma_se must be positive");
  if (!(sigma_y > 0)) throw ConfigError("config: sigma_y must be positive");
  if (lengthscales.empty()) throw ConfigError("config: lengthscales are empty");
  for (double l : lengthscales) {
    if (!(l > 0)) throw ConfigError("config: lengthscales must be positive");
  }
  if (!(r_star > 0)) throw ConfigError("config: r_star must be positive");
  if (r > 0 && !allow_general_prior && r < 2.0 * r_star) {
    throw ConfigError(
        "config: r < 2*r_star requires allow_general_prior (the general "
        "prior formula)");
  }
  if (!(l_u > 0)) throw ConfigError("config: l_u must be positive");
  if (max_grid_centers < 1) throw ConfigError("config: max_grid_centers must be >= 1");
  if (!(jitter.initial > 0) || !(jitter.max >= jitter.initial) || !(jitter.growth > 1)) {
    throw ConfigError("config: jitter policy must satisfy 0 < initial <= max, growth > 1");
  }
  if (dense_cap < 1) throw ConfigError("config: dense_cap must be >= 1");
  if (workers < 1) throw ConfigError("config: workers must be >= 1");
}

RunConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!kKnownKeys.count(key)) {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }

  RunConfig cfg;
  if (j.contains("sigma_se")) cfg.sigma_se = as_number(j["sigma_se"], "sigma_se");
  if (j.contains("sigma_y")) cfg.sigma_y = as_number(j["sigma_y"], "sigma_y");
  if (j.contains("lengthscales")) {
    const json& ls = j["lengthscales"];
    cfg.lengthscales.clear();
    if (ls.is_number()) {
      cfg.lengthscales.push_back(ls.get<double>());
    } else if (ls.is_array() && !ls.empty()) {
      for (const json& v : ls) cfg.lengthscales.push_back(as_number(v, "lengthscales"));
    } else {
      throw ConfigError("config: 'lengthscales' must be a number or nonempty array");
    }
  }
  if (j.contains("r_star")) cfg.r_star = as_number(j["r_star"], "r_star");
  if (j.contains("r")) cfg.r = as_number(j["r"], "r");
  if (j.contains("l_u")) cfg.l_u = as_number(j["l_u"], "l_u");
  if (j.contains("grid_margin")) cfg.grid_margin = as_number(j["grid_margin"], "grid_margin");
  if (j.contains("max_grid_centers")) {
    cfg.max_grid_centers = j["max_grid_centers"].get<std::int64_t>();
  }
  if (j.contains("jitter_initial")) cfg.jitter.initial = as_number(j["jitter_initial"], "jitter_initial");
  if (j.contains("jitter_max")) cfg.jitter.max = as_number(j["jitter_max"], "jitter_max");
  if (j.contains("jitter_growth")) cfg.jitter.growth = as_number(j["jitter_growth"], "jitter_growth");
  if (j.contains("allow_general_prior")) {
    if (!j["allow_general_prior"].is_boolean()) {
      throw ConfigError("config: 'allow_general_prior' must be a boolean");
    }
    cfg.allow_general_prior = j["allow_general_prior"].get<bool>();
  }
  if (j.contains("compensated_summation")) {
    if (!j["compensated_summation"].is_boolean()) {
      throw ConfigError("config: 'compensated_summation' must be a boolean");
    }
    cfg.compensated_summation = j["compensated_summation"].get<bool>();
  }
  if (j.contains("dense_cap")) cfg.dense_cap = j["dense_cap"].get<std::int64_t>();
  if (j.contains("workers")) cfg.workers = j["workers"].get<int>();

  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str());
}

std::string to_json(const RunConfig& config) {
  json j;
  j["sigma_se"] = config.sigma_se;
  j["lengthscales"] = config.lengthscales;
  j["sigma_y"] = config.sigma_y;
  j["r_star"] = config.r_star;
  j["r"] = config.effective_r();
  j["l_u"] = config.l_u;
  j["grid_margin"] = config.effective_margin();
  j["max_grid_centers"] = config.max_grid_centers;
  j["jitter_initial"] = config.jitter.initial;
  j["jitter_max"] = config.jitter.max;
  j["jitter_growth"] = config.jitter.growth;
  j["allow_general_prior"] = config.allow_general_prior;
  j["compensated_summation"] = config.compensated_summation;
  j["dense_cap"] = config.dense_cap;
  j["workers"] = config.workers;
  return j.dump(2);
}

}  // namespace lgp
