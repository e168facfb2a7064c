#include "tailidx/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tailidx/error.hpp"

namespace tailidx {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void reject_unknown(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError(join(path, it.key()), "unknown field");
  }
}

const json& require(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(join(path, key), "missing required field");
  return j.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  return j.get<double>();
}

std::size_t count(const json& j, const std::string& field) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw ConfigError(field, "expected a non-negative integer");
  if (j.is_number_integer() && j.get<long long>() < 0) throw ConfigError(field, "expected a non-negative integer");
  return j.get<std::size_t>();
}

double number_or(const json& j, const std::string& path, const std::string& key, double fallback) {
  return j.contains(key) ? number(j.at(key), join(path, key)) : fallback;
}

const json& array(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "expected an array");
  return j;
}

}  // namespace

json to_json(const DistributionSpec& d) {
  json j;
  j["family"] = std::string(family_name(d.family()));
  std::visit(
      [&j](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, family::StudentT>) {
          j["nu"] = p.nu;
        } else if constexpr (std::is_same_v<T, family::Burr>) {
          j["beta"] = p.beta;
          j["tau"] = p.tau;
          j["lambda"] = p.lambda;
        } else if constexpr (std::is_same_v<T, family::Frechet>) {
          j["gamma"] = p.gamma;
        } else if constexpr (std::is_same_v<T, family::Weibull>) {
          j["lambda"] = p.lambda;
          j["tau"] = p.tau;
        } else if constexpr (std::is_same_v<T, family::ReversedBurr>) {
          j["beta"] = p.beta;
          j["tau"] = p.tau;
          j["lambda"] = p.lambda;
          j["x_plus"] = p.x_plus;
        }
      },
      d.params());
  return j;
}

DistributionSpec distribution_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const auto& fam = require(j, path, "family");
  if (!fam.is_string()) throw ConfigError(join(path, "family"), "expected a string");
  Family f;
  try {
    f = parse_family(fam.get<std::string>());
  } catch (const DomainError& e) {
    throw ConfigError(join(path, "family"), e.what());
  }
  auto num = [&](const char* key) { return number(require(j, path, key), join(path, key)); };
  try {
    switch (f) {
      case Family::StudentT:
        reject_unknown(j, path, {"family", "nu"});
        return DistributionSpec::student_t(num("nu"));
      case Family::Burr:
        reject_unknown(j, path, {"family", "beta", "tau", "lambda"});
        return DistributionSpec::burr(num("beta"), num("tau"), num("lambda"));
      case Family::Frechet:
        reject_unknown(j, path, {"family", "gamma"});
        return DistributionSpec::frechet(num("gamma"));
      case Family::LogNormal:
        reject_unknown(j, path, {"family"});
        return DistributionSpec::lognormal();
      case Family::Weibull:
        reject_unknown(j, path, {"family", "lambda", "tau"});
        return DistributionSpec::weibull(number_or(j, path, "lambda", 1.0), number_or(j, path, "tau", 2.0));
      case Family::Uniform01:
        reject_unknown(j, path, {"family"});
        return DistributionSpec::uniform01();
      case Family::ReversedBurr:
        reject_unknown(j, path, {"family", "beta", "tau", "lambda", "x_plus"});
        return DistributionSpec::reversed_burr(num("beta"), num("tau"), num("lambda"),
                                               number_or(j, path, "x_plus", 2.0));
    }
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(join(path, "family"), "unsupported family");
}

json to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["n"] = s.n;
  j["replications"] = s.replications;
  j["k_grid"] = s.k_grid;
  j["alpha_set"] = s.alpha_set;
  json est = json::array();
  for (auto e : s.estimators) est.push_back(std::string(estimator_name(e)));
  j["estimators"] = est;
  j["base_seed"] = s.base_seed;
  j["epsilon"] = s.mixture.epsilon;
  j["base"] = to_json(s.mixture.base);
  j["contaminant"] = to_json(s.mixture.contaminant);
  return j;
}

Scenario scenario_from_json(const json& doc) {
  if (doc.is_object() && doc.contains("scenario")) return scenario_from_json(doc.at("scenario"));
  if (!doc.is_object()) throw ConfigError("", "scenario document must be a JSON object");
  reject_unknown(doc, "", {"name", "n", "replications", "k_grid", "alpha_set", "estimators", "base_seed", "epsilon",
                           "base", "contaminant"});

  const auto base = distribution_from_json(require(doc, "", "base"), "base");
  const auto contaminant = doc.contains("contaminant") ? distribution_from_json(doc.at("contaminant"), "contaminant") : base;
  const double eps = number_or(doc, "", "epsilon", 0.0);
  if (!(eps >= 0.0 && eps < 1.0)) throw ConfigError("epsilon", "must lie in [0, 1)");
  if (eps > 0.0 && !doc.contains("contaminant")) throw ConfigError("contaminant", "required when epsilon > 0");

  Scenario s(MixtureSpec(base, contaminant, eps));
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ConfigError("name", "expected a string");
    s.name = doc.at("name").get<std::string>();
  }
  s.n = count(require(doc, "", "n"), "n");
  if (doc.contains("replications")) s.replications = count(doc.at("replications"), "replications");
  if (doc.contains("base_seed")) {
    const auto& v = doc.at("base_seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ConfigError("base_seed", "expected a non-negative integer");
    }
    s.base_seed = v.get<std::uint64_t>();
  }
  if (doc.contains("k_grid")) {
    const auto& a = array(doc.at("k_grid"), "k_grid");
    s.k_grid.clear();
    for (std::size_t i = 0; i < a.size(); ++i) s.k_grid.push_back(count(a[i], "k_grid[" + std::to_string(i) + "]"));
  }
  if (doc.contains("alpha_set")) {
    const auto& a = array(doc.at("alpha_set"), "alpha_set");
    s.alpha_set.clear();
    for (std::size_t i = 0; i < a.size(); ++i) s.alpha_set.push_back(number(a[i], "alpha_set[" + std::to_string(i) + "]"));
  }
  if (doc.contains("estimators")) {
    const auto& a = array(doc.at("estimators"), "estimators");
    s.estimators.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string field = "estimators[" + std::to_string(i) + "]";
      if (!a[i].is_string()) throw ConfigError(field, "expected a string");
      try {
        s.estimators.push_back(parse_estimator(a[i].get<std::string>()));
      } catch (const DomainError& e) {
        throw ConfigError(field, e.what());
      }
    }
  }
  s.validate();
  return s;
}

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return scenario_from_json(doc);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace tailidx
