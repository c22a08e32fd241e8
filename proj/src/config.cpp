#include "rht/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rht {

namespace {

using nlohmann::json;

const std::set<std::string>& optional_keys() {
  static const std::set<std::string> keys = {"trust_alphabet", "malicious", "m_bar", "delta_p", "sweep"};
  return keys;
}

const json& require(const json& doc, const std::string& key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError("missing required key '" + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t as_unsigned(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) {
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    throw ConfigError("key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> as_numbers(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("key '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_number(e, key));
  return out;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

const std::vector<std::string>& required_config_keys() {
  static const std::vector<std::string> keys = {
      "n",           "priors",     "p_fa_l", "p_md_l", "trust_pmf_legit", "trust_pmf_malicious",
      "p_fa_m_raw",  "p_md_m_raw", "p_f",    "trials", "seed",            "methods"};
  return keys;
}

ParsedConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    std::string keys;
    for (const auto& k : required_config_keys()) keys += (keys.empty() ? "" : ", ") + k;
    throw ConfigError(std::string("config is not valid JSON (") + e.what() + "); required keys: " + keys);
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  {
    std::vector<std::string> missing;
    for (const auto& k : required_config_keys()) {
      if (!doc.contains(k)) missing.push_back(k);
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& k : missing) list += (list.empty() ? "" : ", ") + k;
      throw ConfigError("missing required key(s): " + list);
    }
  }
  for (const auto& [key, _] : doc.items()) {
    const auto& req = required_config_keys();
    if (std::find(req.begin(), req.end(), key) == req.end() && !optional_keys().count(key)) {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  ParsedConfig parsed;
  parsed.digest = fnv1a_hex(doc.dump());
  ExperimentConfig& cfg = parsed.experiment;
  Scenario& sc = cfg.scenario;

  sc.n = as_unsigned(require(doc, "n"), "n");
  if (sc.n == 0) throw ConfigError("key 'n' must be at least 1");

  const auto priors = as_numbers(require(doc, "priors"), "priors");
  if (priors.size() != 2) throw ConfigError("key 'priors' must hold [Pr(H0), Pr(H1)]");
  sc.priors = {priors[0], priors[1]};
  sc.sensors = {as_number(require(doc, "p_fa_l"), "p_fa_l"), as_number(require(doc, "p_md_l"), "p_md_l")};
  sc.attack = {as_number(require(doc, "p_fa_m_raw"), "p_fa_m_raw"),
               as_number(require(doc, "p_md_m_raw"), "p_md_m_raw"), as_number(require(doc, "p_f"), "p_f")};

  auto legit = as_numbers(require(doc, "trust_pmf_legit"), "trust_pmf_legit");
  auto malicious = as_numbers(require(doc, "trust_pmf_malicious"), "trust_pmf_malicious");
  std::vector<std::string> alphabet;
  if (doc.contains("trust_alphabet")) {
    const auto& a = doc["trust_alphabet"];
    if (!a.is_array()) throw ConfigError("key 'trust_alphabet' must be an array of strings");
    for (const auto& s : a) {
      if (!s.is_string()) throw ConfigError("key 'trust_alphabet' must be an array of strings");
      alphabet.push_back(s.get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < legit.size(); ++i) alphabet.push_back(std::to_string(i));
  }
  sc.trust = TrustModel(std::move(alphabet), std::move(legit), std::move(malicious));

  const std::size_t malicious_count = doc.contains("malicious") ? as_unsigned(doc["malicious"], "malicious") : 0;
  if (malicious_count > sc.n) throw ValidationError("'malicious' exceeds n");
  sc.truth.assign(sc.n, 1);
  cfg.trials = as_unsigned(require(doc, "trials"), "trials");
  set_seed(cfg, as_unsigned(require(doc, "seed"), "seed"), malicious_count);
  cfg.m_bar = doc.contains("m_bar") ? as_number(doc["m_bar"], "m_bar")
                                    : static_cast<double>(malicious_count) / static_cast<double>(sc.n);
  cfg.delta_p = doc.contains("delta_p") ? as_number(doc["delta_p"], "delta_p") : 0.01;

  const auto& methods = require(doc, "methods");
  if (!methods.is_array()) throw ConfigError("key 'methods' must be an array of strings");
  for (const auto& m : methods) {
    if (!m.is_string()) throw ConfigError("key 'methods' must be an array of strings");
    cfg.methods.push_back(MethodSpec::parse(m.get<std::string>()));
  }
  if (doc.contains("sweep")) cfg.sweep = as_numbers(doc["sweep"], "sweep");

  cfg.validate();
  return parsed;
}

void set_seed(ExperimentConfig& config, std::uint64_t seed, std::size_t malicious) {
  config.seed = seed;
  RandomStream placement = RandomStream::derive(seed, "placement");
  config.scenario.truth = place_malicious(config.scenario.n, malicious, placement);
}

void set_seed(ExperimentConfig& config, std::uint64_t seed) {
  set_seed(config, seed, config.scenario.malicious_count());
}

ParsedConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace rht
