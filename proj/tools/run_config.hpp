#pragma once

// Flat run configuration shared by every CLI subcommand. Loaded from a JSON
// object with snake_case keys; command-line flags override file values.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "adiabatic_chain/chain_model.hpp"
#include "adiabatic_chain/csv_io.hpp"
#include "json.hpp"

namespace adiabatic_chain::cli {

/// Bad configuration content (exit code 2).
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output (exit code 3).
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig
{
  int n_sites = 5;
  double coupling = 1.0;
  double mu_a_max = 20.0;
  double mu_b_max = 20.0;
  double alpha_over_tau = 5.0;
  double tau = 500.0;
  int n_steps = 0; ///< 0 selects the default step count
  std::uint64_t seed = 1;
  double delta = 0.0;
  int n_samples = 20;
  std::string out;
  std::string format = "csv";

  /// Keys given explicitly by file or flag; figure defaults apply elsewhere.
  std::set<std::string> explicit_keys;

  bool is_set(const std::string& key) const { return explicit_keys.count(key) > 0; }

  ChainSpec chain() const { return ChainSpec::uniform(n_sites, coupling); }
  PulseSchedule schedule() const { return PulseSchedule{mu_a_max, mu_b_max, alpha_over_tau / tau, tau}; }

  void validate() const
  {
    auto fail = [](const std::string& what) { throw ConfigError("invalid configuration: " + what); };
    if (n_sites < 2)
      fail("n_sites must be >= 2");
    if (!(std::isfinite(coupling) && coupling > 0.0))
      fail("coupling must be > 0");
    if (!(std::isfinite(mu_a_max) && mu_a_max >= 0.0) || !(std::isfinite(mu_b_max) && mu_b_max >= 0.0))
      fail("mu_a_max and mu_b_max must be >= 0");
    if (!(std::isfinite(alpha_over_tau) && alpha_over_tau > 0.0))
      fail("alpha_over_tau must be > 0");
    if (!(std::isfinite(tau) && tau > 0.0))
      fail("tau must be > 0");
    if (n_steps < 0)
      fail("n_steps must be >= 0 (0 = default)");
    if (!(std::isfinite(delta) && delta >= 0.0 && delta < 1.0))
      fail("delta must lie in [0, 1)");
    if (n_samples < 1)
      fail("n_samples must be >= 1");
    if (format != "csv" && format != "json")
      fail("format must be csv or json");
  }

  Metadata metadata() const
  {
    return {{"config.n_sites", std::to_string(n_sites)},
            {"config.coupling", format_number(coupling)},
            {"config.mu_a_max", format_number(mu_a_max)},
            {"config.mu_b_max", format_number(mu_b_max)},
            {"config.alpha_over_tau", format_number(alpha_over_tau)},
            {"config.tau", format_number(tau)},
            {"config.n_steps", std::to_string(n_steps)},
            {"config.seed", std::to_string(seed)},
            {"config.delta", format_number(delta)},
            {"config.n_samples", std::to_string(n_samples)}};
  }

  nlohmann::ordered_json to_json() const
  {
    nlohmann::ordered_json j;
    j["n_sites"] = n_sites;
    j["coupling"] = coupling;
    j["mu_a_max"] = mu_a_max;
    j["mu_b_max"] = mu_b_max;
    j["alpha_over_tau"] = alpha_over_tau;
    j["tau"] = tau;
    j["n_steps"] = n_steps;
    j["seed"] = seed;
    j["delta"] = delta;
    j["n_samples"] = n_samples;
    return j;
  }
};

namespace detail {

template <typename T>
T json_number(const nlohmann::json& v, const std::string& key)
{
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer())
      throw ConfigError("config key '" + key + "' must be an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_unsigned())
        return v.get<T>();
      if (v.get<std::int64_t>() < 0)
        throw ConfigError("config key '" + key + "' must be non-negative");
    }
    return v.get<T>();
  } else {
    if (!v.is_number())
      throw ConfigError("config key '" + key + "' must be a number");
    return v.get<T>();
  }
}

} // namespace detail

/// Applies a flat JSON object onto `config`. Unknown keys are rejected.
inline void apply_json(RunConfig& config, const nlohmann::json& doc)
{
  if (!doc.is_object())
    throw ConfigError("config must be a flat JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "n_sites")
      config.n_sites = detail::json_number<int>(value, key);
    else if (key == "coupling")
      config.coupling = detail::json_number<double>(value, key);
    else if (key == "mu_a_max")
      config.mu_a_max = detail::json_number<double>(value, key);
    else if (key == "mu_b_max")
      config.mu_b_max = detail::json_number<double>(value, key);
    else if (key == "alpha_over_tau")
      config.alpha_over_tau = detail::json_number<double>(value, key);
    else if (key == "tau")
      config.tau = detail::json_number<double>(value, key);
    else if (key == "n_steps")
      config.n_steps = detail::json_number<int>(value, key);
    else if (key == "seed")
      config.seed = detail::json_number<std::uint64_t>(value, key);
    else if (key == "delta")
      config.delta = detail::json_number<double>(value, key);
    else if (key == "n_samples")
      config.n_samples = detail::json_number<int>(value, key);
    else if (key == "out") {
      if (!value.is_string())
        throw ConfigError("config key 'out' must be a string");
      config.out = value.get<std::string>();
    } else if (key == "format") {
      if (!value.is_string())
        throw ConfigError("config key 'format' must be a string");
      config.format = value.get<std::string>();
    } else
      throw ConfigError("unknown config key '" + key + "'");
    config.explicit_keys.insert(key);
  }
}

inline void apply_json_text(RunConfig& config, const std::string& text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  apply_json(config, doc);
}

inline void apply_json_file(RunConfig& config, const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_json_text(config, buf.str());
}

} // namespace adiabatic_chain::cli
