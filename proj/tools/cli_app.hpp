#pragma once

// adiabatic-chain evolve|gap|figure|sweep [flags] [--config path]
//
// Exit codes: 0 success, 1 computation failure, 2 invalid configuration or
// arguments, 3 I/O failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adiabatic_chain/adiabatic_chain.hpp"
#include "json.hpp"
#include "run_config.hpp"

namespace adiabatic_chain::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_validation = 2;
inline constexpr int exit_io = 3;

/// Command-line values; unset optionals leave the config untouched.
struct FlagValues
{
  std::string config_path;
  std::optional<int> n_sites;
  std::optional<double> coupling;
  std::optional<double> mu_a_max;
  std::optional<double> mu_b_max;
  std::optional<double> alpha_over_tau;
  std::optional<double> tau;
  std::optional<int> n_steps;
  std::optional<std::uint64_t> seed;
  std::optional<double> delta;
  std::optional<int> n_samples;
  std::optional<std::string> out;
  std::optional<std::string> format;

  // figure / sweep specific
  std::string figure_id;
  std::vector<int> n_list;
  std::vector<double> mu0_list;
  std::vector<double> alpha_list;
  std::vector<double> mu_list;
  std::vector<double> mu_b_list;
  std::vector<double> delta_list;
  std::optional<double> target;
  double steps_per_time = 20.0;
  int n_grid = 2001;
  int points = 501;
  std::string sweep_param;
  std::vector<double> sweep_values;
};

inline RunConfig resolve_config(const FlagValues& flags)
{
  RunConfig config;
  if (!flags.config_path.empty())
    apply_json_file(config, flags.config_path);
  auto take = [&config](const auto& flag, auto& field, const char* key) {
    if (flag) {
      field = *flag;
      config.explicit_keys.insert(key);
    }
  };
  take(flags.n_sites, config.n_sites, "n_sites");
  take(flags.coupling, config.coupling, "coupling");
  take(flags.mu_a_max, config.mu_a_max, "mu_a_max");
  take(flags.mu_b_max, config.mu_b_max, "mu_b_max");
  take(flags.alpha_over_tau, config.alpha_over_tau, "alpha_over_tau");
  take(flags.tau, config.tau, "tau");
  take(flags.n_steps, config.n_steps, "n_steps");
  take(flags.seed, config.seed, "seed");
  take(flags.delta, config.delta, "delta");
  take(flags.n_samples, config.n_samples, "n_samples");
  take(flags.out, config.out, "out");
  take(flags.format, config.format, "format");
  config.validate();
  return config;
}

namespace detail {

inline std::ofstream open_output(const std::string& path)
{
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
    throw IoError("cannot open output file '" + path + "'");
  return os;
}

inline void finish_output(std::ofstream& os, const std::string& path)
{
  os.flush();
  if (!os)
    throw IoError("failed writing output file '" + path + "'");
}

inline nlohmann::ordered_json table_json(const SweepResult& table)
{
  nlohmann::ordered_json j;
  j["name"] = table.name;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.metadata)
    meta[k] = v;
  j["metadata"] = meta;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  return j;
}

inline std::string default_out(const RunConfig& config, const std::string& stem)
{
  if (!config.out.empty())
    return config.out;
  return stem + (config.format == "json" ? ".json" : ".csv");
}

inline ChainSpec chain_for(const RunConfig& config)
{
  const ChainSpec clean = config.chain();
  if (config.delta == 0.0)
    return clean;
  return disordered_chain(clean, DisorderSpec{config.delta, config.seed, 1}, 0);
}

struct FigureOutput
{
  SweepResult primary;
  std::vector<SweepResult> extras;
};

inline std::vector<double> range(double first, double last, double step)
{
  std::vector<double> v;
  const int count = static_cast<int>(std::floor((last - first) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i)
    v.push_back(first + i * step);
  return v;
}

inline FigureOutput run_figure(const std::string& id, const RunConfig& config, const FlagValues& flags)
{
  const ChainSpec chain = config.chain();
  const double mu0 = config.mu_a_max;
  FigureOutput out;

  if (id == "2b") {
    out.primary = spectrum_trace(chain_for(config), config.schedule(), flags.points);
  } else if (id == "3a") {
    const auto mu0s = flags.mu0_list.empty() ? std::vector<double>{16, 20, 24} : flags.mu0_list;
    const auto ns = flags.n_list.empty() ? std::vector<int>{5, 6, 7, 8, 9, 10} : flags.n_list;
    auto res = gap_vs_n(mu0s, ns, config.alpha_over_tau, config.tau, config.coupling, flags.n_grid);
    out.primary = std::move(res.table);
    out.extras.push_back(std::move(res.fits));
  } else if (id == "3b") {
    const auto alphas = flags.alpha_list.empty() ? range(1.0, 15.0, 0.5) : flags.alpha_list;
    out.primary = gap_vs_alpha(chain, mu0, alphas, config.tau, flags.n_grid);
  } else if (id == "4c") {
    const auto alphas = flags.alpha_list.empty() ? range(3.0, 7.0, 0.25) : flags.alpha_list;
    out.primary = fidelity_vs_alpha(chain, mu0, config.tau, alphas, config.n_steps);
  } else if (id == "5") {
    const auto ns = flags.n_list.empty() ? std::vector<int>{5, 6, 7, 8, 9, 10} : flags.n_list;
    TimeSearchOptions opt;
    opt.coupling = config.coupling;
    opt.target = flags.target.value_or(0.995);
    opt.steps_per_unit_time = flags.steps_per_time;
    auto res = min_time_for_fidelity(ns, mu0, config.alpha_over_tau, opt);
    out.primary = std::move(res.table);
    SweepResult fit;
    fit.name = "quadratic_fit";
    fit.columns = {"a", "b", "c", "residual_rms", "r_squared"};
    fit.rows.push_back({res.fit.a, res.fit.b, res.fit.c, res.fit.residual_rms, res.fit.r_squared});
    out.extras.push_back(std::move(fit));
  } else if (id == "6") {
    const auto mu_a = flags.mu_list.empty() ? range(10.0, 25.0, 2.5) : flags.mu_list;
    const auto mu_b = flags.mu_b_list.empty() ? mu_a : flags.mu_b_list;
    const double tau = config.is_set("tau") ? config.tau : 1000.0;
    out.primary = fidelity_grid(chain, mu_a, mu_b, tau, config.alpha_over_tau, config.n_steps);
  } else if (id == "7") {
    const auto deltas = flags.delta_list.empty() ? std::vector<double>{0.1, 0.2, 0.3} : flags.delta_list;
    auto res = disorder_ensemble(chain, config.schedule(), deltas, config.n_samples, config.seed, config.n_steps);
    out.primary = std::move(res.samples);
    out.extras.push_back(std::move(res.summary));
  } else {
    throw ConfigError("unknown figure id '" + id + "' (expected one of 2b, 3a, 3b, 4c, 5, 6, 7)");
  }
  return out;
}

inline SweepResult run_sweep(const RunConfig& config, const FlagValues& flags)
{
  static const std::vector<std::string> known = {
    "alpha-over-tau", "tau", "mu0", "mu-a-max", "mu-b-max", "n-sites", "coupling"};
  if (std::find(known.begin(), known.end(), flags.sweep_param) == known.end())
    throw ConfigError("unknown sweep parameter '" + flags.sweep_param + "'");
  if (flags.sweep_values.empty())
    throw ConfigError("sweep needs --values");

  SweepResult out;
  out.name = "sweep";
  out.columns = {flags.sweep_param, "fidelity", "t_star", "delta_min", "max_norm_error", "n_steps"};
  out.meta("param", flags.sweep_param);
  out.meta("values", format_list(flags.sweep_values));
  out.meta("n_grid", flags.n_grid);

  std::vector<RunConfig> cells;
  for (double v : flags.sweep_values) {
    RunConfig c = config;
    const std::string& p = flags.sweep_param;
    if (p == "alpha-over-tau")
      c.alpha_over_tau = v;
    else if (p == "tau")
      c.tau = v;
    else if (p == "mu0")
      c.mu_a_max = c.mu_b_max = v;
    else if (p == "mu-a-max")
      c.mu_a_max = v;
    else if (p == "mu-b-max")
      c.mu_b_max = v;
    else if (p == "n-sites") {
      if (v != std::floor(v))
        throw ConfigError("n-sites values must be integers");
      c.n_sites = static_cast<int>(v);
    } else if (p == "coupling")
      c.coupling = v;
    c.validate();
    cells.push_back(std::move(c));
  }

  out.rows.resize(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const RunConfig& c = cells[i];
    const ChainSpec chain = chain_for(c);
    const PulseSchedule schedule = c.schedule();
    const int steps = c.n_steps > 0 ? c.n_steps : default_step_count(schedule);
    const auto tr = evolve(chain, schedule, StateVector::site(chain.n_sites(), 0), steps, steps);
    const auto g = min_gap(chain, schedule, flags.n_grid);
    out.rows[i] = {flags.sweep_values[i], tr.fidelity, g.t_star, g.delta_min, tr.max_norm_error, double(steps)};
  });
  return out;
}

inline void write_table_file(const std::string& path,
                             const RunConfig& config,
                             const SweepResult& primary,
                             const std::vector<SweepResult>& extras,
                             const Metadata& head)
{
  auto os = open_output(path);
  if (config.format == "json") {
    nlohmann::ordered_json j = table_json(primary);
    nlohmann::ordered_json info = nlohmann::ordered_json::object();
    for (const auto& [k, v] : head)
      info[k] = v;
    j["run"] = info;
    j["config"] = config.to_json();
    j["extras"] = nlohmann::ordered_json::array();
    for (const auto& e : extras)
      j["extras"].push_back(table_json(e));
    os << j.dump(2) << '\n';
  } else {
    Metadata meta = head;
    const Metadata cfg = config.metadata();
    meta.insert(meta.end(), cfg.begin(), cfg.end());
    for (const auto& e : extras) {
      const Metadata rows = table_as_metadata(e);
      meta.insert(meta.end(), rows.begin(), rows.end());
    }
    write_sweep_csv(os, primary, meta);
  }
  finish_output(os, path);
}

inline int cmd_evolve(const RunConfig& config, std::ostream& out)
{
  const ChainSpec chain = chain_for(config);
  const PulseSchedule schedule = config.schedule();
  const int steps = config.n_steps > 0 ? config.n_steps : default_step_count(schedule);
  const Trajectory tr =
    evolve(chain, schedule, StateVector::site(chain.n_sites(), 0), steps, default_record_every(steps));

  nlohmann::ordered_json summary;
  summary["fidelity"] = tr.fidelity;
  summary["max_norm_error"] = tr.max_norm_error;
  summary["n_steps"] = tr.n_steps;
  summary["seed"] = config.seed;
  summary["bond_couplings"] = chain.bond_couplings();
  summary["parameters"] = config.to_json();

  const std::string path = default_out(config, "trajectory");
  auto os = open_output(path);
  if (config.format == "json") {
    nlohmann::ordered_json j;
    j["summary"] = summary;
    j["times"] = tr.times;
    j["populations"] = tr.populations;
    os << j.dump(2) << '\n';
    finish_output(os, path);
  } else {
    write_trajectory_csv(os, tr, config.metadata());
    finish_output(os, path);
    const std::string sidecar = path + ".json";
    auto ss = open_output(sidecar);
    ss << summary.dump(2) << '\n';
    finish_output(ss, sidecar);
  }
  out << summary.dump() << '\n';
  return exit_ok;
}

inline int cmd_gap(const RunConfig& config, const FlagValues& flags, std::ostream& out)
{
  const ChainSpec chain = chain_for(config);
  const PulseSchedule schedule = config.schedule();
  const GapMinimum g = min_gap(chain, schedule, flags.n_grid);
  nlohmann::ordered_json j;
  j["t_star"] = g.t_star;
  j["delta_min"] = g.delta_min;
  j["t_star_over_tau"] = g.t_star / schedule.tau;
  j["tau"] = schedule.tau;
  j["n_sites"] = chain.n_sites();
  out << j.dump() << '\n';
  return exit_ok;
}

inline void add_run_flags(CLI::App& sub, FlagValues& f)
{
  sub.add_option("--config", f.config_path, "Flat JSON config file (snake_case keys); flags override it");
  sub.add_option("--n-sites", f.n_sites, "Chain length N (>= 2)");
  sub.add_option("--coupling", f.coupling, "Nominal hopping J (energy unit)");
  sub.add_option("--mu-a-max", f.mu_a_max, "Peak depth of the first-site pulse, in units of J");
  sub.add_option("--mu-b-max", f.mu_b_max, "Peak depth of the last-site pulse, in units of J");
  sub.add_option("--alpha-over-tau", f.alpha_over_tau, "Pulse width as the product alpha * tau");
  sub.add_option("--tau", f.tau, "Total evolution time, in units of 1/J");
  sub.add_option("--n-steps", f.n_steps, "Integrator steps (0 = max(20000, ceil(50 tau mu_max)))");
  sub.add_option("--seed", f.seed, "Disorder seed");
  sub.add_option("--delta", f.delta, "Maximum fractional bond disorder, in [0, 1)");
  sub.add_option("--n-samples", f.n_samples, "Disorder samples per delta");
  sub.add_option("--out", f.out, "Output file");
  sub.add_option("--format", f.format, "Output format: csv or json");
}

} // namespace detail

/// Parses and runs one command. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Adiabatic end-to-end transfer through a driven tight-binding chain.\n"
               "Energies are in units of J, times in units of 1/J (hbar = 1).",
               "adiabatic-chain"};
  app.require_subcommand(1);
  FlagValues flags;

  auto* evolve_cmd = app.add_subcommand("evolve", "Integrate from |1> and write the population trajectory");
  auto* gap_cmd = app.add_subcommand("gap", "Print the minimum ground/first-excited gap as JSON");
  auto* figure_cmd = app.add_subcommand("figure", "Run a figure harness: 2b, 3a, 3b, 4c, 5, 6 or 7");
  auto* sweep_cmd = app.add_subcommand("sweep", "Fidelity and minimum gap over one parameter");
  for (auto* sub : {evolve_cmd, gap_cmd, figure_cmd, sweep_cmd})
    detail::add_run_flags(*sub, flags);
  for (auto* sub : {gap_cmd, figure_cmd, sweep_cmd})
    sub->add_option("--n-grid", flags.n_grid, "Time grid points for the gap search")->check(CLI::Range(3, 10000000));

  figure_cmd->add_option("id", flags.figure_id, "Figure id")->required();
  figure_cmd->add_option("--n-list", flags.n_list, "Chain lengths (3a, 5)")->delimiter(',');
  figure_cmd->add_option("--mu0-list", flags.mu0_list, "Peak depths (3a)")->delimiter(',');
  figure_cmd->add_option("--alpha-list", flags.alpha_list, "alpha * tau values (3b, 4c)")->delimiter(',');
  figure_cmd->add_option("--mu-list", flags.mu_list, "Peak grid for both axes (6)")->delimiter(',');
  figure_cmd->add_option("--mu-b-list", flags.mu_b_list, "Separate grid for the last-site peak (6)")->delimiter(',');
  figure_cmd->add_option("--delta-list", flags.delta_list, "Disorder strengths (7)")->delimiter(',');
  figure_cmd->add_option("--target", flags.target, "Target fidelity (5)");
  figure_cmd->add_option("--steps-per-time", flags.steps_per_time, "Integrator steps per unit time in the tau search (5)");
  figure_cmd->add_option("--points", flags.points, "Time samples (2b)")->check(CLI::Range(2, 10000000));

  sweep_cmd
    ->add_option("--param", flags.sweep_param, "alpha-over-tau, tau, mu0, mu-a-max, mu-b-max, n-sites or coupling")
    ->required();
  sweep_cmd->add_option("--values", flags.sweep_values, "Comma-separated values")->required()->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_validation;
  }

  try {
    const RunConfig config = resolve_config(flags);
    if (*evolve_cmd)
      return detail::cmd_evolve(config, out);
    if (*gap_cmd)
      return detail::cmd_gap(config, flags, out);
    if (*figure_cmd) {
      auto fig = detail::run_figure(flags.figure_id, config, flags);
      const std::string path = detail::default_out(config, "figure_" + flags.figure_id);
      detail::write_table_file(path, config, fig.primary, fig.extras, {{"figure", flags.figure_id}});
      out << path << '\n';
      return exit_ok;
    }
    if (*sweep_cmd) {
      const SweepResult res = detail::run_sweep(config, flags);
      const std::string path = detail::default_out(config, "sweep");
      detail::write_table_file(path, config, res, {}, {{"command", "sweep"}});
      out << path << '\n';
      return exit_ok;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_validation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_validation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_failure;
}

} // namespace adiabatic_chain::cli
