#include "tailidx/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tailidx/asymptotics.hpp"
#include "tailidx/config.hpp"
#include "tailidx/error.hpp"
#include "tailidx/estimators.hpp"
#include "tailidx/robustness.hpp"
#include "tailidx/sim_harness.hpp"
#include "tailidx/table_io.hpp"

namespace tailidx {

namespace {

constexpr const char* kSeedEnv = "TAILIDX_SEED";

// Thrown by command bodies to request exit code 2 after output has been written.
struct NonConvergence {};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

struct Output {
  std::string path;
  std::string format = "csv";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--out,-o", path, "Output file (default: standard output)");
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  }

  // Writes the table; returns a short description of the destination.
  std::string write(std::ostream& out, const Table& t, const nlohmann::json& extra = nlohmann::json::object()) const {
    auto emit = [&](std::ostream& os) {
      if (format == "json") {
        write_json(os, t, extra);
      } else {
        write_csv(os, t);
      }
    };
    if (path.empty()) {
      emit(out);
      return "standard output";
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot open output file '" + path + "'");
    emit(f);
    if (!f) throw Error("failed writing '" + path + "'");
    return path;
  }
};

std::size_t j0_for(const std::string& rule, std::size_t k) {
  const std::size_t j0 = rule == "half" ? k / 2 : k / 5;
  return std::max<std::size_t>(j0, 1);
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv(kSeedEnv);
  if (!env || !*env) return fallback;
  std::uint64_t v = 0;
  const std::string s = trim(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(std::string(kSeedEnv) + " is not a non-negative integer: '" + env + "'");
  }
  return v;
}

}  // namespace

std::vector<double> read_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read input file '" + path + "'");
  std::vector<double> x;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto v = parse_double(t);
    if (!v || !std::isfinite(*v)) {
      throw Error(path + ":" + std::to_string(lineno) + ": not a finite decimal number: '" + t + "'");
    }
    x.push_back(*v);
  }
  if (x.empty()) throw Error(path + ": no observations");
  return x;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tail-index estimation: Hill, MB, robust MDPDE (exponential regression and Kim-Lee), "
               "influence diagnostics, asymptotic variances and contamination experiments"};
  app.name("tailidx");
  app.require_subcommand(1);

  // estimate
  std::string input;
  std::string estimator = "MDPDE_ER";
  double alpha = 0.3;
  std::size_t k = 225;
  DpdConfig solver;
  Output est_out;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate the tail index of a data file");
  estimate_cmd->add_option("input", input, "File of newline-separated numbers")->required();
  estimate_cmd->add_option("--estimator,-e", estimator, "Hill, MB, MDPDE_ER or MDPDE_KL")->capture_default_str();
  estimate_cmd->add_option("--alpha,-a", alpha, "DPD tuning parameter")->capture_default_str();
  estimate_cmd->add_option("--k,-k", k, "Number of upper order statistics")->capture_default_str();
  estimate_cmd->add_option("--search-lo", solver.search_lo, "Lower end of the gamma search")->capture_default_str();
  estimate_cmd->add_option("--search-hi", solver.search_hi, "Upper end of the gamma search")->capture_default_str();
  estimate_cmd->add_option("--grid-points", solver.grid_points, "Coarse grid size")->capture_default_str();
  estimate_cmd->add_option("--tol", solver.tol, "Refinement tolerance on gamma")->capture_default_str();
  estimate_cmd->add_option("--max-iter", solver.max_iter, "Refinement iteration cap")->capture_default_str();
  est_out.add_to(estimate_cmd);

  // simulate
  std::string scenario_path;
  std::string named;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::vector<std::string> sim_estimators;
  std::vector<double> sim_alphas;
  std::vector<std::size_t> sim_ks;
  unsigned threads = 0;
  Output sim_out;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a contamination experiment and write bias/MSE rows");
  auto* cfg_opt = simulate_cmd->add_option("--config,-c", scenario_path, "Scenario JSON file");
  auto* named_opt = simulate_cmd->add_option("--named,-n", named, "Use a built-in scenario (see `scenarios`)");
  cfg_opt->excludes(named_opt);
  simulate_cmd->add_option("--seed", seed, "Base seed (overrides the scenario and " + std::string(kSeedEnv) + ")");
  simulate_cmd->add_option("--reps", reps, "Number of replications");
  simulate_cmd->add_option("--estimator,-e", sim_estimators, "Estimators to run")->delimiter(',');
  simulate_cmd->add_option("--alpha,-a", sim_alphas, "Alpha set")->delimiter(',');
  simulate_cmd->add_option("--k,-k", sim_ks, "k grid")->delimiter(',');
  simulate_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sim_out.add_to(simulate_cmd);

  // influence
  double gamma = 1.0;
  double inf_alpha = 0.3;
  std::size_t inf_k = 100;
  std::optional<std::size_t> j0;
  double t0_max = 1e6;
  std::size_t points = 400;
  Output inf_out;
  auto* influence_cmd = app.add_subcommand("influence", "Fixed-sample influence function curve over t0");
  influence_cmd->add_option("--gamma,-g", gamma, "Tail index")->capture_default_str();
  influence_cmd->add_option("--alpha,-a", inf_alpha, "DPD tuning parameter")->capture_default_str();
  influence_cmd->add_option("--k,-k", inf_k, "Number of upper order statistics")->capture_default_str();
  influence_cmd->add_option("--j0", j0, "Contaminated direction (default k/2)");
  influence_cmd->add_option("--t0-max", t0_max, "Largest contamination point")->capture_default_str();
  influence_cmd->add_option("--points", points, "Log-spaced points in [1e-3, t0-max], plus t0 = 0")
      ->capture_default_str();
  inf_out.add_to(influence_cmd);

  // sensitivity
  double sens_gamma = 1.0;
  std::string j0_rule = "half";
  std::vector<std::size_t> sens_ks = {50, 100, 150, 200, 250, 300};
  std::vector<double> sens_alphas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  Output sens_out;
  auto* sensitivity_cmd = app.add_subcommand("sensitivity", "Gross-error sensitivity surface over (k, alpha)");
  sensitivity_cmd->add_option("--gamma,-g", sens_gamma, "Tail index")->capture_default_str();
  sensitivity_cmd->add_option("--j0-rule", j0_rule, "Direction rule: half (k/2) or fifth (k/5)")
      ->check(CLI::IsMember({"half", "fifth"}))
      ->capture_default_str();
  sensitivity_cmd->add_option("--k,-k", sens_ks, "k values")->delimiter(',');
  sensitivity_cmd->add_option("--alpha,-a", sens_alphas, "alpha values")->delimiter(',');
  sens_out.add_to(sensitivity_cmd);

  // asymvar
  std::vector<double> av_gammas = {1.0};
  std::vector<double> av_alphas = {0.0, 0.3, 0.5, 1.0};
  Output av_out;
  auto* asymvar_cmd = app.add_subcommand("asymvar", "Asymptotic variance table");
  asymvar_cmd->add_option("--gamma,-g", av_gammas, "Tail indices")->delimiter(',');
  asymvar_cmd->add_option("--alpha,-a", av_alphas, "alpha values")->delimiter(',');
  av_out.add_to(asymvar_cmd);

  // scenarios
  std::string show;
  Output sc_out;
  auto* scenarios_cmd = app.add_subcommand("scenarios", "List the built-in scenarios");
  scenarios_cmd->add_option("--show", show, "Print the JSON config of one scenario");
  sc_out.add_to(scenarios_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*estimate_cmd) {
      const auto tag = parse_estimator(estimator);
      DpdConfig cfg = solver;
      cfg.alpha = tag == EstimatorTag::MB ? 0.0 : alpha;
      cfg.k = k;
      cfg.validate();
      const auto x = read_observations(input);
      const auto r = estimate(tag, x, cfg);
      Table t;
      t.columns = {"estimator_tag", "alpha", "k", "gamma_hat", "objective", "converged", "n_roots_found"};
      t.rows.push_back({std::string(estimator_name(r.estimator_tag)), cfg.alpha, k, r.gamma_hat,
                        r.objective_at_solution, r.converged, r.n_roots_found});
      est_out.write(out, t);
      if (!r.converged) {
        err << "tailidx: refinement did not converge; best grid point reported\n";
        return kExitNonConvergence;
      }
      return kExitOk;
    }

    if (*simulate_cmd) {
      if (scenario_path.empty() && named.empty()) throw ConfigError("", "simulate needs --config or --named");
      Scenario s = scenario_path.empty() ? find_scenario(named) : load_scenario(scenario_path);
      s.base_seed = seed ? *seed : seed_from_env(s.base_seed);
      if (reps) s.replications = *reps;
      if (!sim_estimators.empty()) {
        s.estimators.clear();
        for (const auto& e : sim_estimators) s.estimators.push_back(parse_estimator(e));
      }
      if (!sim_alphas.empty()) s.alpha_set = sim_alphas;
      if (!sim_ks.empty()) s.k_grid = sim_ks;
      s.validate();
      RunOptions opt;
      opt.threads = threads;
      const auto rows = run_scenario(s, opt);
      const auto where = sim_out.write(out, summary_table(s, rows), {{"scenario", to_json(s)}});
      (sim_out.path.empty() ? err : out) << rows.size() << " rows written to " << where << '\n';
      return kExitOk;
    }

    if (*influence_cmd) {
      const std::size_t jj = j0 ? *j0 : std::max<std::size_t>(inf_k / 2, 1);
      if (!(t0_max > 1e-3)) throw DomainError("--t0-max must exceed 1e-3");
      if (points < 2) throw DomainError("--points must be at least 2");
      Table t;
      t.columns = {"gamma", "alpha", "k", "j0", "t0", "value"};
      std::vector<double> grid = {0.0};
      const double lo = std::log(1e-3);
      const double hi = std::log(t0_max);
      for (std::size_t i = 0; i < points; ++i) {
        grid.push_back(std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1)));
      }
      for (double t0 : grid) {
        t.rows.push_back({gamma, inf_alpha, inf_k, jj, t0, if_single(t0, jj, inf_k, gamma, inf_alpha)});
      }
      inf_out.write(out, t);
      return kExitOk;
    }

    if (*sensitivity_cmd) {
      Table t;
      t.columns = {"gamma", "alpha", "k", "j0", "t0", "value"};
      for (std::size_t kk : sens_ks) {
        const std::size_t jj = j0_for(j0_rule, kk);
        for (double a : sens_alphas) {
          t.rows.push_back({sens_gamma, a, kk, jj, ges_argmax(jj, kk, sens_gamma, a),
                            gross_error_sensitivity(jj, kk, sens_gamma, a)});
        }
      }
      sens_out.write(out, t);
      return kExitOk;
    }

    if (*asymvar_cmd) {
      Table t;
      t.columns = {"gamma", "alpha", "a", "sigma2", "variance"};
      for (double g : av_gammas) {
        for (double a : av_alphas) {
          try {
            const auto v = asymptotic_variance(g, a);
            t.rows.push_back({g, a, v.a, v.sigma2, v.variance});
          } catch (const QuadratureError& e) {
            throw QuadratureError("gamma=" + format_number(g) + ", alpha=" + format_number(a) + ": " + e.what());
          }
        }
      }
      av_out.write(out, t);
      return kExitOk;
    }

    if (*scenarios_cmd) {
      if (!show.empty()) {
        out << to_json(find_scenario(show)).dump(2) << '\n';
        return kExitOk;
      }
      Table t;
      t.columns = {"name", "base", "contaminant", "epsilon", "true_gamma", "estimators"};
      for (const auto& s : builtin_scenarios()) {
        std::string est;
        for (auto e : s.estimators) est += (est.empty() ? "" : ";") + std::string(estimator_name(e));
        t.rows.push_back({s.name, s.mixture.base.label(),
                          s.mixture.epsilon > 0.0 ? s.mixture.contaminant.label() : std::string("-"),
                          s.mixture.epsilon, s.true_gamma(), est});
      }
      sc_out.write(out, t);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "tailidx: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace tailidx
