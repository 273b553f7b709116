// Command-line front end: one subcommand per experiment, CSV outputs
// plus a JSON summary per run.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsir/experiments.hpp"
#include "wsir/report.hpp"
#include "wsir/rng.hpp"

namespace {

struct SharedOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> replicates;
  std::optional<double> tol;
  std::optional<unsigned> threads;
  bool fixed_graph = false;
};

void add_shared(CLI::App* cmd, SharedOpts& o) {
  cmd->add_option("--config", o.config_path, "Experiment config file")
      ->required();
  cmd->add_option("--seed", o.seed, "Master seed (overrides config)");
  cmd->add_option("--out", o.out_dir, "Output directory (overrides config)");
  cmd->add_option("--replicates", o.replicates,
                  "Replicate count (overrides config)");
  cmd->add_option("--tol", o.tol, "Limit-solver tolerance (overrides config)");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  cmd->add_flag("--fixed-graph", o.fixed_graph,
                "Share one graph realization across replicates");
}

wsir::ExperimentConfig resolve(const SharedOpts& o) {
  wsir::ExperimentConfig cfg = wsir::load_config(o.config_path);
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.replicates) cfg.replicates = *o.replicates;
  if (o.tol) cfg.tol = *o.tol;
  if (o.threads) cfg.threads = *o.threads;
  if (o.fixed_graph) cfg.fixed_graph = true;
  return cfg;
}

void finish(const wsir::ExperimentConfig& cfg, const std::string& subcommand,
            std::vector<std::string> files) {
  files.push_back(wsir::emit_file(cfg, subcommand + "_summary.json",
                                  [&](std::ostream& os) {
                                    wsir::write_summary_json(
                                        os, cfg, subcommand, files);
                                  }));
  for (const auto& f : files) std::cout << f << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted SIR epidemic on Erdos-Renyi graphs: exact simulation, "
               "deterministic limit curves, and convergence experiments"};
  app.require_subcommand(1);

  SharedOpts sim_o, lim_o, conv_o, cor_o, lem_o, sand_o, thr_o, beta_o;

  auto* cmd_sim = app.add_subcommand("simulate", "One trajectory -> CSV");
  add_shared(cmd_sim, sim_o);

  auto* cmd_lim = app.add_subcommand("limit", "Limit curves -> CSV");
  add_shared(cmd_lim, lim_o);
  std::string method = "psi";
  cmd_lim->add_option("--method", method, "psi | component | timechange")
      ->check(CLI::IsMember({"psi", "component", "timechange"}));

  auto* cmd_conv = app.add_subcommand(
      "converge", "Empirical S/n, V/n vs limit curves across n");
  add_shared(cmd_conv, conv_o);

  auto* cmd_cor = app.add_subcommand(
      "corollary", "Normalized cross-edge discrepancy across n");
  add_shared(cmd_cor, cor_o);

  auto* cmd_lem =
      app.add_subcommand("lemma1", "Per-class lower-bound satisfaction");
  add_shared(cmd_lem, lem_o);
  double lemma_t = 1.0;
  cmd_lem->add_option("--t", lemma_t, "Time horizon of the bounds");

  auto* cmd_sand = app.add_subcommand(
      "sandwich", "Discretized-weight ordering experiment");
  add_shared(cmd_sand, sand_o);
  std::vector<unsigned> m_list{1, 4, 16};
  cmd_sand->add_option("--m", m_list, "Discretization levels");
  double rho_max = 2.0;
  cmd_sand->add_option("--rho-max", rho_max,
                       "Upper end of the uniform weight law");

  auto* cmd_thr =
      app.add_subcommand("threshold", "Final susceptible fraction vs lambda");
  add_shared(cmd_thr, thr_o);
  std::vector<double> lambda_grid;
  cmd_thr->add_option("--lambdas", lambda_grid, "Infection-rate grid")
      ->required();

  auto* cmd_beta =
      app.add_subcommand("beta", "Sampled cross-edge deviation across n");
  add_shared(cmd_beta, beta_o);
  double beta_c = 0.25, beta_d = 0.25;
  std::size_t beta_trials = 200;
  cmd_beta->add_option("--c", beta_c, "Relative size of C");
  cmd_beta->add_option("--d", beta_d, "Relative size of D");
  cmd_beta->add_option("--trials", beta_trials, "Random subset pairs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_sim->parsed()) {
      const auto cfg = resolve(sim_o);
      const auto dist = cfg.distribution();
      const std::size_t n = cfg.n_list.back();
      const wsir::Graph g =
          cfg.complete_graph
              ? wsir::Graph::complete(n)
              : wsir::Graph::erdos_renyi(
                    n, cfg.p,
                    wsir::derive_seed(cfg.master_seed, 0, wsir::Stream::Graph));
      const auto w = wsir::sample_assignment(
          dist, n, wsir::derive_seed(cfg.master_seed, 0, wsir::Stream::Weights));
      const auto init = wsir::init_states(
          n, cfg.theta,
          wsir::derive_seed(cfg.master_seed, 0, wsir::Stream::Init));
      const auto traj = wsir::simulate(
          g, w, {n, cfg.p, cfg.lambda, cfg.theta}, init, cfg.obs_times,
          wsir::derive_seed(cfg.master_seed, 0, wsir::Stream::Events));
      finish(cfg, "simulate",
             {wsir::emit_file(cfg, "trajectory.csv", [&](std::ostream& os) {
               wsir::write_trajectory_csv(os, traj, dist.class_count());
             })});
    } else if (cmd_lim->parsed()) {
      const auto cfg = resolve(lim_o);
      const auto lp = wsir::limit_params(cfg);
      wsir::LimitSolution sol;
      if (method == "psi")
        sol = wsir::solve_psi(lp, cfg.obs_times, cfg.tol);
      else if (method == "component")
        sol = wsir::solve_component_ode(lp, cfg.obs_times, cfg.tol);
      else
        sol = wsir::solve_time_change(lp, cfg.obs_times, cfg.tol);
      if (sol.hs.empty()) {  // component route: derive hs/hv columns
        for (std::size_t ti = 0; ti < sol.times.size(); ++ti) {
          sol.hs.push_back(sol.total_s(ti));
          sol.hv.push_back(sol.v[ti]);
        }
      }
      finish(cfg, "limit",
             {wsir::emit_file(cfg, "limit.csv", [&](std::ostream& os) {
               wsir::write_limit_csv(os, sol);
             })});
    } else if (cmd_conv->parsed()) {
      const auto cfg = resolve(conv_o);
      const auto report = wsir::lln_experiment(cfg);
      finish(cfg, "converge",
             {wsir::emit_file(cfg, "convergence.csv", [&](std::ostream& os) {
               wsir::write_convergence_csv(os, report);
             })});
    } else if (cmd_cor->parsed()) {
      const auto cfg = resolve(cor_o);
      const auto rows = wsir::corollary_check(cfg);
      finish(cfg, "corollary",
             {wsir::emit_file(cfg, "corollary.csv", [&](std::ostream& os) {
               wsir::write_corollary_csv(os, rows);
             })});
    } else if (cmd_lem->parsed()) {
      const auto cfg = resolve(lem_o);
      const auto rows = wsir::lemma1_check(cfg, lemma_t);
      finish(cfg, "lemma1",
             {wsir::emit_file(cfg, "lemma1.csv", [&](std::ostream& os) {
               wsir::write_lemma1_csv(os, rows);
             })});
    } else if (cmd_sand->parsed()) {
      const auto cfg = resolve(sand_o);
      const auto rows = wsir::sandwich_experiment(cfg, m_list, rho_max);
      finish(cfg, "sandwich",
             {wsir::emit_file(cfg, "sandwich.csv", [&](std::ostream& os) {
               wsir::write_sandwich_csv(os, rows);
             })});
    } else if (cmd_thr->parsed()) {
      const auto cfg = resolve(thr_o);
      const auto rows = wsir::threshold_sweep(cfg, lambda_grid);
      finish(cfg, "threshold",
             {wsir::emit_file(cfg, "threshold.csv", [&](std::ostream& os) {
               wsir::write_threshold_csv(os, rows);
             })});
    } else if (cmd_beta->parsed()) {
      const auto cfg = resolve(beta_o);
      const auto rows = wsir::beta_experiment(cfg, beta_c, beta_d, beta_trials);
      finish(cfg, "beta",
             {wsir::emit_file(cfg, "beta.csv", [&](std::ostream& os) {
               wsir::write_beta_csv(os, rows);
             })});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
