#ifndef WSIR_EXPERIMENTS_HPP
#define WSIR_EXPERIMENTS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "wsir/config.hpp"
#include "wsir/limit.hpp"
#include "wsir/sim.hpp"

namespace wsir {

LimitParams limit_params(const ExperimentConfig& cfg);

/// Replicate batches for every n in cfg.n_list, in order.
std::vector<ReplicateStats> run_config_replicates(const ExperimentConfig& cfg);

struct ConvergenceRow {
  std::size_t n;
  double t;
  double mean_s, std_s, mean_v, std_v;
  double hs, hv;        // limit values H_S(psi_t), H_V(psi_t)
  double err_s, err_v;  // |mean - limit|
};
struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;  // ordered by n, then t
};

ConvergenceReport lln_experiment(const ExperimentConfig& cfg);
ConvergenceReport lln_experiment(const ExperimentConfig& cfg,
                                 std::span<const ReplicateStats> stats);

struct CorollaryRow {
  std::size_t n;
  double t;
  double mean_disc, std_disc, max_disc;
};
std::vector<CorollaryRow> corollary_check(const ExperimentConfig& cfg);
std::vector<CorollaryRow> corollary_check(const ExperimentConfig& cfg,
                                          std::span<const ReplicateStats> stats);

struct Lemma1Row {
  std::size_t n;
  std::size_t cls;   // 1-based class index
  char bound;        // 'S' or 'I'
  double threshold;  // lower bound being tested
  double fraction;   // replicates satisfying it
};
/// Bounds evaluated as the infimum over observation-grid times <= t.
std::vector<Lemma1Row> lemma1_check(const ExperimentConfig& cfg, double t);
std::vector<Lemma1Row> lemma1_check(const ExperimentConfig& cfg, double t,
                                    std::span<const ReplicateStats> stats);

struct SandwichRow {
  unsigned m;
  double t;
  double s_lower_mean, s_lower_se;  // under rho-hat (floor discretization)
  double s_true_mean, s_true_se;
  double s_upper_mean, s_upper_se;  // under rho-tilde
  double v_lower_mean, v_lower_se;
  double v_true_mean, v_true_se;
  double v_upper_mean, v_upper_se;
  double s_gap;  // s_lower_mean - s_upper_mean
};
/// Continuous rho ~ uniform[0, rho_max] per vertex; lower/upper runs
/// share the replicate's graph, weight samples and initial states.
/// Uses the largest n in cfg.n_list.
std::vector<SandwichRow> sandwich_experiment(const ExperimentConfig& cfg,
                                             std::span<const unsigned> m_list,
                                             double rho_max = 2.0);

struct ThresholdRow {
  double lambda;
  double ratio;  // lambda / lambda_c
  double mean_final_s;
  bool is_critical;  // marks the lambda_c grid point
};
/// Final susceptible fraction vs lambda; lambda_c inserted and marked.
/// Uses the largest n in cfg.n_list.
std::vector<ThresholdRow> threshold_sweep(const ExperimentConfig& cfg,
                                          std::span<const double> lambda_grid);

struct BetaRow {
  std::size_t n;
  std::size_t trials;
  double beta;        // sampled lower bound for beta(c,d,n)
  double normalized;  // beta / n^2
};
std::vector<BetaRow> beta_experiment(const ExperimentConfig& cfg, double c,
                                     double d, std::size_t trials);

}  // namespace wsir

#endif
