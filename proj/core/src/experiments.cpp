#include "wsir/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "wsir/rng.hpp"

namespace wsir {

LimitParams limit_params(const ExperimentConfig& cfg) {
  return LimitParams{cfg.distribution(), cfg.theta, cfg.p, cfg.lambda};
}

std::vector<ReplicateStats> run_config_replicates(const ExperimentConfig& cfg) {
  const WeightDistribution dist = cfg.distribution();
  std::vector<ReplicateStats> out;
  out.reserve(cfg.n_list.size());
  for (std::size_t n : cfg.n_list) {
    ReplicateSpec spec;
    spec.dist = &dist;
    spec.params = ModelParams{n, cfg.p, cfg.lambda, cfg.theta};
    spec.obs_times = cfg.obs_times;
    spec.replicates = cfg.replicates;
    spec.master_seed = cfg.master_seed;
    spec.fixed_graph = cfg.fixed_graph;
    spec.complete_graph = cfg.complete_graph;
    spec.threads = cfg.threads;
    out.push_back(run_replicates(spec));
  }
  return out;
}

ConvergenceReport lln_experiment(const ExperimentConfig& cfg) {
  const auto stats = run_config_replicates(cfg);
  return lln_experiment(cfg, stats);
}

ConvergenceReport lln_experiment(const ExperimentConfig& cfg,
                                 std::span<const ReplicateStats> stats) {
  const LimitParams lp = limit_params(cfg);
  const LimitSolution limit = solve_psi(lp, cfg.obs_times, cfg.tol);

  ConvergenceReport report;
  for (const ReplicateStats& st : stats) {
    for (std::size_t ti = 0; ti < st.times.size(); ++ti) {
      const auto s = st.summary(ti, st.f_s());
      const auto v = st.summary(ti, st.f_v());
      ConvergenceRow row;
      row.n = st.n;
      row.t = st.times[ti];
      row.mean_s = s.mean;
      row.std_s = s.stddev;
      row.mean_v = v.mean;
      row.std_v = v.stddev;
      row.hs = limit.hs[ti];
      row.hv = limit.hv[ti];
      row.err_s = std::abs(row.mean_s - row.hs);
      row.err_v = std::abs(row.mean_v - row.hv);
      report.rows.push_back(row);
    }
  }
  return report;
}

std::vector<CorollaryRow> corollary_check(const ExperimentConfig& cfg) {
  const auto stats = run_config_replicates(cfg);
  return corollary_check(cfg, stats);
}

std::vector<CorollaryRow> corollary_check(const ExperimentConfig&,
                                          std::span<const ReplicateStats> stats) {
  std::vector<CorollaryRow> rows;
  for (const ReplicateStats& st : stats) {
    for (std::size_t ti = 0; ti < st.times.size(); ++ti) {
      const auto d = st.summary(ti, st.f_disc());
      rows.push_back({st.n, st.times[ti], d.mean, d.stddev, d.max});
    }
  }
  return rows;
}

std::vector<Lemma1Row> lemma1_check(const ExperimentConfig& cfg, double t) {
  const auto stats = run_config_replicates(cfg);
  return lemma1_check(cfg, t, stats);
}

std::vector<Lemma1Row> lemma1_check(const ExperimentConfig& cfg, double t,
                                    std::span<const ReplicateStats> stats) {
  const WeightDistribution dist = cfg.distribution();
  const double m1 = dist.bound();
  std::vector<Lemma1Row> rows;
  for (const ReplicateStats& st : stats) {
    // observation indices covering [0, t]
    std::size_t t_count = 0;
    while (t_count < st.times.size() && st.times[t_count] <= t) ++t_count;

    for (std::size_t j = 0; j < st.class_count; ++j) {
      const double mu = dist.atoms()[j].mu;
      const double s_bound =
          (1.0 - cfg.theta) * mu * std::exp(-2.0 * cfg.lambda * m1 * m1 * t);
      const double i_bound = cfg.theta * mu * std::exp(-2.0 * t);

      std::size_t s_ok = 0, i_ok = 0;
      for (std::size_t r = 0; r < st.replicates; ++r) {
        double s_inf = 1.0, i_inf = 1.0;
        for (std::size_t ti = 0; ti < t_count; ++ti) {
          s_inf = std::min(s_inf, st.value(r, ti, st.f_s_class(j)));
          i_inf = std::min(i_inf, st.value(r, ti, st.f_i_class(j)));
        }
        if (s_inf >= s_bound) ++s_ok;
        if (i_inf >= i_bound) ++i_ok;
      }
      const double reps = static_cast<double>(st.replicates);
      rows.push_back({st.n, j + 1, 'S', s_bound, s_ok / reps});
      rows.push_back({st.n, j + 1, 'I', i_bound, i_ok / reps});
    }
  }
  return rows;
}

std::vector<SandwichRow> sandwich_experiment(const ExperimentConfig& cfg,
                                             std::span<const unsigned> m_list,
                                             double rho_max) {
  const std::size_t n = cfg.n_list.back();
  const std::size_t reps = cfg.replicates;
  const std::size_t T = cfg.obs_times.size();
  const ModelParams params{n, cfg.p, cfg.lambda, cfg.theta};

  // variants: 0 = true rho, then (lower, upper) per m
  const std::size_t variants = 1 + 2 * m_list.size();
  // raw[rep][variant][time][field], field 0 = S/n, 1 = V/n
  std::vector<double> raw(reps * variants * T * 2, 0.0);

  auto run_one = [&](std::size_t r) {
    const Graph g = cfg.complete_graph
                        ? Graph::complete(n)
                        : Graph::erdos_renyi(
                              n, cfg.p,
                              derive_seed(cfg.master_seed, r, Stream::Graph));
    Rng srng(derive_seed(cfg.master_seed, r, Stream::Samples));
    std::vector<double> rho(n);
    for (double& x : rho) x = rho_max * srng.uniform();
    const StateVector init = init_states(
        n, cfg.theta, derive_seed(cfg.master_seed, r, Stream::Init));

    auto run_variant = [&](std::size_t vi, std::vector<double> values) {
      const WeightAssignment w = assignment_from_values(std::move(values));
      const Trajectory traj =
          simulate(g, w, params, init, cfg.obs_times,
                   derive_seed(cfg.master_seed, r, Stream::Events, vi));
      for (std::size_t ti = 0; ti < T; ++ti) {
        double* cell = raw.data() + (((r * variants) + vi) * T + ti) * 2;
        cell[0] = traj.obs[ti].S / static_cast<double>(n);
        cell[1] = traj.obs[ti].V / static_cast<double>(n);
      }
    };

    run_variant(0, rho);
    for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
      run_variant(1 + 2 * mi, discretize(rho, m_list[mi], Discretization::Lower));
      run_variant(2 + 2 * mi, discretize(rho, m_list[mi], Discretization::Upper));
    }
  };

  unsigned nthreads = cfg.threads;
  if (nthreads == 0) nthreads = std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, reps);
  if (nthreads <= 1) {
    for (std::size_t r = 0; r < reps; ++r) run_one(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < nthreads; ++k)
      pool.emplace_back([&] {
        for (std::size_t r = next.fetch_add(1); r < reps; r = next.fetch_add(1))
          run_one(r);
      });
    for (auto& th : pool) th.join();
  }

  auto mean_se = [&](std::size_t vi, std::size_t ti, std::size_t field) {
    double mean = 0.0;
    for (std::size_t r = 0; r < reps; ++r)
      mean += raw[(((r * variants) + vi) * T + ti) * 2 + field];
    mean /= static_cast<double>(reps);
    double ss = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const double d = raw[(((r * variants) + vi) * T + ti) * 2 + field] - mean;
      ss += d * d;
    }
    const double se =
        reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) /
                             static_cast<double>(reps))
                 : 0.0;
    return std::pair{mean, se};
  };

  std::vector<SandwichRow> rows;
  for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
    for (std::size_t ti = 0; ti < T; ++ti) {
      SandwichRow row;
      row.m = m_list[mi];
      row.t = cfg.obs_times[ti];
      std::tie(row.s_lower_mean, row.s_lower_se) = mean_se(1 + 2 * mi, ti, 0);
      std::tie(row.s_true_mean, row.s_true_se) = mean_se(0, ti, 0);
      std::tie(row.s_upper_mean, row.s_upper_se) = mean_se(2 + 2 * mi, ti, 0);
      std::tie(row.v_lower_mean, row.v_lower_se) = mean_se(1 + 2 * mi, ti, 1);
      std::tie(row.v_true_mean, row.v_true_se) = mean_se(0, ti, 1);
      std::tie(row.v_upper_mean, row.v_upper_se) = mean_se(2 + 2 * mi, ti, 1);
      row.s_gap = row.s_lower_mean - row.s_upper_mean;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<ThresholdRow> threshold_sweep(const ExperimentConfig& cfg,
                                          std::span<const double> lambda_grid) {
  const WeightDistribution dist = cfg.distribution();
  const double lc = lambda_critical(dist, cfg.p);

  std::vector<std::pair<double, bool>> grid;
  for (double l : lambda_grid) grid.emplace_back(l, false);
  grid.emplace_back(lc, true);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](auto& a, auto& b) { return a.first == b.first; }),
             grid.end());

  // a grid time far past extinction; events stop once no infectives remain
  constexpr double kFinalTime = 1e6;

  std::vector<ThresholdRow> rows;
  for (const auto& [lam, critical] : grid) {
    ReplicateSpec spec;
    spec.dist = &dist;
    spec.params = ModelParams{cfg.n_list.back(), cfg.p, lam, cfg.theta};
    spec.obs_times = {kFinalTime};
    spec.replicates = cfg.replicates;
    spec.master_seed = cfg.master_seed;
    spec.fixed_graph = cfg.fixed_graph;
    spec.complete_graph = cfg.complete_graph;
    spec.threads = cfg.threads;
    const ReplicateStats st = run_replicates(spec);
    rows.push_back({lam, lam / lc, st.summary(0, st.f_s()).mean, critical});
  }
  return rows;
}

std::vector<BetaRow> beta_experiment(const ExperimentConfig& cfg, double c,
                                     double d, std::size_t trials) {
  std::vector<BetaRow> rows;
  for (std::size_t n : cfg.n_list) {
    const Graph g = cfg.complete_graph
                        ? Graph::complete(n)
                        : Graph::erdos_renyi(
                              n, cfg.p,
                              derive_seed(cfg.master_seed, n, Stream::Graph));
    const double beta = estimate_beta(
        g, c, d, trials, derive_seed(cfg.master_seed, n, Stream::Beta));
    rows.push_back({n, trials, beta,
                    beta / (static_cast<double>(n) * static_cast<double>(n))});
  }
  return rows;
}

}  // namespace wsir
