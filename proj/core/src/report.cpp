#include "wsir/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace wsir {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

namespace {
std::ostream& put(std::ostream& os, double x) { return os << format_real(x); }
}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          std::size_t K) {
  os << "t,S,V";
  for (std::size_t j = 1; j <= K; ++j) os << ",S_" << j;
  for (std::size_t j = 1; j <= K; ++j) os << ",I_" << j;
  for (std::size_t j = 1; j <= K; ++j)
    for (std::size_t l = 1; l <= K; ++l) os << ",L_" << j << l;
  os << '\n';
  for (std::size_t ti = 0; ti < traj.times.size(); ++ti) {
    const Observables& ob = traj.obs[ti];
    put(os, traj.times[ti]) << ',';
    put(os, ob.S) << ',';
    put(os, ob.V);
    for (double x : ob.s_by_class) put(os << ',', x);
    for (double x : ob.i_by_class) put(os << ',', x);
    for (double x : ob.L) put(os << ',', x);
    os << '\n';
  }
}

void write_limit_csv(std::ostream& os, const LimitSolution& sol) {
  const std::size_t K = sol.s_by_class.empty() ? 0 : sol.s_by_class[0].size();
  os << "t,psi,hs,hv";
  for (std::size_t j = 1; j <= K; ++j) os << ",s_" << j;
  os << ",v\n";
  for (std::size_t ti = 0; ti < sol.times.size(); ++ti) {
    put(os, sol.times[ti]) << ',';
    put(os, sol.psi.empty() ? 0.0 : sol.psi[ti]) << ',';
    put(os, sol.hs[ti]) << ',';
    put(os, sol.hv[ti]);
    for (std::size_t j = 0; j < K; ++j) put(os << ',', sol.s_by_class[ti][j]);
    put(os << ',', sol.v.empty() ? sol.hv[ti] : sol.v[ti]);
    os << '\n';
  }
}

void write_convergence_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "n,t,mean_s,std_s,mean_v,std_v,hs,hv,err_s,err_v\n";
  for (const auto& r : report.rows) {
    os << r.n << ',';
    put(os, r.t) << ',';
    put(os, r.mean_s) << ',';
    put(os, r.std_s) << ',';
    put(os, r.mean_v) << ',';
    put(os, r.std_v) << ',';
    put(os, r.hs) << ',';
    put(os, r.hv) << ',';
    put(os, r.err_s) << ',';
    put(os, r.err_v) << '\n';
  }
}

void write_corollary_csv(std::ostream& os, std::span<const CorollaryRow> rows) {
  os << "n,t,mean_disc,std_disc,max_disc\n";
  for (const auto& r : rows) {
    os << r.n << ',';
    put(os, r.t) << ',';
    put(os, r.mean_disc) << ',';
    put(os, r.std_disc) << ',';
    put(os, r.max_disc) << '\n';
  }
}

void write_lemma1_csv(std::ostream& os, std::span<const Lemma1Row> rows) {
  os << "n,class,bound,threshold,fraction\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.cls << ',' << r.bound << ',';
    put(os, r.threshold) << ',';
    put(os, r.fraction) << '\n';
  }
}

void write_sandwich_csv(std::ostream& os, std::span<const SandwichRow> rows) {
  os << "m,t,s_lower_mean,s_lower_se,s_true_mean,s_true_se,s_upper_mean,"
        "s_upper_se,v_lower_mean,v_lower_se,v_true_mean,v_true_se,"
        "v_upper_mean,v_upper_se,s_gap\n";
  for (const auto& r : rows) {
    os << r.m << ',';
    put(os, r.t) << ',';
    put(os, r.s_lower_mean) << ',';
    put(os, r.s_lower_se) << ',';
    put(os, r.s_true_mean) << ',';
    put(os, r.s_true_se) << ',';
    put(os, r.s_upper_mean) << ',';
    put(os, r.s_upper_se) << ',';
    put(os, r.v_lower_mean) << ',';
    put(os, r.v_lower_se) << ',';
    put(os, r.v_true_mean) << ',';
    put(os, r.v_true_se) << ',';
    put(os, r.v_upper_mean) << ',';
    put(os, r.v_upper_se) << ',';
    put(os, r.s_gap) << '\n';
  }
}

void write_threshold_csv(std::ostream& os, std::span<const ThresholdRow> rows) {
  os << "lambda,lambda_over_lambda_c,mean_final_s,is_critical\n";
  for (const auto& r : rows) {
    put(os, r.lambda) << ',';
    put(os, r.ratio) << ',';
    put(os, r.mean_final_s) << ',' << (r.is_critical ? 1 : 0) << '\n';
  }
}

void write_beta_csv(std::ostream& os, std::span<const BetaRow> rows) {
  os << "n,trials,beta,beta_over_n2\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.trials << ',';
    put(os, r.beta) << ',';
    put(os, r.normalized) << '\n';
  }
}

void write_summary_json(std::ostream& os, const ExperimentConfig& cfg,
                        const std::string& subcommand,
                        std::span<const std::string> files) {
  nlohmann::ordered_json j;
  j["tool"] = "wsir";
  j["version"] = "0.1.0";
  j["subcommand"] = subcommand;
  nlohmann::ordered_json dist = nlohmann::ordered_json::array();
  for (const auto& [q, mu] : cfg.dist_pairs) dist.push_back({{"q", q}, {"mass", mu}});
  j["config"] = {
      {"dist", dist},
      {"theta", cfg.theta},
      {"p", cfg.p},
      {"lambda", cfg.lambda},
      {"n_list", cfg.n_list},
      {"replicates", cfg.replicates},
      {"obs_times", cfg.obs_times},
      {"seed", cfg.master_seed},
      {"tol", cfg.tol},
      {"out", cfg.out_dir},
      {"fixed_graph", cfg.fixed_graph},
      {"complete_graph", cfg.complete_graph},
  };
  j["files"] = files;
  os << j.dump(2) << '\n';
}

std::string emit_file(const ExperimentConfig& cfg, const std::string& name,
                      const std::function<void(std::ostream&)>& writer) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  const std::string path = (fs::path(cfg.out_dir) / name).string();
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  writer(f);
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
  return path;
}

}  // namespace wsir
