#include "wsir/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "wsir/rng.hpp"

namespace wsir {

StateVector init_states(std::size_t n, double theta, std::uint64_t seed) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::domain_error("theta must lie strictly in (0,1)");
  Rng rng(seed);
  StateVector s(n, kSusceptible);
  for (std::size_t i = 0; i < n; ++i)
    if (rng.bernoulli(theta)) s[i] = kInfective;
  return s;
}

double infection_rate_of(std::uint32_t v, const StateVector& states,
                         const Graph& g, const WeightAssignment& w,
                         const ModelParams& params) {
  if (states[v] != kSusceptible)
    throw std::invalid_argument("infection_rate_of: vertex not susceptible");
  double sum = 0.0;
  for (std::uint32_t u : g.neighbors(v))
    if (states[u] == kInfective) sum += w.values[u];
  return params.lambda / static_cast<double>(params.n) * w.values[v] * sum;
}

Observables observables(const StateVector& states, const WeightAssignment& w,
                        const Graph& g) {
  const std::size_t K = w.class_count;
  Observables ob;
  ob.s_by_class.assign(K, 0.0);
  ob.i_by_class.assign(K, 0.0);
  ob.L.assign(K * K, 0.0);
  for (std::uint32_t v = 0; v < states.size(); ++v) {
    if (states[v] == kSusceptible) {
      ob.S += 1.0;
      ob.s_by_class[w.class_of[v]] += 1.0;
    } else if (states[v] == kInfective) {
      ob.V += w.values[v];
      ob.i_by_class[w.class_of[v]] += 1.0;
      const std::size_t l = w.class_of[v];
      for (std::uint32_t u : g.neighbors(v))
        if (states[u] == kSusceptible) ob.L[w.class_of[u] * K + l] += 1.0;
    }
  }
  return ob;
}

double corollary_discrepancy(const Observables& ob, double p, std::size_t n) {
  const std::size_t K = ob.s_by_class.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < K; ++j)
    for (std::size_t l = 0; l < K; ++l)
      worst = std::max(worst, std::abs(ob.L[j * K + l] -
                                       p * ob.s_by_class[j] * ob.i_by_class[l]));
  return worst / (static_cast<double>(n) * static_cast<double>(n));
}

namespace {

// Fenwick tree over per-vertex infection rates, supporting prefix-sum
// descent for proportional selection.
class RateTree {
 public:
  explicit RateTree(std::size_t n) : n_(n), tree_(n + 1, 0.0) {}

  void add(std::size_t i, double delta) {
    for (std::size_t k = i + 1; k <= n_; k += k & (~k + 1)) tree_[k] += delta;
  }

  double total() const {
    double s = 0.0;
    for (std::size_t k = n_; k > 0; k -= k & (~k + 1)) s += tree_[k];
    return s;
  }

  // largest i with prefix_sum(i) <= target; target in [0, total)
  std::size_t find(double target) const {
    std::size_t pos = 0;
    std::size_t mask = 1;
    while ((mask << 1) <= n_) mask <<= 1;
    for (; mask > 0; mask >>= 1) {
      const std::size_t next = pos + mask;
      if (next <= n_ && tree_[next] <= target) {
        target -= tree_[next];
        pos = next;
      }
    }
    return pos;  // 0-based vertex index
  }

  void rebuild(std::span<const double> rates) {
    std::fill(tree_.begin(), tree_.end(), 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      if (rates[i] != 0.0) add(i, rates[i]);
  }

 private:
  std::size_t n_;
  std::vector<double> tree_;
};

constexpr std::uint64_t kRebuildPeriod = 1ull << 16;

}  // namespace

Trajectory simulate(const Graph& g, const WeightAssignment& w,
                    const ModelParams& params, const StateVector& init,
                    std::span<const double> obs_times, std::uint64_t seed,
                    const EventHook& on_event) {
  const std::size_t n = g.vertex_count();
  if (w.size() != n || init.size() != n)
    throw std::invalid_argument("simulate: graph/weights/init size mismatch");
  if (obs_times.empty())
    throw std::invalid_argument("simulate: empty observation grid");

  StateVector state = init;
  std::vector<double> rate(n, 0.0);  // infection rate of susceptible vertices
  std::vector<std::uint32_t> infectives;
  std::vector<std::uint32_t> pos_of(n, std::numeric_limits<std::uint32_t>::max());
  const double lam_n = params.lambda / static_cast<double>(n);

  for (std::uint32_t v = 0; v < n; ++v) {
    if (state[v] == kInfective) {
      pos_of[v] = static_cast<std::uint32_t>(infectives.size());
      infectives.push_back(v);
    }
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (state[v] != kSusceptible) continue;
    double sum = 0.0;
    for (std::uint32_t u : g.neighbors(v))
      if (state[u] == kInfective) sum += w.values[u];
    rate[v] = lam_n * w.values[v] * sum;
  }
  RateTree tree(n);
  tree.rebuild(rate);

  auto make_infective = [&](std::uint32_t v) {
    state[v] = kInfective;
    tree.add(v, -rate[v]);
    rate[v] = 0.0;
    pos_of[v] = static_cast<std::uint32_t>(infectives.size());
    infectives.push_back(v);
    const double rho_v = w.values[v];
    for (std::uint32_t u : g.neighbors(v)) {
      if (state[u] == kSusceptible) {
        const double delta = lam_n * w.values[u] * rho_v;
        rate[u] += delta;
        tree.add(u, delta);
      }
    }
  };

  auto make_removed = [&](std::uint32_t v) {
    state[v] = kRemoved;
    const std::uint32_t p = pos_of[v];
    pos_of[infectives.back()] = p;
    infectives[p] = infectives.back();
    infectives.pop_back();
    pos_of[v] = std::numeric_limits<std::uint32_t>::max();
    const double rho_v = w.values[v];
    for (std::uint32_t u : g.neighbors(v)) {
      if (state[u] == kSusceptible) {
        const double delta = lam_n * w.values[u] * rho_v;
        rate[u] -= delta;
        tree.add(u, -delta);
      }
    }
  };

  Rng rng(seed);
  Trajectory traj;
  traj.times.assign(obs_times.begin(), obs_times.end());
  traj.obs.reserve(obs_times.size());

  double t = 0.0;
  std::size_t next_obs = 0;
  while (next_obs < obs_times.size()) {
    const double pressure = std::max(tree.total(), 0.0);
    const double total =
        pressure + static_cast<double>(infectives.size());
    double t_next = std::numeric_limits<double>::infinity();
    if (total > 0.0) t_next = t + rng.exponential(total);

    // snapshots at grid times passed before the next event
    while (next_obs < obs_times.size() && obs_times[next_obs] < t_next) {
      traj.obs.push_back(observables(state, w, g));
      ++next_obs;
    }
    if (next_obs >= obs_times.size() || !std::isfinite(t_next)) break;
    t = t_next;

    double u = rng.uniform() * total;
    if (u < static_cast<double>(infectives.size())) {
      const auto idx = static_cast<std::size_t>(u);
      const std::uint32_t v = infectives[std::min(idx, infectives.size() - 1)];
      make_removed(v);
      if (on_event) on_event({t, v, kRemoved});
    } else {
      std::size_t v = tree.find(u - static_cast<double>(infectives.size()));
      if (v >= n || rate[v] <= 0.0) {
        // float slack pushed selection onto a zero-rate slot
        v = 0;
        while (v < n && rate[v] <= 0.0) ++v;
        if (v >= n) continue;
      }
      make_infective(static_cast<std::uint32_t>(v));
      if (on_event) on_event({t, static_cast<std::uint32_t>(v), kInfective});
    }

    if (++traj.event_count % kRebuildPeriod == 0) {
      // drift control: recompute rates exactly from the current state
      for (std::uint32_t v = 0; v < n; ++v) {
        if (state[v] != kSusceptible) {
          rate[v] = 0.0;
          continue;
        }
        double sum = 0.0;
        for (std::uint32_t nb : g.neighbors(v))
          if (state[nb] == kInfective) sum += w.values[nb];
        rate[v] = lam_n * w.values[v] * sum;
      }
      tree.rebuild(rate);
    }
  }
  return traj;
}

ReplicateStats::Summary ReplicateStats::summary(std::size_t ti,
                                                std::size_t field) const {
  Summary s{0.0, 0.0, std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};
  for (std::size_t r = 0; r < replicates; ++r) {
    const double x = value(r, ti, field);
    s.mean += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean /= static_cast<double>(replicates);
  double ss = 0.0;
  for (std::size_t r = 0; r < replicates; ++r) {
    const double d = value(r, ti, field) - s.mean;
    ss += d * d;
  }
  s.stddev = replicates > 1
                 ? std::sqrt(ss / static_cast<double>(replicates - 1))
                 : 0.0;
  return s;
}

ReplicateStats run_replicates(const ReplicateSpec& spec) {
  if (spec.replicates < 1)
    throw std::invalid_argument("run_replicates: need at least one replicate");
  if (!spec.dist) throw std::invalid_argument("run_replicates: null dist");

  ReplicateStats stats;
  stats.times = spec.obs_times;
  stats.n = spec.params.n;
  stats.class_count = spec.dist->class_count();
  stats.replicates = spec.replicates;
  stats.raw.assign(spec.replicates * spec.obs_times.size() *
                       stats.fields_per_row(),
                   0.0);

  std::optional<Graph> shared_graph;
  if (spec.complete_graph) {
    shared_graph = Graph::complete(spec.params.n);
  } else if (spec.fixed_graph) {
    shared_graph = Graph::erdos_renyi(
        spec.params.n, spec.params.p,
        derive_seed(spec.master_seed, 0, Stream::Graph));
  }

  const double dn = static_cast<double>(spec.params.n);
  auto run_one = [&](std::size_t r) {
    std::optional<Graph> local;
    const Graph* g = nullptr;
    if (shared_graph) {
      g = &*shared_graph;
    } else {
      local = Graph::erdos_renyi(spec.params.n, spec.params.p,
                                 derive_seed(spec.master_seed, r, Stream::Graph));
      g = &*local;
    }
    const WeightAssignment w = sample_assignment(
        *spec.dist, spec.params.n,
        derive_seed(spec.master_seed, r, Stream::Weights));
    const StateVector init =
        init_states(spec.params.n, spec.params.theta,
                    derive_seed(spec.master_seed, r, Stream::Init));
    const Trajectory traj =
        simulate(*g, w, spec.params, init, spec.obs_times,
                 derive_seed(spec.master_seed, r, Stream::Events));

    const std::size_t K = stats.class_count;
    for (std::size_t ti = 0; ti < traj.times.size(); ++ti) {
      const Observables& ob = traj.obs[ti];
      double* row = stats.raw.data() +
                    (r * stats.times.size() + ti) * stats.fields_per_row();
      row[0] = ob.S / dn;
      row[1] = ob.V / dn;
      for (std::size_t j = 0; j < K; ++j) {
        row[2 + j] = ob.s_by_class[j] / dn;
        row[2 + K + j] = ob.i_by_class[j] / dn;
      }
      row[2 + 2 * K] =
          corollary_discrepancy(ob, spec.params.p, spec.params.n);
    }
  };

  unsigned nthreads = spec.threads;
  if (nthreads == 0)
    nthreads = std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, spec.replicates);

  if (nthreads <= 1) {
    for (std::size_t r = 0; r < spec.replicates; ++r) run_one(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned k = 0; k < nthreads; ++k) {
      pool.emplace_back([&] {
        for (std::size_t r = next.fetch_add(1); r < spec.replicates;
             r = next.fetch_add(1))
          run_one(r);
      });
    }
    for (auto& th : pool) th.join();
  }
  return stats;
}

}  // namespace wsir
