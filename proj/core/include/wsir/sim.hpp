#ifndef WSIR_SIM_HPP
#define WSIR_SIM_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wsir/graph.hpp"
#include "wsir/weights.hpp"

namespace wsir {

struct ModelParams {
  std::size_t n = 0;
  double p = 0.0;      // recorded edge probability, used in reports
  double lambda = 0.0; // infection rate, > 0
  double theta = 0.0;  // initial infection probability, in (0,1)
};

// vertex states
inline constexpr std::int8_t kSusceptible = 0;
inline constexpr std::int8_t kInfective = 1;
inline constexpr std::int8_t kRemoved = -1;

using StateVector = std::vector<std::int8_t>;

/// Each vertex independently infective with probability theta,
/// susceptible otherwise; nothing starts removed.
StateVector init_states(std::size_t n, double theta, std::uint64_t seed);

/// (lambda/n) rho(v) sum of rho over infective neighbors of v.
/// v must be susceptible.
double infection_rate_of(std::uint32_t v, const StateVector& states,
                         const Graph& g, const WeightAssignment& w,
                         const ModelParams& params);

/// Snapshot observables. L is a K x K row-major matrix, L(j,l) = edges
/// joining a susceptible class-j vertex to an infective class-l vertex.
struct Observables {
  double S = 0.0;
  double V = 0.0;
  std::vector<double> s_by_class;  // counts S(j)
  std::vector<double> i_by_class;  // counts I(l)
  std::vector<double> L;           // K*K
};

Observables observables(const StateVector& states, const WeightAssignment& w,
                        const Graph& g);

struct Trajectory {
  std::vector<double> times;
  std::vector<Observables> obs;
  std::uint64_t event_count = 0;
};

struct Event {
  double time;
  std::uint32_t vertex;
  std::int8_t new_state;  // kInfective or kRemoved
};
using EventHook = std::function<void(const Event&)>;

/// Exact event-driven realization of the CTMC: exponential waiting time
/// at the total rate (infection pressure + infective count), event chosen
/// proportionally to individual rates. Snapshots at each obs_time take
/// the state just before the first event exceeding it.
Trajectory simulate(const Graph& g, const WeightAssignment& w,
                    const ModelParams& params, const StateVector& init,
                    std::span<const double> obs_times, std::uint64_t seed,
                    const EventHook& on_event = {});

/// Per-replicate observable rows retained for downstream experiments.
struct ReplicateStats {
  std::vector<double> times;
  std::size_t n = 0;
  std::size_t class_count = 0;
  std::size_t replicates = 0;

  // flattened [replicate][time][field]; fields per row:
  // S/n, V/n, S(1)/n..S(K)/n, I(1)/n..I(K)/n, corollary discrepancy
  std::vector<double> raw;

  std::size_t fields_per_row() const { return 2 + 2 * class_count + 1; }
  double value(std::size_t rep, std::size_t ti, std::size_t field) const {
    return raw[(rep * times.size() + ti) * fields_per_row() + field];
  }
  // field indices
  std::size_t f_s() const { return 0; }
  std::size_t f_v() const { return 1; }
  std::size_t f_s_class(std::size_t j) const { return 2 + j; }
  std::size_t f_i_class(std::size_t j) const { return 2 + class_count + j; }
  std::size_t f_disc() const { return 2 + 2 * class_count; }

  struct Summary {
    double mean, stddev, min, max;
  };
  Summary summary(std::size_t ti, std::size_t field) const;
};

struct ReplicateSpec {
  const WeightDistribution* dist = nullptr;
  ModelParams params;
  std::vector<double> obs_times;
  std::size_t replicates = 1;
  std::uint64_t master_seed = 0;
  bool fixed_graph = false;     // share one graph across replicates
  bool complete_graph = false;  // all-edges fixture, p recorded as 1
  unsigned threads = 0;         // 0 = hardware concurrency
};

/// Independent replicates (fresh graph, weights and initial states per
/// replicate unless fixed_graph), run concurrently, merged in replicate
/// order so results are deterministic given the master seed.
ReplicateStats run_replicates(const ReplicateSpec& spec);

/// max_{j,l} |L(j,l) - p S(j) I(l)| / n^2 for one snapshot.
double corollary_discrepancy(const Observables& ob, double p, std::size_t n);

}  // namespace wsir

#endif
