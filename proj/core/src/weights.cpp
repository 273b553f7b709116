#include "wsir/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wsir/rng.hpp"

namespace wsir {

WeightDistribution WeightDistribution::from_pairs(
    std::span<const std::pair<double, double>> pairs) {
  if (pairs.empty())
    throw std::invalid_argument("weight distribution needs at least one atom");

  std::vector<WeightAtom> atoms;
  atoms.reserve(pairs.size());
  double mass = 0.0;
  for (const auto& [q, mu] : pairs) {
    if (mu < 0.0)
      throw std::invalid_argument("negative atom mass");
    if (q < 0.0)
      throw std::invalid_argument("negative weight value");
    if (!std::isfinite(q) || !std::isfinite(mu))
      throw std::invalid_argument("non-finite atom");
    if (mu == 0.0) continue;
    atoms.push_back({q, mu});
    mass += mu;
  }
  if (atoms.empty() || mass <= 0.0)
    throw std::invalid_argument("all atom masses are zero");
  if (std::abs(mass - 1.0) > 1e-9)
    throw std::invalid_argument("atom masses must sum to 1 (got " +
                                std::to_string(mass) + ")");

  std::sort(atoms.begin(), atoms.end(),
            [](const WeightAtom& a, const WeightAtom& b) { return a.q < b.q; });

  // merge equal q values
  std::vector<WeightAtom> merged;
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().q == a.q)
      merged.back().mu += a.mu;
    else
      merged.push_back(a);
  }
  for (auto& a : merged) a.mu /= mass;

  if (merged.size() == 1 && merged.front().q == 0.0)
    throw std::invalid_argument("P(rho > 0) must be positive");

  WeightDistribution d;
  d.atoms_ = std::move(merged);
  d.m1_ = d.atoms_.back().q;
  return d;
}

WeightDistribution WeightDistribution::from_pairs(
    std::initializer_list<std::pair<double, double>> pairs) {
  return from_pairs(std::span<const std::pair<double, double>>(
      pairs.begin(), pairs.size()));
}

WeightDistribution WeightDistribution::degenerate(double q) {
  return from_pairs({{q, 1.0}});
}

double WeightDistribution::moment(unsigned k) const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.mu * std::pow(a.q, k);
  return m;
}

double WeightDistribution::generalized_moment(double x, bool weighted) const {
  if (!(x > 0.0))
    throw std::domain_error("generalized_moment requires x > 0");
  double m = 0.0;
  for (const auto& a : atoms_) {
    const double term = a.mu * std::pow(x, a.q);
    m += weighted ? a.q * term : term;
  }
  return m;
}

WeightAssignment sample_assignment(const WeightDistribution& dist,
                                   std::size_t n, std::uint64_t seed) {
  const auto& atoms = dist.atoms();
  std::vector<double> cum(atoms.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    acc += atoms[j].mu;
    cum[j] = acc;
  }
  cum.back() = 1.0;

  Rng rng(seed);
  WeightAssignment a;
  a.values.resize(n);
  a.class_of.resize(n);
  a.class_count = atoms.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    const std::size_t j = static_cast<std::size_t>(
        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
    a.class_of[i] = static_cast<std::uint32_t>(j);
    a.values[i] = atoms[j].q;
  }
  return a;
}

WeightAssignment assignment_from_values(std::vector<double> values) {
  WeightAssignment a;
  a.class_of.assign(values.size(), 0);
  a.values = std::move(values);
  a.class_count = 1;
  return a;
}

std::vector<double> discretize(std::span<const double> samples, unsigned m,
                               Discretization direction) {
  if (m == 0) throw std::invalid_argument("discretize requires m >= 1");
  std::vector<double> out(samples.size());
  const double dm = static_cast<double>(m);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = std::floor(dm * samples[i]);
    out[i] = (direction == Discretization::Lower ? f : f + 1.0) / dm;
  }
  return out;
}

}  // namespace wsir
