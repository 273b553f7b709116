#ifndef WSIR_WEIGHTS_HPP
#define WSIR_WEIGHTS_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace wsir {

struct WeightAtom {
  double q;   // weight value, 0 <= q <= M1
  double mu;  // probability mass, > 0
};

/// Finite-support law of the vertex weight: atoms (q_j, mu_j) sorted
/// ascending by q, masses summing to one, at least one q > 0.
class WeightDistribution {
 public:
  // Merges equal-q atoms, sorts, renormalizes masses off by <= 1e-9.
  // Throws std::invalid_argument on bad masses or all-zero weights.
  static WeightDistribution from_pairs(
      std::span<const std::pair<double, double>> pairs);
  static WeightDistribution from_pairs(
      std::initializer_list<std::pair<double, double>> pairs);

  /// Degenerate law with all mass on a single value q > 0.
  static WeightDistribution degenerate(double q);

  const std::vector<WeightAtom>& atoms() const { return atoms_; }
  std::size_t class_count() const { return atoms_.size(); }
  double bound() const { return m1_; }  // M1 = max q

  /// E(rho^k)
  double moment(unsigned k) const;

  /// E(x^rho) if !weighted, E(rho x^rho) if weighted. Requires x > 0.
  double generalized_moment(double x, bool weighted) const;

 private:
  WeightDistribution() = default;
  std::vector<WeightAtom> atoms_;
  double m1_ = 0.0;
};

/// Realized i.i.d. weights on n vertices plus the class index of each.
struct WeightAssignment {
  std::vector<double> values;
  std::vector<std::uint32_t> class_of;
  std::size_t class_count = 0;

  std::size_t size() const { return values.size(); }
};

WeightAssignment sample_assignment(const WeightDistribution& dist,
                                   std::size_t n, std::uint64_t seed);

/// Assignment from arbitrary per-vertex values, treated as one class.
/// Used for continuous weight samples where no finite atom set exists.
WeightAssignment assignment_from_values(std::vector<double> values);

enum class Discretization { Lower, Upper };

/// floor(m x)/m (Lower) or (floor(m x)+1)/m (Upper), elementwise.
std::vector<double> discretize(std::span<const double> samples, unsigned m,
                               Discretization direction);

}  // namespace wsir

#endif
