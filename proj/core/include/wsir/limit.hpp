#ifndef WSIR_LIMIT_HPP
#define WSIR_LIMIT_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "wsir/weights.hpp"

namespace wsir {

/// Parameters of the large-n deterministic limit (no vertex count).
struct LimitParams {
  WeightDistribution dist;
  double theta = 0.0;   // in (0,1)
  double p = 0.0;       // edge probability
  double lambda = 0.0;  // infection rate, > 0
};

/// Deterministic limit curves on a shared time grid. Depending on the
/// solver route, either (psi, hs, hv) or (s_by_class, v) or both are
/// populated.
struct LimitSolution {
  std::vector<double> times;
  std::vector<double> psi;
  std::vector<double> hs;
  std::vector<double> hv;
  std::vector<double> v;
  std::vector<std::vector<double>> s_by_class;  // [time][class]

  double total_s(std::size_t ti) const {
    double s = 0.0;
    for (double x : s_by_class[ti]) s += x;
    return s;
  }
};

struct HorizonExceeded : std::runtime_error {
  double reachable_t_max;
  HorizonExceeded(const std::string& msg, double t_max)
      : std::runtime_error(msg), reachable_t_max(t_max) {}
};

/// H_S(x) = (1-theta) E(x^rho), x > 0.
double h_s(const LimitParams& lp, double x);

/// H_V(x) = E rho - (1-theta) E(rho x^rho) + log(x)/(p lambda), x > 0.
/// May be negative below the extinction root.
double h_v(const LimitParams& lp, double x);

/// 1 / (p E rho^2)
double lambda_critical(const WeightDistribution& dist, double p);

/// Scalar ODE dpsi/dt = -p lambda psi H_V(psi), psi_0 = 1; fills
/// psi, hs, hv on the given grid.
LimitSolution solve_psi(const LimitParams& lp, std::span<const double> times,
                        double tol);

/// K+1 dimensional system: ds(i)/dt = -p lambda v q_i s(i),
/// dv/dt = -v + p lambda v sum q_i^2 s(i); fills s_by_class, v.
LimitSolution solve_component_ode(const LimitParams& lp,
                                  std::span<const double> times, double tol);

/// Time-change construction: with u the changed time, v(A_u) =
/// H_V(e^{-p lambda u}), A_u = integral of 1/H_V(e^{-p lambda r});
/// original-time curves recovered by monotone inversion of A. Fills
/// psi, hs, hv, s_by_class, v. Throws HorizonExceeded when a requested
/// time lies beyond the quadrature-resolvable horizon.
LimitSolution solve_time_change(const LimitParams& lp,
                                std::span<const double> times, double tol);

/// Classical SIR fluid limit: ds/dt = -lambda s v,
/// dv/dt = lambda s v - v, s_0 = 1-theta, v_0 = theta.
struct ClassicalSolution {
  std::vector<double> times, s, v;
};
ClassicalSolution classical_limit(double theta, double lambda,
                                  std::span<const double> times, double tol);

}  // namespace wsir

#endif
