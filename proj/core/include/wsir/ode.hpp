#ifndef WSIR_ODE_HPP
#define WSIR_ODE_HPP

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace wsir {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using OdeRhs =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Adaptive Dormand-Prince 5(4) with combined absolute+relative error
/// control at `tol`. Integrates from t0 and invokes `observer` at each
/// requested output time (sorted ascending, all >= t0); steps are
/// clipped to land exactly on output times.
void integrate_adaptive(const OdeRhs& rhs, std::vector<double> y, double t0,
                        std::span<const double> out_times, double tol,
                        const std::function<void(double, std::span<const double>)>& observer);

}  // namespace wsir

#endif
