#include "wsir/ode.hpp"

#include <algorithm>
#include <cmath>

namespace wsir {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

void integrate_adaptive(
    const OdeRhs& rhs, std::vector<double> y, double t0,
    std::span<const double> out_times, double tol,
    const std::function<void(double, std::span<const double>)>& observer) {
  const std::size_t dim = y.size();
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim),
      k7(dim), ytmp(dim), ynew(dim);

  double t = t0;
  rhs(t, y, k1);  // FSAL
  double h = 1e-4;

  std::size_t oi = 0;
  while (oi < out_times.size() && out_times[oi] <= t) {
    observer(out_times[oi], y);
    ++oi;
  }
  if (oi >= out_times.size()) return;

  std::size_t rejects_in_a_row = 0;
  while (oi < out_times.size()) {
    const double t_target = out_times[oi];
    const double h_free = h;  // step size before clipping to the grid
    bool clipped = false;
    if (t + h >= t_target) {
      h = t_target - t;
      clipped = true;
    }

    auto stage = [&](std::span<const double> coeffs,
                     const std::vector<std::vector<double>*>& ks) {
      for (std::size_t i = 0; i < dim; ++i) {
        double acc = y[i];
        for (std::size_t s = 0; s < ks.size(); ++s)
          acc += h * coeffs[s] * (*ks[s])[i];
        ytmp[i] = acc;
      }
    };

    {
      const double cs[] = {a21};
      stage(cs, {&k1});
      rhs(t + c2 * h, ytmp, k2);
    }
    {
      const double cs[] = {a31, a32};
      stage(cs, {&k1, &k2});
      rhs(t + c3 * h, ytmp, k3);
    }
    {
      const double cs[] = {a41, a42, a43};
      stage(cs, {&k1, &k2, &k3});
      rhs(t + c4 * h, ytmp, k4);
    }
    {
      const double cs[] = {a51, a52, a53, a54};
      stage(cs, {&k1, &k2, &k3, &k4});
      rhs(t + c5 * h, ytmp, k5);
    }
    {
      const double cs[] = {a61, a62, a63, a64, a65};
      stage(cs, {&k1, &k2, &k3, &k4, &k5});
      rhs(t + h, ytmp, k6);
    }
    for (std::size_t i = 0; i < dim; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                            b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, ynew, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = tol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double r = ei / scale;
      err += r * r;
    }
    err = std::sqrt(err / static_cast<double>(dim));

    if (err <= 1.0) {
      rejects_in_a_row = 0;
      t = t + h;
      y.swap(ynew);
      k1.swap(k7);
      if (clipped) {
        t = t_target;
        while (oi < out_times.size() && out_times[oi] <= t) {
          observer(out_times[oi], y);
          ++oi;
        }
      }
      if (clipped) {
        h = h_free;  // resume with the unclipped step size
      } else {
        const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
      }
    } else {
      if (++rejects_in_a_row > 64)
        throw SolverError("step control failed to converge at t = " +
                          std::to_string(t) + ", h = " + std::to_string(h));
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw SolverError("step size underflow at t = " + std::to_string(t));
  }
}

}  // namespace wsir
