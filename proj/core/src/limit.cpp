#include "wsir/limit.hpp"

#include <algorithm>
#include <cmath>

#include "wsir/ode.hpp"

namespace wsir {

namespace {
constexpr double kExtinctionFloor = 1e-12;
}

double h_s(const LimitParams& lp, double x) {
  if (!(x > 0.0)) throw std::domain_error("h_s requires x > 0");
  return (1.0 - lp.theta) * lp.dist.generalized_moment(x, false);
}

double h_v(const LimitParams& lp, double x) {
  if (!(x > 0.0)) throw std::domain_error("h_v requires x > 0");
  return lp.dist.moment(1) -
         (1.0 - lp.theta) * lp.dist.generalized_moment(x, true) +
         std::log(x) / (lp.p * lp.lambda);
}

double lambda_critical(const WeightDistribution& dist, double p) {
  const double m2 = dist.moment(2);
  if (m2 <= 0.0)
    throw std::domain_error("lambda_critical: E rho^2 must be positive");
  return 1.0 / (p * m2);
}

LimitSolution solve_psi(const LimitParams& lp, std::span<const double> times,
                        double tol) {
  LimitSolution sol;
  sol.times.assign(times.begin(), times.end());

  const double pl = lp.p * lp.lambda;
  OdeRhs rhs = [&lp, pl](double, std::span<const double> y,
                         std::span<double> dydt) {
    const double psi = y[0];
    const double hv = h_v(lp, psi);
    // below the extinction floor the true solution is asymptotically flat
    dydt[0] = hv < kExtinctionFloor ? 0.0 : -pl * psi * hv;
  };

  integrate_adaptive(rhs, {1.0}, 0.0, times, tol,
                     [&](double, std::span<const double> y) {
                       const double psi = y[0];
                       sol.psi.push_back(psi);
                       sol.hs.push_back(h_s(lp, psi));
                       const double hv = h_v(lp, psi);
                       sol.hv.push_back(hv < kExtinctionFloor ? std::max(hv, 0.0) : hv);
                     });
  return sol;
}

LimitSolution solve_component_ode(const LimitParams& lp,
                                  std::span<const double> times, double tol) {
  LimitSolution sol;
  sol.times.assign(times.begin(), times.end());
  const auto& atoms = lp.dist.atoms();
  const std::size_t K = atoms.size();
  const double pl = lp.p * lp.lambda;

  std::vector<double> y0(K + 1);
  for (std::size_t i = 0; i < K; ++i) y0[i] = (1.0 - lp.theta) * atoms[i].mu;
  y0[K] = lp.theta * lp.dist.moment(1);

  OdeRhs rhs = [&atoms, K, pl](double, std::span<const double> y,
                               std::span<double> dydt) {
    const double v = y[K];
    if (v < kExtinctionFloor) {
      std::fill(dydt.begin(), dydt.end(), 0.0);
      return;
    }
    double qq = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      dydt[i] = -pl * v * atoms[i].q * y[i];
      qq += atoms[i].q * atoms[i].q * y[i];
    }
    dydt[K] = -v + pl * v * qq;
  };

  integrate_adaptive(rhs, y0, 0.0, times, tol,
                     [&](double, std::span<const double> y) {
                       sol.s_by_class.emplace_back(y.begin(), y.begin() + K);
                       sol.v.push_back(y[K] < kExtinctionFloor ? 0.0 : y[K]);
                     });
  return sol;
}

namespace {

// Adaptive-Simpson quadrature knots of A(u) = integral du / g(u).
struct Knots {
  std::vector<double> u, a;  // cumulative, strictly increasing in both
};

double simpson(const std::function<double(double)>& f, double u0, double u1,
               double f0, double fm, double f1) {
  return (u1 - u0) / 6.0 * (f0 + 4.0 * fm + f1);
}

void adapt(const std::function<double(double)>& f, double u0, double u1,
           double f0, double fm, double f1, double whole, double tol,
           int depth, double& acc, Knots& knots) {
  const double m = 0.5 * (u0 + u1);
  const double flm = f(0.5 * (u0 + m));
  const double frm = f(0.5 * (m + u1));
  const double left = simpson(f, u0, m, f0, flm, fm);
  const double right = simpson(f, m, u1, fm, frm, f1);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth >= 48) {
    acc += left + right + delta / 15.0;
    knots.u.push_back(u1);
    knots.a.push_back(acc);
    return;
  }
  adapt(f, u0, m, f0, flm, fm, left, 0.5 * tol, depth + 1, acc, knots);
  adapt(f, m, u1, fm, frm, f1, right, 0.5 * tol, depth + 1, acc, knots);
}

// integral of f over [u0, u1], appending knots; assumes f smooth positive
void integrate_panel(const std::function<double(double)>& f, double u0,
                     double u1, double tol, double& acc, Knots& knots) {
  const double f0 = f(u0), f1 = f(u1), fm = f(0.5 * (u0 + u1));
  adapt(f, u0, u1, f0, fm, f1, simpson(f, u0, u1, f0, fm, f1), tol, 0, acc,
        knots);
}

// local quadrature from a knot to an interior point (short interval)
double local_a(const std::function<double(double)>& f, double u0, double u1) {
  // two-panel Simpson with Richardson correction
  const double m = 0.5 * (u0 + u1);
  const double f0 = f(u0), fm = f(m), f1 = f(u1);
  const double whole = simpson(f, u0, u1, f0, fm, f1);
  const double left = simpson(f, u0, m, f0, f(0.5 * (u0 + m)), fm);
  const double right = simpson(f, m, u1, fm, f(0.5 * (m + u1)), f1);
  return left + right + (left + right - whole) / 15.0;
}

}  // namespace

LimitSolution solve_time_change(const LimitParams& lp,
                                std::span<const double> times, double tol) {
  const double pl = lp.p * lp.lambda;
  auto g = [&lp, pl](double u) { return h_v(lp, std::exp(-pl * u)); };
  auto integrand = [&g](double u) { return 1.0 / g(u); };

  // root u* of g: g(0) = theta E rho > 0, and g -> -inf as u -> inf
  double lo = 0.0, hi = 1.0 / pl;
  while (g(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 700.0 / pl) break;
  }
  double u_star = hi;
  if (g(hi) <= 0.0) {
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) > 0.0 ? lo : hi) = mid;
    }
    u_star = lo;
  }

  const double t_end = times.empty() ? 0.0 : times.back();

  // extend the quadrature toward u*, shrinking the standoff delta until
  // the reachable horizon covers t_end
  Knots knots;
  knots.u.push_back(0.0);
  knots.a.push_back(0.0);
  double acc = 0.0;
  double delta = 0.125 * u_star;
  double u_cap = u_star - delta;
  integrate_panel(integrand, 0.0, u_cap, tol, acc, knots);
  const double delta_min = std::max(u_star * 1e-14, 1e-300);
  while (acc < t_end && delta > delta_min) {
    delta *= 0.125;
    const double u_next = u_star - delta;
    integrate_panel(integrand, u_cap, u_next, tol, acc, knots);
    u_cap = u_next;
  }
  if (acc < t_end)
    throw HorizonExceeded(
        "requested time " + std::to_string(t_end) +
            " beyond the quadrature-resolvable horizon t_max = " +
            std::to_string(acc),
        acc);

  // invert A at a requested time: bracket by knots, then Newton with
  // exact derivative 1/g and local quadrature for the residual
  auto invert = [&](double t) -> double {
    if (t <= 0.0) return 0.0;
    const auto it = std::lower_bound(knots.a.begin(), knots.a.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - knots.a.begin());
    if (k == 0) return knots.u.front();
    if (k >= knots.a.size()) return knots.u.back();
    const double u_knot = knots.u[k - 1];
    const double alo = knots.a[k - 1];
    double ulo = u_knot, uhi = knots.u[k];
    double u = ulo + (uhi - ulo) * (t - alo) / (knots.a[k] - alo);
    for (int it2 = 0; it2 < 64; ++it2) {
      // residual always measured from the fixed knot baseline
      const double res = alo + local_a(integrand, u_knot, u) - t;
      if (std::abs(res) <= tol * std::max(1.0, t)) break;
      (res > 0.0 ? uhi : ulo) = u;
      const double step = res * g(u);  // Newton: dA/du = 1/g
      double u_next = u - step;
      if (!(u_next > ulo && u_next < uhi)) u_next = 0.5 * (ulo + uhi);
      if (std::abs(u_next - u) < 1e-17 * std::max(1.0, u)) {
        u = u_next;
        break;
      }
      u = u_next;
    }
    return u;
  };

  LimitSolution sol;
  sol.times.assign(times.begin(), times.end());
  const auto& atoms = lp.dist.atoms();
  for (double t : times) {
    const double u = invert(t);
    const double psi = std::exp(-pl * u);
    sol.psi.push_back(psi);
    sol.hs.push_back(h_s(lp, psi));
    const double hv = h_v(lp, psi);
    sol.hv.push_back(hv);
    sol.v.push_back(hv);
    std::vector<double> s(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i)
      s[i] = (1.0 - lp.theta) * atoms[i].mu * std::pow(psi, atoms[i].q);
    sol.s_by_class.push_back(std::move(s));
  }
  return sol;
}

ClassicalSolution classical_limit(double theta, double lambda,
                                  std::span<const double> times, double tol) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::domain_error("theta must lie strictly in (0,1)");
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");

  ClassicalSolution sol;
  sol.times.assign(times.begin(), times.end());
  OdeRhs rhs = [lambda](double, std::span<const double> y,
                        std::span<double> dydt) {
    const double s = y[0], v = y[1];
    if (v < kExtinctionFloor) {
      dydt[0] = dydt[1] = 0.0;
      return;
    }
    dydt[0] = -lambda * s * v;
    dydt[1] = lambda * s * v - v;
  };
  integrate_adaptive(rhs, {1.0 - theta, theta}, 0.0, times, tol,
                     [&](double, std::span<const double> y) {
                       sol.s.push_back(y[0]);
                       sol.v.push_back(y[1] < kExtinctionFloor ? 0.0 : y[1]);
                     });
  return sol;
}

}  // namespace wsir
