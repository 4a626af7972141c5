// Continuum market: the scalar IVP x' = 1 - x^d, the multi-seat ODE system,
// closed forms, crossing times, and the integral-equation validator.
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "listmatch/report.hpp"

namespace listmatch {

// Grid-sampled trajectory. x is the fraction of fully-taken schools; for
// q > 1, y[k] tracks the fraction of schools with exactly k seats taken.
struct OdeSolution {
    double d = 1.0;
    int q = 1;
    double step = 0.0;                  // actual grid spacing used
    std::vector<double> t_grid;
    std::vector<double> x;
    std::vector<double> x_prime;
    std::vector<std::vector<double>> y; // y[k], k = 0..q-1; empty when q == 1

    std::size_t size() const { return t_grid.size(); }
    // Linear interpolation on the grid.
    double x_at(double t) const;
};

// (1 - x^d) / (1 - x), evaluated stably near x = 1: polynomial form for
// integer d, two-term expansion otherwise.
double match_rate_factor(double x, double d);

// Classical fixed-step 4th-order integration of x' = 1 - x^d, x(0) = 0.
// Requires d >= 1 and step <= 1e-3; throws on solver instability.
OdeSolution solve_ivp(double d, double t_max, double step = 1e-3);

// x(t) at a single time, integrating with steps of at most `step`.
double x_value_at(double d, double t, double step = 1e-3);

// Inverse of t -> x: t = integral of 1/(1 - u^d) over [0, x_target].
double invert_integral(double x_target, double d);

// Smallest t > 1 with x'_l(t) = x'_d(t), by bisection on [1, 5]; tol 1e-4.
double crossing_time(double d, double l);

// Bounds on x(d, 1): (((2d+1)/(4d+1))^{1/d}, ((d+1)/(2d+1))^{1/d}).
std::pair<double, double> xd1_bounds(double d);

// Integral of (1 + ln u)/(1 - u^d) over [0, x(d,1)]; nonpositive for d >= 1.
// The log singularity at 0 is integrated in closed form on the first panel.
double integral_condition(double d);

// Direct integration of the (q+1)-dimensional seat-count system.
OdeSolution multi_seat_solve(double d, int q, double t_max, double step = 1e-3);

// Same trajectories through the time-change route: integrate the scalar
// rescaling clock against the closed-form one-try solution, then map.
OdeSolution tau_rescaled_solve(double d, int q, double t_max, double step = 1e-3);

// Closed-form multi-seat solution for d = 1: x, y^k of the Erlang family.
double erlang_taken_fraction(double t, int q);
std::vector<double> erlang_seat_fractions(double t, int q);

// Checks 1 - x_{d+1}^{d+1} >= 1 - x_d^d - eps on the grid for every pair
// q = 1..q_max, d = 1..d_max. t_max <= 0 scans each pair on [0, q].
// Violations are reported, not thrown.
VerificationReport conjecture_scan(int q_max, int d_max, double t_max = 0.0,
                                   int threads = 1);

namespace detail {
// Fixed-step RK4 without the production step guard; used by the
// step-halving order tests.
std::vector<double> rk4_scalar(const std::function<double(double)>& f,
                               double x0, double t_max, double step);
}  // namespace detail

}  // namespace listmatch
