#include "listmatch/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "listmatch/quadrature.hpp"
#include "listmatch/textio.hpp"

namespace listmatch {

namespace {

constexpr double kMaxStep = 1e-3;
constexpr double kEscapeSlack = 1e-9;

int grid_steps(double t_max, double step) {
    if (!(t_max > 0.0)) throw std::domain_error("ode: t_max must be positive");
    if (!(step > 0.0)) throw std::domain_error("ode: step must be positive");
    return std::max(1, static_cast<int>(std::ceil(t_max / step - 1e-12)));
}

void check_scalar_args(double d, double step) {
    if (!(d >= 1.0)) throw std::domain_error("ode: require d >= 1");
    if (step > kMaxStep) throw std::domain_error("ode: step must be <= 1e-3");
}

bool is_integer(double d) { return d == std::floor(d) && d < 1e9; }

}  // namespace

double OdeSolution::x_at(double t) const {
    if (t_grid.empty()) throw std::logic_error("OdeSolution: empty grid");
    if (t <= t_grid.front()) return x.front();
    if (t >= t_grid.back()) return x.back();
    const double pos = t / step;
    const std::size_t i = std::min(static_cast<std::size_t>(pos), x.size() - 2);
    const double w = pos - static_cast<double>(i);
    return x[i] * (1.0 - w) + x[i + 1] * w;
}

double match_rate_factor(double x, double d) {
    if (is_integer(d)) {
        const int di = static_cast<int>(d);
        double sum = 0.0;
        for (int j = 0; j < di; ++j) sum = sum * x + 1.0;
        return sum;
    }
    if (1.0 - x < 1e-6) return d * (1.0 + (d - 1.0) * (x - 1.0) / 2.0);
    return (1.0 - std::pow(x, d)) / (1.0 - x);
}

namespace detail {

std::vector<double> rk4_scalar(const std::function<double(double)>& f,
                               double x0, double t_max, double step) {
    const int steps = grid_steps(t_max, step);
    const double h = t_max / steps;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    double x = x0;
    out.push_back(x);
    for (int i = 0; i < steps; ++i) {
        const double k1 = f(x);
        const double k2 = f(x + 0.5 * h * k1);
        const double k3 = f(x + 0.5 * h * k2);
        const double k4 = f(x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push_back(x);
    }
    return out;
}

}  // namespace detail

OdeSolution solve_ivp(double d, double t_max, double step) {
    check_scalar_args(d, step);
    const int steps = grid_steps(t_max, step);
    const double h = t_max / steps;
    const auto rate = [d](double x) { return 1.0 - std::pow(x, d); };

    OdeSolution sol;
    sol.d = d;
    sol.q = 1;
    sol.step = h;
    sol.x = detail::rk4_scalar(rate, 0.0, t_max, h);
    sol.t_grid.resize(sol.x.size());
    sol.x_prime.resize(sol.x.size());
    for (std::size_t i = 0; i < sol.x.size(); ++i) {
        if (sol.x[i] < -kEscapeSlack || sol.x[i] > 1.0 + kEscapeSlack)
            throw std::runtime_error("solve_ivp: solution escaped [0, 1]");
        sol.t_grid[i] = static_cast<double>(i) * h;
        sol.x_prime[i] = rate(sol.x[i]);
    }

    // Dual-route validation against the integral form of the equation, on
    // points where the map t -> x is still well conditioned.
    for (double t : {0.5, 1.0, 2.0}) {
        if (t > t_max + 1e-12) continue;
        const double xt = sol.x_at(t);
        if (1.0 - std::pow(xt, d) < 1e-6) continue;
        if (std::abs(invert_integral(xt, d) - t) > 1e-6)
            throw std::runtime_error("solve_ivp: integral-equation validation failed at t=" +
                                     format_g(t));
    }
    return sol;
}

double x_value_at(double d, double t, double step) {
    check_scalar_args(d, step);
    if (t < 0.0) throw std::domain_error("ode: t must be nonnegative");
    if (t == 0.0) return 0.0;
    const auto rate = [d](double x) { return 1.0 - std::pow(x, d); };
    const int steps = grid_steps(t, step);
    return detail::rk4_scalar(rate, 0.0, t, t / steps).back();
}

double invert_integral(double x_target, double d) {
    if (!(d >= 1.0)) throw std::domain_error("invert_integral: require d >= 1");
    if (!(x_target >= 0.0) || x_target >= 1.0)
        throw std::domain_error("invert_integral: require 0 <= x_target < 1");
    if (x_target == 0.0) return 0.0;
    return integrate([d](double u) { return 1.0 / (1.0 - std::pow(u, d)); }, 0.0, x_target);
}

double crossing_time(double d, double l) {
    if (!(d >= 1.0) || !(l > d)) throw std::domain_error("crossing_time: require 1 <= d < l");
    const auto rate_gap = [&](double t) {
        const double xd = x_value_at(d, t);
        const double xl = x_value_at(l, t);
        return (1.0 - std::pow(xl, l)) - (1.0 - std::pow(xd, d));
    };
    double lo = 1.0;
    double hi = 5.0;
    double g_lo = rate_gap(lo);
    const double g_hi = rate_gap(hi);
    if (!(g_lo > 0.0) || !(g_hi < 0.0))
        throw std::runtime_error("crossing_time: no sign change on [1, 5]");
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        const double g = rate_gap(mid);
        if (g > 0.0) {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
        }
    }
    (void)g_lo;
    return 0.5 * (lo + hi);
}

std::pair<double, double> xd1_bounds(double d) {
    if (!(d >= 1.0)) throw std::domain_error("xd1_bounds: require d >= 1");
    const double lower = std::pow((2.0 * d + 1.0) / (4.0 * d + 1.0), 1.0 / d);
    const double upper = std::pow((d + 1.0) / (2.0 * d + 1.0), 1.0 / d);
    return {lower, upper};
}

double integral_condition(double d) {
    if (!(d >= 1.0)) throw std::domain_error("integral_condition: require d >= 1");
    const double x1 = solve_ivp(d, 1.0, kMaxStep).x.back();
    // Split at a small cut: the (1 + ln u) part integrates to a*ln(a) in
    // closed form, the remainder is regular.
    const double a = std::min(1e-3, 0.5 * x1);
    const double head = a * std::log(a);
    const double head_rest = integrate(
        [d](double u) {
            if (u <= 0.0) return 0.0;
            const double ud = std::pow(u, d);
            return (1.0 + std::log(u)) * ud / (1.0 - ud);
        },
        0.0, a);
    const double tail = integrate(
        [d](double u) { return (1.0 + std::log(u)) / (1.0 - std::pow(u, d)); }, a, x1);
    return head + head_rest + tail;
}

double erlang_taken_fraction(double t, int q) {
    double term = std::exp(-t);
    double sum = term;
    for (int k = 1; k < q; ++k) {
        term *= t / k;
        sum += term;
    }
    return 1.0 - sum;
}

std::vector<double> erlang_seat_fractions(double t, int q) {
    std::vector<double> y(static_cast<std::size_t>(q));
    double term = std::exp(-t);
    y[0] = term;
    for (int k = 1; k < q; ++k) {
        term *= t / k;
        y[k] = term;
    }
    return y;
}

namespace {

// Derivatives of the seat-count system; state = (y^0..y^{q-1}, x).
void seat_system_rates(const std::vector<double>& state, double d, int q,
                       std::vector<double>& rates) {
    const double x = state[static_cast<std::size_t>(q)];
    const double gamma = match_rate_factor(x, d);
    rates[0] = -gamma * state[0];
    for (int k = 1; k < q; ++k) rates[k] = gamma * (state[k - 1] - state[k]);
    rates[static_cast<std::size_t>(q)] = gamma * state[static_cast<std::size_t>(q) - 1];
}

void check_conservation(const std::vector<double>& state, int q) {
    double total = 0.0;
    for (int k = 0; k <= q; ++k) total += state[static_cast<std::size_t>(k)];
    if (std::abs(total - 1.0) > 1e-6)
        throw std::runtime_error("multi_seat_solve: seat fractions no longer conserve mass");
}

OdeSolution make_multi_seat_solution(double d, int q, double h, int steps) {
    OdeSolution sol;
    sol.d = d;
    sol.q = q;
    sol.step = h;
    const std::size_t count = static_cast<std::size_t>(steps) + 1;
    sol.t_grid.resize(count);
    sol.x.resize(count);
    sol.x_prime.resize(count);
    if (q > 1) sol.y.assign(static_cast<std::size_t>(q), std::vector<double>(count));
    return sol;
}

}  // namespace

OdeSolution multi_seat_solve(double d, int q, double t_max, double step) {
    check_scalar_args(d, step);
    if (q < 1) throw std::domain_error("multi_seat_solve: require q >= 1");
    const int steps = grid_steps(t_max, step);
    const double h = t_max / steps;
    OdeSolution sol = make_multi_seat_solution(d, q, h, steps);

    const std::size_t dim = static_cast<std::size_t>(q) + 1;
    std::vector<double> state(dim, 0.0), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    state[0] = 1.0;  // all schools start empty

    const auto record = [&](int i) {
        sol.t_grid[i] = static_cast<double>(i) * h;
        const double x = state[dim - 1];
        sol.x[i] = x;
        sol.x_prime[i] = match_rate_factor(x, d) * state[dim - 2];
        if (q > 1)
            for (int k = 0; k < q; ++k) sol.y[k][i] = state[static_cast<std::size_t>(k)];
    };

    record(0);
    for (int i = 0; i < steps; ++i) {
        seat_system_rates(state, d, q, k1);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = state[j] + 0.5 * h * k1[j];
        seat_system_rates(tmp, d, q, k2);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = state[j] + 0.5 * h * k2[j];
        seat_system_rates(tmp, d, q, k3);
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = state[j] + h * k3[j];
        seat_system_rates(tmp, d, q, k4);
        for (std::size_t j = 0; j < dim; ++j)
            state[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        check_conservation(state, q);
        record(i + 1);
    }
    return sol;
}

OdeSolution tau_rescaled_solve(double d, int q, double t_max, double step) {
    check_scalar_args(d, step);
    if (q < 1) throw std::domain_error("tau_rescaled_solve: require q >= 1");
    const int steps = grid_steps(t_max, step);
    const double h = t_max / steps;

    const auto clock_rate = [d, q](double tau) {
        return match_rate_factor(erlang_taken_fraction(tau, q), d);
    };
    const std::vector<double> tau = detail::rk4_scalar(clock_rate, 0.0, t_max, h);

    OdeSolution sol = make_multi_seat_solution(d, q, h, steps);
    for (int i = 0; i <= steps; ++i) {
        sol.t_grid[i] = static_cast<double>(i) * h;
        const double x = erlang_taken_fraction(tau[i], q);
        const auto y = erlang_seat_fractions(tau[i], q);
        sol.x[i] = x;
        sol.x_prime[i] = match_rate_factor(x, d) * y[static_cast<std::size_t>(q) - 1];
        if (q > 1)
            for (int k = 0; k < q; ++k) sol.y[k][i] = y[static_cast<std::size_t>(k)];
    }
    return sol;
}

VerificationReport conjecture_scan(int q_max, int d_max, double t_max, int threads) {
    if (q_max < 1 || d_max < 1) throw std::domain_error("conjecture_scan: require q, d >= 1");
    constexpr double kEps = 1e-6;

    struct PairResult {
        double margin;
        std::vector<std::string> violations;
    };
    std::vector<PairResult> results(static_cast<std::size_t>(q_max),
                                    PairResult{1.0, {}});

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads))
#endif
    for (int q = 1; q <= q_max; ++q) {
        const double horizon = t_max > 0.0 ? t_max : static_cast<double>(q);
        std::vector<std::vector<double>> match_rate(static_cast<std::size_t>(d_max) + 1);
        for (int d = 1; d <= d_max + 1; ++d) {
            const OdeSolution sol = multi_seat_solve(d, q, horizon, kMaxStep);
            auto& curve = match_rate[static_cast<std::size_t>(d - 1)];
            curve.resize(sol.size());
            for (std::size_t i = 0; i < sol.size(); ++i)
                curve[i] = 1.0 - std::pow(sol.x[i], d);
        }
        PairResult& res = results[static_cast<std::size_t>(q - 1)];
        const int steps = grid_steps(horizon, kMaxStep);
        const double h = horizon / steps;
        for (int d = 1; d <= d_max; ++d) {
            const auto& lo = match_rate[static_cast<std::size_t>(d - 1)];
            const auto& hi = match_rate[static_cast<std::size_t>(d)];
            for (std::size_t i = 0; i < lo.size(); ++i) {
                const double slack = hi[i] - lo[i] + kEps;
                res.margin = std::min(res.margin, slack);
                if (slack < 0.0 && res.violations.size() < 32)
                    res.violations.push_back("violation q=" + std::to_string(q) +
                                             " d=" + std::to_string(d) + " t=" +
                                             format_g(static_cast<double>(i) * h, 6) +
                                             " gap=" + format_g(slack - kEps, 6));
            }
        }
    }

    VerificationReport report;
    report.claim_id = "conjecture";
    report.scope = "q=1.." + std::to_string(q_max) + " d=1.." + std::to_string(d_max) +
                   (t_max > 0.0 ? " t=[0," + format_g(t_max, 6) + "]" : " t=[0,q]") +
                   " eps=1e-06";
    report.margin = 1.0;
    for (const auto& res : results) {
        report.margin = std::min(report.margin, res.margin);
        for (const auto& v : res.violations) report.notes.push_back(v);
    }
    report.status = report.margin >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
    return report;
}

}  // namespace listmatch
