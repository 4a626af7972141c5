#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "listmatch/ode.hpp"
#include "listmatch/oracle.hpp"
#include "listmatch/quadrature.hpp"

using namespace listmatch;

namespace {

double sech2(double t) {
    const double c = std::cosh(t);
    return 1.0 / (c * c);
}

double max_abs_error(const OdeSolution& sol, double (*closed)(double)) {
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.size(); ++i)
        worst = std::max(worst, std::abs(sol.x[i] - closed(sol.t_grid[i])));
    return worst;
}

double x1_closed(double t) { return 1.0 - std::exp(-t); }
double x2_closed(double t) { return std::tanh(t); }

}  // namespace

TEST_CASE("quadrature integrates polynomials and steep rationals") {
    CHECK(integrate([](double u) { return u * u; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate([](double u) { return 1.0 / (1.0 + u * u); }, 0.0, 1.0) ==
          doctest::Approx(std::atan(1.0)).epsilon(1e-12));
    CHECK(integrate([](double u) { return std::exp(-u); }, 0.0, 30.0) ==
          doctest::Approx(1.0 - std::exp(-30.0)).epsilon(1e-11));
}

TEST_CASE("closed-form solutions are reproduced to 1e-8") {
    const OdeSolution s1 = solve_ivp(1.0, 3.0);
    CHECK(max_abs_error(s1, x1_closed) <= 1e-8);
    const OdeSolution s2 = solve_ivp(2.0, 3.0);
    CHECK(max_abs_error(s2, x2_closed) <= 1e-8);

    for (std::size_t i = 0; i < s2.size(); i += 100) {
        CHECK(s1.x_prime[i] == doctest::Approx(std::exp(-s1.t_grid[i])).epsilon(1e-8));
        CHECK(s2.x_prime[i] == doctest::Approx(sech2(s2.t_grid[i])).epsilon(1e-8));
    }
}

TEST_CASE("solution stays monotone inside the unit interval") {
    const OdeSolution sol = solve_ivp(7.0, 4.0);
    CHECK(sol.x.front() == 0.0);
    for (std::size_t i = 1; i < sol.size(); ++i) {
        CHECK(sol.x[i] >= sol.x[i - 1]);
        CHECK(sol.x[i] < 1.0);
    }
}

TEST_CASE("x(3,1) sits inside the closed-form bracket") {
    const double x = solve_ivp(3.0, 1.0).x.back();
    CHECK(x >= std::pow(7.0 / 13.0, 1.0 / 3.0));
    CHECK(x <= std::pow(4.0 / 7.0, 1.0 / 3.0));
}

TEST_CASE("scalar solver rejects bad arguments") {
    CHECK_THROWS_AS(solve_ivp(0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(solve_ivp(1.0, 1.0, 5e-3), std::domain_error);
    CHECK_THROWS_AS(solve_ivp(1.0, -1.0), std::domain_error);
}

TEST_CASE("halving the step shrinks the error like a fourth-order method") {
    const auto rate = [](double x) { return 1.0 - x * x; };
    const auto run = [&](double h) {
        const auto xs = detail::rk4_scalar(rate, 0.0, 3.0, h);
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            worst = std::max(worst, std::abs(xs[i] - std::tanh(static_cast<double>(i) * h)));
        return worst;
    };
    const double coarse = run(0.05);
    const double fine = run(0.025);
    CHECK(coarse / fine >= 8.0);  // nominal 16, asserted within a factor of 2
}

TEST_CASE("integral inversion recovers the time coordinate") {
    CHECK(invert_integral(0.0, 3.0) == 0.0);
    CHECK(invert_integral(1.0 - std::exp(-1.0), 1.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(invert_integral(std::tanh(1.0), 2.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(invert_integral(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(invert_integral(-0.1, 2.0), std::domain_error);
}

TEST_CASE("rate curves for d=1 and d=2 cross near 1.219") {
    const double t = crossing_time(1.0, 2.0);
    CHECK(std::abs(t - 1.219) <= 1e-3);
    CHECK_THROWS_AS(crossing_time(2.0, 2.0), std::domain_error);
}

TEST_CASE("crossing time for longer lists matches its frozen value") {
    const auto fixture =
        load_fixture(std::string(LISTMATCH_FIXTURE_DIR) + "/oracle_constants.txt");
    REQUIRE(fixture.count("crossing_time_d1_l4") == 1);
    const double t = crossing_time(1.0, 4.0);
    CHECK(t > 1.0);
    CHECK(t < 5.0);
    CHECK(std::abs(t - fixture.at("crossing_time_d1_l4")) <= 2e-4);
}

TEST_CASE("closed-form bounds bracket the solver across d") {
    const auto [lo1, hi1] = xd1_bounds(1.0);
    CHECK(lo1 == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(hi1 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(lo1 < 1.0 - std::exp(-1.0));
    CHECK(1.0 - std::exp(-1.0) < hi1);

    const auto [lo2, hi2] = xd1_bounds(2.0);
    CHECK(lo2 == doctest::Approx(std::sqrt(5.0 / 9.0)).epsilon(1e-14));
    CHECK(hi2 == doctest::Approx(std::sqrt(3.0 / 5.0)).epsilon(1e-14));
    CHECK(lo2 < std::tanh(1.0));
    CHECK(std::tanh(1.0) < hi2);

    double prev_lo = 0.0, prev_hi = 0.0;
    for (int d = 1; d <= 100; ++d) {
        const auto [lo, hi] = xd1_bounds(static_cast<double>(d));
        CHECK(lo > prev_lo);
        CHECK(hi > prev_hi);
        CHECK(lo < hi);
        prev_lo = lo;
        prev_hi = hi;
    }
    CHECK(prev_lo > 0.98);
    CHECK(prev_hi > 0.98);
}

TEST_CASE("the signed-log integral stays nonpositive") {
    CHECK(integral_condition(1.0) <= 1e-8);
    CHECK(integral_condition(10.0) <= 1e-8);

    // Sanity: (1 + ln u) integrates to u ln u, so the stretch up to 1/e is
    // negative on its own.
    const double a = 1e-8;
    const double head =
        integrate([](double u) { return std::log(u) + 1.0; }, a, std::exp(-1.0), 1e-10);
    CHECK(head == doctest::Approx(-std::exp(-1.0) - a * std::log(a)).epsilon(1e-9));
    CHECK(head < 0.0);
}

TEST_CASE("match_rate_factor handles the removable singularity") {
    CHECK(match_rate_factor(0.0, 3.0) == doctest::Approx(1.0));
    CHECK(match_rate_factor(0.5, 2.0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(match_rate_factor(1.0, 4.0) == doctest::Approx(4.0).epsilon(1e-12));
    // Non-integer d across the series switchover.
    const double before = match_rate_factor(1.0 - 2e-6, 2.5);
    const double after = match_rate_factor(1.0 - 5e-7, 2.5);
    CHECK(std::abs(before - 2.5) < 1e-5);
    CHECK(std::abs(after - 2.5) < 1e-5);
}

TEST_CASE("multi-seat system reproduces the one-try closed form") {
    const OdeSolution sol = multi_seat_solve(1.0, 4, 12.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.size(); ++i)
        worst = std::max(worst, std::abs(sol.x[i] - erlang_taken_fraction(sol.t_grid[i], 4)));
    CHECK(worst <= 1e-6);

    const OdeSolution two = multi_seat_solve(1.0, 2, 1.0);
    CHECK(two.x.back() == doctest::Approx(1.0 - 2.0 / std::exp(1.0)).epsilon(1e-6));

    for (std::size_t i = 0; i < sol.size(); i += 400) {
        double total = sol.x[i];
        for (const auto& yk : sol.y) total += yk[i];
        CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    }
    CHECK(sol.y[0][0] == doctest::Approx(1.0));
}

TEST_CASE("multi-seat system with one seat degenerates to the scalar solver") {
    const OdeSolution direct = multi_seat_solve(3.0, 1, 3.0);
    const OdeSolution scalar = solve_ivp(3.0, 3.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i)
        worst = std::max(worst, std::abs(direct.x[i] - scalar.x[i]));
    CHECK(worst <= 1e-8);
    CHECK(direct.y.empty());
}

TEST_CASE("time-change route agrees with direct integration") {
    // d = 1 keeps the clock trivial.
    const OdeSolution tau1 = tau_rescaled_solve(1.0, 3, 6.0);
    for (std::size_t i = 0; i < tau1.size(); i += 500)
        CHECK(tau1.x[i] ==
              doctest::Approx(erlang_taken_fraction(tau1.t_grid[i], 3)).epsilon(1e-10));

    const OdeSolution direct = multi_seat_solve(3.0, 4, 12.0);
    const OdeSolution mapped = tau_rescaled_solve(3.0, 4, 12.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < direct.size(); ++i) {
        worst = std::max(worst, std::abs(direct.x[i] - mapped.x[i]));
        for (int k = 0; k < 4; ++k)
            worst = std::max(worst, std::abs(direct.y[static_cast<std::size_t>(k)][i] -
                                             mapped.y[static_cast<std::size_t>(k)][i]));
    }
    CHECK(worst <= 1e-4);

    const OdeSolution tanh_route = tau_rescaled_solve(2.0, 1, 3.0);
    double tanh_err = 0.0;
    for (std::size_t i = 0; i < tanh_route.size(); ++i)
        tanh_err = std::max(tanh_err,
                            std::abs(tanh_route.x[i] - std::tanh(tanh_route.t_grid[i])));
    CHECK(tanh_err <= 1e-6);
}

TEST_CASE("taken fraction grows with d at fixed time") {
    const std::vector<double> d_list = {1.0, 1.5, 2.0, 3.0, 10.0};
    std::vector<OdeSolution> sols;
    for (double d : d_list) sols.push_back(solve_ivp(d, 3.0));
    for (std::size_t a = 0; a + 1 < sols.size(); ++a)
        for (std::size_t i = 0; i < sols[a].size(); i += 50)
            CHECK(sols[a + 1].x[i] >= sols[a].x[i] - 1e-9);
}

TEST_CASE("conjecture scan is clean on balanced horizons and flags the crossing") {
    const VerificationReport clean = conjecture_scan(1, 20);
    CHECK(clean.status == CheckStatus::pass);
    CHECK(clean.margin >= 0.0);

    const VerificationReport crossed = conjecture_scan(1, 1, 1.5);
    CHECK(crossed.status == CheckStatus::fail);
    CHECK(crossed.margin < 0.0);
    REQUIRE(!crossed.notes.empty());
    CHECK(crossed.notes.front().find("violation q=1 d=1") != std::string::npos);
}
