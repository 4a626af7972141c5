// Replicated simulation engine. Replications run either on the serial
// reference path or OpenMP-parallel; per-replication seeding plus
// integer/per-slot accumulation make the two produce identical bytes.
#pragma once

#include <cstdint>
#include <vector>

#include "listmatch/market.hpp"

namespace listmatch {

struct Estimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::int64_t reps = 0;
};

struct TrajectoryEstimate {
    std::vector<double> t_grid;
    std::vector<double> mean_fraction;           // E[T_{floor(tn)}] / n
    std::vector<double> mean_fraction_std_err;
    std::vector<double> sup_deviation_samples;   // one sup_t |T/n - x_d(t)| per rep
    bool grid_coarse_warning = false;            // grid spacing exceeded 1/n

    double sup_deviation_mean() const;
    double sup_deviation_median() const;
};

// Both Monte Carlo routes to the Random Serial Dictatorship match rate:
// direct fraction matched, and the school-side identity estimator.
struct RsdEstimate {
    Estimate direct;
    Estimate identity;
};

// Per-student statistics gathered in a single replication pass.
struct StudentStats {
    int student = 0;            // 1-based index i
    Estimate p_match;           // P(M_i = 1)
    Estimate rank_cdf;          // P(K_i <= k)
    Estimate taken_fraction;    // E[T_i] / n
};

// threads <= 1 runs the serial reference path; anything larger uses the
// OpenMP kernel. Results are identical either way.
std::vector<Estimate> estimate_match_prob(const MarketConfig& config,
                                          const std::vector<int>& student_indices,
                                          std::int64_t reps, int threads = 1);

Estimate estimate_match_prob(const MarketConfig& config, int student_index,
                             std::int64_t reps, int threads = 1);

Estimate estimate_rank_cdf(const MarketConfig& config, int student_index, int k,
                           std::int64_t reps, int threads = 1);

// One pass producing the simulate-command row data for many students.
std::vector<StudentStats> estimate_student_stats(const MarketConfig& config,
                                                 const std::vector<int>& student_indices,
                                                 int k, std::int64_t reps, int threads = 1);

// Paired estimate of P(M_i = 1 | d_hi) - P(M_i = 1 | d_lo) for consecutive
// entries of d_list, on common random numbers: each replication drives every
// list length with the same stream, so the difference carries its own (much
// smaller) standard error.
struct PairedGap {
    int d_lo = 0;
    int d_hi = 0;
    std::vector<Estimate> gap;  // one per requested student index
};
std::vector<PairedGap> estimate_match_prob_gaps(const MarketConfig& base,
                                                const std::vector<int>& d_list,
                                                const std::vector<int>& student_indices,
                                                std::int64_t reps, int threads = 1);

// Sup-deviation diagnostics against the continuum solution on a uniform
// t-grid over [0, t_max]; requires config.m >= ceil(t_max * n).
TrajectoryEstimate estimate_trajectory(const MarketConfig& config, double t_max,
                                       int grid_points, std::int64_t reps,
                                       int threads = 1);

// Returns the direct estimator; throws std::runtime_error if the two routes
// disagree by more than 3 combined standard errors.
RsdEstimate estimate_rsd(const MarketConfig& config, std::int64_t reps, int threads = 1);

// Frequency with which school 1 is fully matched before student i's turn.
Estimate estimate_school_match_prob(const MarketConfig& config, int student_index,
                                    std::int64_t reps, int threads = 1);

}  // namespace listmatch
