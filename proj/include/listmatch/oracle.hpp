// Exact, non-Monte-Carlo ground truth for the uniform one-seat market:
// dynamic programming over the taken-count Markov chain, and exhaustive
// enumeration of every preference list for tiny markets.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace listmatch {

// Probability mass functions of T_i (schools taken just before student i's
// turn), one row per student i = 1..horizon.
struct TakenDistribution {
    int n = 0;
    int d = 0;
    std::vector<std::vector<double>> pmf_by_student;

    const std::vector<double>& row(int i) const { return pmf_by_student.at(i - 1); }
    double mean_taken(int i) const;
};

// Full DP table. Refuses horizon * (n + 1) > 1e8 cells.
TakenDistribution taken_distribution(int n, int d, int horizon);

// P(M_i = 1) = sum_k P(T_i = k) * match_prob_exact(n, d, k).
double exact_match_prob(int n, int d, int i);

// Streaming variants: one rolling DP row, values for every i = 1..horizon.
std::vector<double> exact_match_prob_profile(int n, int d, int horizon);
std::vector<double> exact_mean_taken_profile(int n, int d, int horizon);
std::vector<double> exact_rank_cdf_profile(int n, int d, int horizon, int k);

// P(K_i <= k).
double exact_rank_cdf(int n, int d, int i, int k);

// Exact joint law of the rank vector (and hence of the taken trajectory)
// over all students' ordered lists. ranks[i] = 0 encodes unmatched.
struct MarketLaw {
    int n = 0;
    int d = 0;
    int m = 0;
    std::map<std::vector<std::int8_t>, double> outcomes;

    double match_prob(int i) const;            // P(M_i = 1), i 1-based
    double rank_cdf(int i, int k) const;       // P(K_i <= k)
    double mean_taken(int i) const;            // E[T_i]
    double matched_fraction() const;           // E[#matched] / m (the RSD rate)
    double total_mass() const;
};

// Uniform lists. Guard: (ordered d-tuple count)^m must not exceed 1e7.
MarketLaw enumerate_market(int n, int d, int m);
// Weighted lists drawn without replacement, same guard.
MarketLaw enumerate_market(int n, int d, int m, const std::vector<double>& weights);

// Frozen oracle constants, plain "name value" lines with 15 significant
// digits. Throws if the file or a requested key is missing.
std::map<std::string, double> load_fixture(const std::string& path);

}  // namespace listmatch
