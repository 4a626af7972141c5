// Discrete Serial Dictatorship market with bounded preference lists:
// one-realization simulator plus the closed-form conditional probabilities
// that drive it.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "listmatch/rng.hpp"

namespace listmatch {

// Rank of the school a student receives, 1-based position in their list.
// kUnmatched is the explicit sentinel for students left without a seat.
enum : std::int32_t { kUnmatched = 0 };

enum class DistKind { uniform, pareto_low, pareto_high, two_class, degenerate, custom };

// School-sampling law. Weights are materialized for every kind, nonnegative,
// and normalized to sum to 1.
struct DistributionSpec {
    DistKind kind = DistKind::uniform;
    std::vector<double> weights;

    static DistributionSpec make(DistKind kind, int n);
    static DistributionSpec custom(std::vector<double> weights);
    static DistributionSpec parse(const std::string& name, int n);

    bool is_uniform() const { return kind == DistKind::uniform; }
    std::string name() const;
};

struct MarketConfig {
    int n = 1000;              // number of schools
    int d = 1;                 // preference list length, 1 <= d <= n
    int q = 1;                 // seats per school
    int m = 1000;              // students to process
    DistributionSpec dist;     // school-sampling law (weights length n)
    std::uint64_t seed = 42;   // master RNG seed

    // Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

// One realization of the mechanism.
struct SimOutcome {
    // ranks[i] in {1..d} or kUnmatched for student i+1.
    std::vector<std::int32_t> ranks;
    std::vector<std::uint8_t> matched;
    // taken_trajectory[c] = number of schools with all q seats taken after
    // the first c students, c = 0..m (so entry c is T_{c+1} of the model).
    std::vector<std::int32_t> taken_trajectory;
    // seat_histogram_final[k] = schools with exactly k seats taken at the end.
    std::vector<std::int32_t> seat_histogram_final;
    // full_at[j] = 1-based index of the student whose turn filled school j's
    // last seat, or 0 if the school never fills.
    std::vector<std::int32_t> full_at;
};

// P(student matches | k schools fully taken) for the uniform one-seat market:
// 1 if k < d, else 1 - C(k,d)/C(n,d) evaluated as a product of ratios.
double match_prob_exact(int n, int d, int k);

// The 1 - (k/n)^d approximation; |approx - exact| <= d^2/n.
double match_prob_approx(int n, int d, int k);

// P(K_i = r | T_i = k) under uniform sampling without replacement.
// Sums over r = 1..d to match_prob_exact(n, d, k).
double rank_prob_given_taken(int n, int d, int k, int r);

// Runs the mechanism once. The preference list of each student is sampled
// lazily (deferred decisions): schools are drawn one at a time without
// replacement and the scan stops at the first school with a free seat.
SimOutcome run_market(const MarketConfig& config, Rng& stream);

// Reusable simulator: identical output to run_market but recycles internal
// buffers, which the replication engine relies on.
class MarketSimulator {
public:
    explicit MarketSimulator(const MarketConfig& config);

    const SimOutcome& simulate(Rng& stream);
    const SimOutcome& outcome() const { return outcome_; }
    const MarketConfig& config() const { return config_; }

private:
    int draw_school(Rng& stream, int draws_so_far);

    MarketConfig config_;
    SimOutcome outcome_;
    int max_list_len_ = 0;                    // d, capped by positive-weight schools
    std::vector<std::int32_t> pool_;          // uniform path: permutation of schools
    std::vector<std::int32_t> seats_taken_;
    std::vector<std::int32_t> drawn_;         // weighted path: this student's draws
    // Walker alias table for weighted draws.
    std::vector<double> alias_accept_;
    std::vector<std::int32_t> alias_index_;
};

}  // namespace listmatch
