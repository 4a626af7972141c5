#include "listmatch/market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace listmatch {

namespace {

void check_domain(int n, int d, int k) {
    if (n < 1 || d < 1 || d > n) throw std::domain_error("match probability: require 1 <= d <= n");
    if (k < 0 || k > n) throw std::domain_error("match probability: require 0 <= k <= n");
}

std::vector<double> normalized(std::vector<double> w) {
    double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (sum <= 0.0) throw std::invalid_argument("distribution weights must have positive mass");
    for (double& v : w) v /= sum;
    return w;
}

}  // namespace

DistributionSpec DistributionSpec::make(DistKind kind, int n) {
    if (n < 1) throw std::invalid_argument("distribution: n must be positive");
    DistributionSpec spec;
    spec.kind = kind;
    std::vector<double> w(static_cast<std::size_t>(n));
    switch (kind) {
        case DistKind::uniform:
            std::fill(w.begin(), w.end(), 1.0 / n);
            break;
        case DistKind::pareto_low:
            for (int j = 1; j <= n; ++j) w[j - 1] = 1.0 / (2.0 + static_cast<double>(j) / n);
            w = normalized(std::move(w));
            break;
        case DistKind::pareto_high:
            for (int j = 1; j <= n; ++j) w[j - 1] = std::pow(1.0 + static_cast<double>(j) / n, -10.0);
            w = normalized(std::move(w));
            break;
        case DistKind::two_class: {
            // High-demand class is the first fifth of schools (200 at n = 1000).
            const int cutoff = (n + 4) / 5;
            for (int j = 1; j <= n; ++j) w[j - 1] = (j <= cutoff) ? 4.0 : 1.0;
            w = normalized(std::move(w));
            break;
        }
        case DistKind::degenerate: {
            // First half takes almost all mass; the rest keeps 1/100 of the
            // uniform per-school weight so every weight stays positive.
            const int cutoff = (n + 1) / 2;
            const double light = 0.01 / n;
            const double heavy = 2.0 / n - light;
            for (int j = 1; j <= n; ++j) w[j - 1] = (j <= cutoff) ? heavy : light;
            w = normalized(std::move(w));
            break;
        }
        case DistKind::custom:
            throw std::invalid_argument("custom distribution requires explicit weights");
    }
    spec.weights = std::move(w);
    return spec;
}

DistributionSpec DistributionSpec::custom(std::vector<double> weights) {
    DistributionSpec spec;
    spec.kind = DistKind::custom;
    for (double v : weights)
        if (!(v >= 0.0)) throw std::invalid_argument("custom weights must be nonnegative");
    spec.weights = normalized(std::move(weights));
    return spec;
}

DistributionSpec DistributionSpec::parse(const std::string& name, int n) {
    if (name == "uniform") return make(DistKind::uniform, n);
    if (name == "pareto-low") return make(DistKind::pareto_low, n);
    if (name == "pareto-high") return make(DistKind::pareto_high, n);
    if (name == "two-class") return make(DistKind::two_class, n);
    if (name == "degenerate") return make(DistKind::degenerate, n);
    throw std::invalid_argument("unknown distribution: " + name);
}

std::string DistributionSpec::name() const {
    switch (kind) {
        case DistKind::uniform: return "uniform";
        case DistKind::pareto_low: return "pareto-low";
        case DistKind::pareto_high: return "pareto-high";
        case DistKind::two_class: return "two-class";
        case DistKind::degenerate: return "degenerate";
        case DistKind::custom: return "custom";
    }
    return "unknown";
}

void MarketConfig::validate() const {
    if (n < 1) throw std::invalid_argument("config: n must be positive");
    if (d < 1 || d > n) throw std::invalid_argument("config: require 1 <= d <= n");
    if (q < 1) throw std::invalid_argument("config: q must be positive");
    if (m < 1) throw std::invalid_argument("config: m must be positive");
    if (dist.weights.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("config: distribution weights must have length n");
    double sum = 0.0;
    for (double w : dist.weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("config: weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("config: weights must sum to 1");
}

double match_prob_exact(int n, int d, int k) {
    check_domain(n, d, k);
    if (k < d) return 1.0;
    // C(k,d)/C(n,d) as a product of falling-factorial ratios.
    double ratio = 1.0;
    for (int j = 0; j < d; ++j) ratio *= static_cast<double>(k - j) / static_cast<double>(n - j);
    return 1.0 - ratio;
}

double match_prob_approx(int n, int d, int k) {
    check_domain(n, d, k);
    return 1.0 - std::pow(static_cast<double>(k) / n, d);
}

double rank_prob_given_taken(int n, int d, int k, int r) {
    check_domain(n, d, k);
    if (r < 1 || r > d) throw std::domain_error("rank probability: require 1 <= r <= d");
    // First r-1 draws land in the taken set, draw r lands outside it.
    double p = 1.0;
    for (int j = 0; j <= r - 2; ++j) {
        if (k - j <= 0) return 0.0;
        p *= static_cast<double>(k - j) / static_cast<double>(n - j);
    }
    return p * static_cast<double>(n - k) / static_cast<double>(n - (r - 1));
}

MarketSimulator::MarketSimulator(const MarketConfig& config) : config_(config) {
    config_.validate();
    const int n = config_.n;
    pool_.resize(static_cast<std::size_t>(n));
    std::iota(pool_.begin(), pool_.end(), 0);
    seats_taken_.assign(static_cast<std::size_t>(n), 0);
    drawn_.reserve(static_cast<std::size_t>(config_.d));

    max_list_len_ = config_.d;
    if (!config_.dist.is_uniform()) {
        // A list can only contain schools with positive weight.
        int positive = 0;
        for (double w : config_.dist.weights) positive += w > 0.0;
        max_list_len_ = std::min(max_list_len_, positive);
        // Walker/Vose alias table over the school weights.
        alias_accept_.assign(static_cast<std::size_t>(n), 1.0);
        alias_index_.assign(static_cast<std::size_t>(n), 0);
        std::vector<double> scaled(config_.dist.weights);
        for (double& v : scaled) v *= n;
        std::vector<int> small, large;
        small.reserve(n);
        large.reserve(n);
        for (int j = 0; j < n; ++j) (scaled[j] < 1.0 ? small : large).push_back(j);
        while (!small.empty() && !large.empty()) {
            const int s = small.back();
            const int l = large.back();
            small.pop_back();
            alias_accept_[s] = scaled[s];
            alias_index_[s] = l;
            scaled[l] -= 1.0 - scaled[s];
            if (scaled[l] < 1.0) {
                large.pop_back();
                small.push_back(l);
            }
        }
        for (int j : large) alias_accept_[j] = 1.0;
        for (int j : small) alias_accept_[j] = 1.0;
    }
}

int MarketSimulator::draw_school(Rng& stream, int draws_so_far) {
    const int n = config_.n;
    if (config_.dist.is_uniform()) {
        // Partial Fisher-Yates; the pool stays a permutation across students,
        // which keeps every draw uniform over the remaining schools.
        const int j = draws_so_far + static_cast<int>(stream.uniform_below(
                          static_cast<std::uint32_t>(n - draws_so_far)));
        std::swap(pool_[draws_so_far], pool_[j]);
        return pool_[draws_so_far];
    }
    // Weighted draw with rejection of schools already in this student's list,
    // equivalent to renormalizing the remaining weights each draw.
    for (;;) {
        const std::uint32_t j = stream.uniform_below(static_cast<std::uint32_t>(n));
        const int school = (stream.uniform01() < alias_accept_[j]) ? static_cast<int>(j) : alias_index_[j];
        bool repeat = false;
        for (int prev : drawn_)
            if (prev == school) { repeat = true; break; }
        if (!repeat) return school;
    }
}

const SimOutcome& MarketSimulator::simulate(Rng& stream) {
    const int n = config_.n;
    const int q = config_.q;
    const int m = config_.m;

    outcome_.ranks.assign(static_cast<std::size_t>(m), kUnmatched);
    outcome_.matched.assign(static_cast<std::size_t>(m), 0);
    outcome_.taken_trajectory.assign(static_cast<std::size_t>(m) + 1, 0);
    outcome_.full_at.assign(static_cast<std::size_t>(n), 0);
    std::fill(seats_taken_.begin(), seats_taken_.end(), 0);
    // Reset the pool so each realization is a pure function of its stream;
    // school identities would otherwise depend on replication order.
    std::iota(pool_.begin(), pool_.end(), 0);

    std::int32_t full_schools = 0;
    for (int i = 0; i < m; ++i) {
        drawn_.clear();
        for (int r = 1; r <= max_list_len_; ++r) {
            const int school = draw_school(stream, r - 1);
            drawn_.push_back(school);
            if (seats_taken_[school] < q) {
                outcome_.ranks[i] = r;
                outcome_.matched[i] = 1;
                if (++seats_taken_[school] == q) {
                    ++full_schools;
                    outcome_.full_at[school] = i + 1;
                }
                break;
            }
        }
        outcome_.taken_trajectory[i + 1] = full_schools;
    }

    outcome_.seat_histogram_final.assign(static_cast<std::size_t>(q) + 1, 0);
    for (int j = 0; j < n; ++j) ++outcome_.seat_histogram_final[seats_taken_[j]];
    return outcome_;
}

SimOutcome run_market(const MarketConfig& config, Rng& stream) {
    MarketSimulator sim(config);
    return sim.simulate(stream);
}

}  // namespace listmatch
