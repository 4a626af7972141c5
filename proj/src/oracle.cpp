#include "listmatch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "listmatch/market.hpp"

namespace listmatch {

namespace {

constexpr double kRowSumSlack = 1e-9;

void check_dp_args(int n, int d, int horizon) {
    if (n < 1 || d < 1 || d > n) throw std::domain_error("oracle: require 1 <= d <= n");
    if (horizon < 1) throw std::domain_error("oracle: horizon must be positive");
    const double cells = static_cast<double>(horizon) * (static_cast<double>(n) + 1.0);
    if (cells > 1e8) throw std::length_error("oracle: DP would exceed 1e8 cells");
}

// p[k] = match_prob_exact(n, d, k) for k = 0..n, computed once per (n, d).
std::vector<double> transition_probs(int n, int d) {
    std::vector<double> p(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) p[k] = match_prob_exact(n, d, k);
    return p;
}

// Advances the pmf of T_i to T_{i+1} in place. support_hi is the largest k
// with mass; returns the new support bound.
int advance_row(std::vector<double>& row, const std::vector<double>& p, int n, int support_hi) {
    const int hi = std::min(support_hi, n - 1);
    for (int k = hi; k >= 0; --k) {
        const double move = row[k] * p[k];
        row[k] -= move;
        row[k + 1] += move;
    }
    return std::min(support_hi + 1, n);
}

void renormalize_if_drifted(std::vector<double>& row, int student) {
    double sum = std::accumulate(row.begin(), row.end(), 0.0);
    if (std::abs(sum - 1.0) > kRowSumSlack) {
        std::fprintf(stderr, "oracle: renormalizing DP row %d (sum drifted to %.17g)\n", student, sum);
        for (double& v : row) v /= sum;
    }
}

}  // namespace

double TakenDistribution::mean_taken(int i) const {
    const auto& r = row(i);
    double mean = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) mean += static_cast<double>(k) * r[k];
    return mean;
}

TakenDistribution taken_distribution(int n, int d, int horizon) {
    check_dp_args(n, d, horizon);
    const auto p = transition_probs(n, d);

    TakenDistribution out;
    out.n = n;
    out.d = d;
    out.pmf_by_student.reserve(static_cast<std::size_t>(horizon));

    std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
    row[0] = 1.0;
    out.pmf_by_student.push_back(row);
    int support_hi = 0;
    for (int i = 2; i <= horizon; ++i) {
        support_hi = advance_row(row, p, n, support_hi);
        renormalize_if_drifted(row, i);
        out.pmf_by_student.push_back(row);
    }
    return out;
}

std::vector<double> exact_match_prob_profile(int n, int d, int horizon) {
    check_dp_args(n, d, horizon);
    const auto p = transition_probs(n, d);
    std::vector<double> out(static_cast<std::size_t>(horizon));
    std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
    row[0] = 1.0;
    int support_hi = 0;
    for (int i = 1; i <= horizon; ++i) {
        double prob = 0.0;
        for (int k = 0; k <= support_hi; ++k) prob += row[k] * p[k];
        out[i - 1] = prob;
        if (i < horizon) {
            support_hi = advance_row(row, p, n, support_hi);
            renormalize_if_drifted(row, i + 1);
        }
    }
    return out;
}

std::vector<double> exact_mean_taken_profile(int n, int d, int horizon) {
    check_dp_args(n, d, horizon);
    const auto p = transition_probs(n, d);
    std::vector<double> out(static_cast<std::size_t>(horizon));
    std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
    row[0] = 1.0;
    int support_hi = 0;
    for (int i = 1; i <= horizon; ++i) {
        double mean = 0.0;
        for (int k = 1; k <= support_hi; ++k) mean += static_cast<double>(k) * row[k];
        out[i - 1] = mean;
        if (i < horizon) {
            support_hi = advance_row(row, p, n, support_hi);
            renormalize_if_drifted(row, i + 1);
        }
    }
    return out;
}

std::vector<double> exact_rank_cdf_profile(int n, int d, int horizon, int k) {
    check_dp_args(n, d, horizon);
    if (k < 1 || k > d) throw std::domain_error("oracle: require 1 <= k <= d");
    // cdf_by_taken[t] = P(K <= k | T = t).
    std::vector<double> cdf_by_taken(static_cast<std::size_t>(n) + 1, 0.0);
    for (int t = 0; t <= n; ++t) {
        double c = 0.0;
        for (int r = 1; r <= k; ++r) c += rank_prob_given_taken(n, d, t, r);
        cdf_by_taken[t] = c;
    }
    const auto p = transition_probs(n, d);
    std::vector<double> out(static_cast<std::size_t>(horizon));
    std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
    row[0] = 1.0;
    int support_hi = 0;
    for (int i = 1; i <= horizon; ++i) {
        double prob = 0.0;
        for (int t = 0; t <= support_hi; ++t) prob += row[t] * cdf_by_taken[t];
        out[i - 1] = prob;
        if (i < horizon) {
            support_hi = advance_row(row, p, n, support_hi);
            renormalize_if_drifted(row, i + 1);
        }
    }
    return out;
}

double exact_match_prob(int n, int d, int i) {
    return exact_match_prob_profile(n, d, i).back();
}

double exact_rank_cdf(int n, int d, int i, int k) {
    return exact_rank_cdf_profile(n, d, i, k).back();
}

double MarketLaw::match_prob(int i) const {
    double p = 0.0;
    for (const auto& [ranks, prob] : outcomes)
        if (ranks[i - 1] != 0) p += prob;
    return p;
}

double MarketLaw::rank_cdf(int i, int k) const {
    double p = 0.0;
    for (const auto& [ranks, prob] : outcomes)
        if (ranks[i - 1] != 0 && ranks[i - 1] <= k) p += prob;
    return p;
}

double MarketLaw::mean_taken(int i) const {
    double mean = 0.0;
    for (const auto& [ranks, prob] : outcomes) {
        int taken = 0;
        for (int j = 0; j < i - 1; ++j) taken += ranks[j] != 0;
        mean += prob * taken;
    }
    return mean;
}

double MarketLaw::matched_fraction() const {
    double mean = 0.0;
    for (const auto& [ranks, prob] : outcomes) {
        int c = 0;
        for (auto r : ranks) c += r != 0;
        mean += prob * c;
    }
    return mean / m;
}

double MarketLaw::total_mass() const {
    double mass = 0.0;
    for (const auto& [ranks, prob] : outcomes) mass += prob;
    return mass;
}

namespace {

struct Enumerator {
    int n, d, m;
    const std::vector<double>* weights;  // null = uniform
    MarketLaw law;
    std::vector<std::int8_t> ranks;
    std::vector<std::uint8_t> taken;
    std::vector<std::uint8_t> in_list;  // schools in the current student's list

    void student(int i, double prob) {
        if (i == m) {
            law.outcomes[ranks] += prob;
            return;
        }
        std::vector<int> scanned;
        scanned.reserve(static_cast<std::size_t>(d));
        draw(i, 1, prob, 1.0, scanned);
    }

    // Enumerates the lazy scan of student i: draw r lands on each school not
    // yet in the list; the scan stops at the first free school or after d
    // draws. `scanned` holds the taken schools this student has drawn so far;
    // their in_list marks are lifted while deeper students recurse.
    void draw(int i, int r, double prob, double remaining_mass, std::vector<int>& scanned) {
        for (int s = 0; s < n; ++s) {
            if (in_list[s]) continue;
            const double ps = weights ? (*weights)[s] / remaining_mass
                                      : 1.0 / (n - (r - 1));
            if (ps <= 0.0) continue;
            const double branch = prob * ps;
            if (!taken[s]) {
                ranks[i] = static_cast<std::int8_t>(r);
                taken[s] = 1;
                for (int t : scanned) in_list[t] = 0;
                student(i + 1, branch);
                for (int t : scanned) in_list[t] = 1;
                taken[s] = 0;
            } else if (r < d) {
                in_list[s] = 1;
                scanned.push_back(s);
                draw(i, r + 1, branch, remaining_mass - (weights ? (*weights)[s] : 0.0), scanned);
                scanned.pop_back();
                in_list[s] = 0;
            } else {
                ranks[i] = 0;
                for (int t : scanned) in_list[t] = 0;
                student(i + 1, branch);
                for (int t : scanned) in_list[t] = 1;
            }
        }
    }
};

MarketLaw enumerate_impl(int n, int d, int m, const std::vector<double>* weights) {
    if (n < 1 || d < 1 || d > n || m < 1)
        throw std::domain_error("enumerate_market: require 1 <= d <= n and m >= 1");
    double tuples = 1.0;
    for (int j = 0; j < d; ++j) tuples *= n - j;
    if (std::pow(tuples, m) > 1e7)
        throw std::length_error("enumerate_market: list-tuple count exceeds guard");
    if (weights && weights->size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("enumerate_market: weights must have length n");

    Enumerator e;
    e.n = n;
    e.d = d;
    e.m = m;
    e.weights = weights;
    e.law.n = n;
    e.law.d = d;
    e.law.m = m;
    e.ranks.assign(static_cast<std::size_t>(m), 0);
    e.taken.assign(static_cast<std::size_t>(n), 0);
    e.in_list.assign(static_cast<std::size_t>(n), 0);
    e.student(0, 1.0);
    return std::move(e.law);
}

}  // namespace

MarketLaw enumerate_market(int n, int d, int m) {
    return enumerate_impl(n, d, m, nullptr);
}

MarketLaw enumerate_market(int n, int d, int m, const std::vector<double>& weights) {
    return enumerate_impl(n, d, m, &weights);
}

std::map<std::string, double> load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("fixture file not found: " + path);
    std::map<std::string, double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string key;
        double value = 0.0;
        if (ss >> key >> value) out[key] = value;
    }
    return out;
}

}  // namespace listmatch
