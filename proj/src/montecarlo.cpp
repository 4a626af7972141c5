#include "listmatch/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "listmatch/ode.hpp"
#include "listmatch/rng.hpp"

namespace listmatch {

namespace {

// Replication driver. threads <= 1 is the serial reference loop; the OpenMP
// kernel shards replications and merges per-thread accumulators in thread
// order. Accumulators may only hold integer tallies or write to per-rep
// slots, so the merged result does not depend on the thread count.
template <class Acc>
void run_replications(const MarketConfig& config, std::int64_t reps, int threads, Acc& acc) {
    config.validate();
    if (reps < 1) throw std::invalid_argument("montecarlo: reps must be positive");
#ifdef _OPENMP
    if (threads > 1) {
        std::vector<Acc> parts(static_cast<std::size_t>(threads), acc);
#pragma omp parallel num_threads(threads)
        {
            Acc& local = parts[static_cast<std::size_t>(omp_get_thread_num())];
            MarketSimulator sim(config);
            Rng rng(0);
#pragma omp for schedule(static)
            for (std::int64_t rep = 0; rep < reps; ++rep) {
                rng.reseed(derive_seed(config.seed, static_cast<std::uint64_t>(rep)));
                local.accumulate(sim.simulate(rng), rep);
            }
        }
        for (const Acc& part : parts) acc.merge(part);
        return;
    }
#else
    (void)threads;
#endif
    MarketSimulator sim(config);
    Rng rng(0);
    for (std::int64_t rep = 0; rep < reps; ++rep) {
        rng.reseed(derive_seed(config.seed, static_cast<std::uint64_t>(rep)));
        acc.accumulate(sim.simulate(rng), rep);
    }
}

Estimate bernoulli_estimate(std::int64_t count, std::int64_t reps) {
    const double p = static_cast<double>(count) / static_cast<double>(reps);
    const double se = reps > 1 ? std::sqrt(p * (1.0 - p) / static_cast<double>(reps - 1)) : 0.0;
    return {p, se, reps};
}

// Mean and standard error of per-replication integer observations scaled
// by `scale` (e.g. taken counts divided by n).
Estimate scaled_mean_estimate(std::int64_t sum, std::int64_t sq_sum, std::int64_t reps,
                              double scale) {
    const double mean_raw = static_cast<double>(sum) / static_cast<double>(reps);
    double var_raw = 0.0;
    if (reps > 1) {
        var_raw = (static_cast<double>(sq_sum) - static_cast<double>(sum) * mean_raw) /
                  static_cast<double>(reps - 1);
        var_raw = std::max(var_raw, 0.0);
    }
    return {mean_raw * scale, std::sqrt(var_raw / static_cast<double>(reps)) * scale, reps};
}

void check_student_index(const MarketConfig& config, int i) {
    if (i < 1 || i > config.m)
        throw std::invalid_argument("montecarlo: student index must lie in [1, m]");
}

struct StudentStatsAcc {
    const std::vector<int>* indices = nullptr;  // 1-based student positions
    int k = 1;
    std::vector<std::int64_t> match_count;
    std::vector<std::int64_t> rank_count;
    std::vector<std::int64_t> taken_sum;
    std::vector<std::int64_t> taken_sq_sum;

    void accumulate(const SimOutcome& out, std::int64_t) {
        for (std::size_t s = 0; s < indices->size(); ++s) {
            const int i = (*indices)[s];
            const std::int32_t rank = out.ranks[static_cast<std::size_t>(i) - 1];
            match_count[s] += rank != kUnmatched;
            rank_count[s] += rank != kUnmatched && rank <= k;
            const std::int64_t taken = out.taken_trajectory[static_cast<std::size_t>(i) - 1];
            taken_sum[s] += taken;
            taken_sq_sum[s] += taken * taken;
        }
    }

    void merge(const StudentStatsAcc& other) {
        for (std::size_t s = 0; s < match_count.size(); ++s) {
            match_count[s] += other.match_count[s];
            rank_count[s] += other.rank_count[s];
            taken_sum[s] += other.taken_sum[s];
            taken_sq_sum[s] += other.taken_sq_sum[s];
        }
    }
};

struct TrajectoryAcc {
    const std::vector<int>* student_counts = nullptr;  // floor(t*n) per grid point
    const std::vector<double>* x_ref = nullptr;
    double inv_n = 0.0;
    double* sup_slots = nullptr;  // per-rep slots, disjoint writes
    std::vector<std::int64_t> taken_sum;
    std::vector<std::int64_t> taken_sq_sum;

    void accumulate(const SimOutcome& out, std::int64_t rep) {
        double sup = 0.0;
        for (std::size_t g = 0; g < student_counts->size(); ++g) {
            const std::int64_t taken =
                out.taken_trajectory[static_cast<std::size_t>((*student_counts)[g])];
            taken_sum[g] += taken;
            taken_sq_sum[g] += taken * taken;
            sup = std::max(sup, std::abs(static_cast<double>(taken) * inv_n - (*x_ref)[g]));
        }
        sup_slots[rep] = sup;
    }

    void merge(const TrajectoryAcc& other) {
        for (std::size_t g = 0; g < taken_sum.size(); ++g) {
            taken_sum[g] += other.taken_sum[g];
            taken_sq_sum[g] += other.taken_sq_sum[g];
        }
    }
};

struct RsdAcc {
    std::int64_t matched_sum = 0;
    std::int64_t matched_sq_sum = 0;
    std::int64_t school_full_count = 0;

    void accumulate(const SimOutcome& out, std::int64_t) {
        const std::int64_t c = std::count(out.matched.begin(), out.matched.end(), 1);
        matched_sum += c;
        matched_sq_sum += c * c;
        school_full_count += out.full_at[0] != 0;
    }

    void merge(const RsdAcc& other) {
        matched_sum += other.matched_sum;
        matched_sq_sum += other.matched_sq_sum;
        school_full_count += other.school_full_count;
    }
};

struct SchoolMatchAcc {
    int student = 1;
    int n = 1;
    std::int64_t full_before_count = 0;
    // Per-rep difference n*1{school 1 full} - T_i, kept as exact integers so
    // the symmetry cross-check has its own standard error.
    std::int64_t diff_sum = 0;
    std::int64_t diff_sq_sum = 0;

    void accumulate(const SimOutcome& out, std::int64_t) {
        const std::int32_t at = out.full_at[0];
        const bool full_before = at != 0 && at < student;
        full_before_count += full_before;
        const std::int64_t diff =
            static_cast<std::int64_t>(full_before) * n -
            out.taken_trajectory[static_cast<std::size_t>(student) - 1];
        diff_sum += diff;
        diff_sq_sum += diff * diff;
    }

    void merge(const SchoolMatchAcc& other) {
        full_before_count += other.full_before_count;
        diff_sum += other.diff_sum;
        diff_sq_sum += other.diff_sq_sum;
    }
};

}  // namespace

double TrajectoryEstimate::sup_deviation_mean() const {
    double sum = 0.0;
    for (double v : sup_deviation_samples) sum += v;
    return sup_deviation_samples.empty() ? 0.0 : sum / sup_deviation_samples.size();
}

double TrajectoryEstimate::sup_deviation_median() const {
    if (sup_deviation_samples.empty()) return 0.0;
    std::vector<double> sorted(sup_deviation_samples);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    if (sorted.size() % 2 == 1) return sorted[mid];
    return 0.5 * (sorted[mid - 1] + sorted[mid]);
}

std::vector<StudentStats> estimate_student_stats(const MarketConfig& config,
                                                 const std::vector<int>& student_indices,
                                                 int k, std::int64_t reps, int threads) {
    if (student_indices.empty())
        throw std::invalid_argument("montecarlo: need at least one student index");
    for (int i : student_indices) check_student_index(config, i);
    if (k < 1 || k > config.d)
        throw std::invalid_argument("montecarlo: require 1 <= k <= d");

    StudentStatsAcc acc;
    acc.indices = &student_indices;
    acc.k = k;
    acc.match_count.assign(student_indices.size(), 0);
    acc.rank_count.assign(student_indices.size(), 0);
    acc.taken_sum.assign(student_indices.size(), 0);
    acc.taken_sq_sum.assign(student_indices.size(), 0);
    run_replications(config, reps, threads, acc);

    std::vector<StudentStats> out(student_indices.size());
    for (std::size_t s = 0; s < student_indices.size(); ++s) {
        out[s].student = student_indices[s];
        out[s].p_match = bernoulli_estimate(acc.match_count[s], reps);
        out[s].rank_cdf = bernoulli_estimate(acc.rank_count[s], reps);
        out[s].taken_fraction =
            scaled_mean_estimate(acc.taken_sum[s], acc.taken_sq_sum[s], reps, 1.0 / config.n);
    }
    return out;
}

std::vector<Estimate> estimate_match_prob(const MarketConfig& config,
                                          const std::vector<int>& student_indices,
                                          std::int64_t reps, int threads) {
    const auto stats = estimate_student_stats(config, student_indices, 1, reps, threads);
    std::vector<Estimate> out(stats.size());
    for (std::size_t s = 0; s < stats.size(); ++s) out[s] = stats[s].p_match;
    return out;
}

Estimate estimate_match_prob(const MarketConfig& config, int student_index,
                             std::int64_t reps, int threads) {
    return estimate_match_prob(config, std::vector<int>{student_index}, reps, threads)[0];
}

Estimate estimate_rank_cdf(const MarketConfig& config, int student_index, int k,
                           std::int64_t reps, int threads) {
    return estimate_student_stats(config, {student_index}, k, reps, threads)[0].rank_cdf;
}

namespace {

struct GapAcc {
    // diff in {-1, 0, 1}: sum and absolute sum give mean and variance.
    std::vector<std::int64_t> diff_sum;     // [pair][index] flattened
    std::vector<std::int64_t> diff_abs_sum;

    void merge(const GapAcc& other) {
        for (std::size_t j = 0; j < diff_sum.size(); ++j) {
            diff_sum[j] += other.diff_sum[j];
            diff_abs_sum[j] += other.diff_abs_sum[j];
        }
    }
};

// One replication: run every list length on an identically seeded stream and
// difference the match indicators of consecutive lengths.
void gap_replication(std::vector<MarketSimulator>& sims, Rng& rng,
                     std::uint64_t master_seed, std::int64_t rep,
                     const std::vector<int>& indices,
                     std::vector<std::uint8_t>& bits, GapAcc& acc) {
    const std::size_t k = indices.size();
    for (std::size_t v = 0; v < sims.size(); ++v) {
        rng.reseed(derive_seed(master_seed, static_cast<std::uint64_t>(rep)));
        const SimOutcome& out = sims[v].simulate(rng);
        for (std::size_t s = 0; s < k; ++s)
            bits[v * k + s] =
                out.matched[static_cast<std::size_t>(indices[s]) - 1];
    }
    for (std::size_t v = 0; v + 1 < sims.size(); ++v)
        for (std::size_t s = 0; s < k; ++s) {
            const int diff = static_cast<int>(bits[(v + 1) * k + s]) -
                             static_cast<int>(bits[v * k + s]);
            acc.diff_sum[v * k + s] += diff;
            acc.diff_abs_sum[v * k + s] += diff != 0;
        }
}

}  // namespace

std::vector<PairedGap> estimate_match_prob_gaps(const MarketConfig& base,
                                                const std::vector<int>& d_list,
                                                const std::vector<int>& student_indices,
                                                std::int64_t reps, int threads) {
    if (d_list.size() < 2)
        throw std::invalid_argument("montecarlo: need at least two list lengths");
    for (std::size_t v = 1; v < d_list.size(); ++v)
        if (d_list[v] <= d_list[v - 1])
            throw std::invalid_argument("montecarlo: list lengths must increase");
    if (reps < 1) throw std::invalid_argument("montecarlo: reps must be positive");
    std::vector<MarketConfig> configs;
    for (int d : d_list) {
        MarketConfig c = base;
        c.d = d;
        c.validate();
        for (int i : student_indices) check_student_index(c, i);
        configs.push_back(c);
    }

    const std::size_t k = student_indices.size();
    const std::size_t cells = (d_list.size() - 1) * k;
    GapAcc acc;
    acc.diff_sum.assign(cells, 0);
    acc.diff_abs_sum.assign(cells, 0);

    const auto make_sims = [&] {
        std::vector<MarketSimulator> sims;
        sims.reserve(configs.size());
        for (const auto& c : configs) sims.emplace_back(c);
        return sims;
    };

#ifdef _OPENMP
    if (threads > 1) {
        std::vector<GapAcc> parts(static_cast<std::size_t>(threads), acc);
#pragma omp parallel num_threads(threads)
        {
            GapAcc& local = parts[static_cast<std::size_t>(omp_get_thread_num())];
            auto sims = make_sims();
            Rng rng(0);
            std::vector<std::uint8_t> bits(d_list.size() * k);
#pragma omp for schedule(static)
            for (std::int64_t rep = 0; rep < reps; ++rep)
                gap_replication(sims, rng, base.seed, rep, student_indices, bits, local);
        }
        for (const GapAcc& part : parts) acc.merge(part);
    } else
#endif
    {
        auto sims = make_sims();
        Rng rng(0);
        std::vector<std::uint8_t> bits(d_list.size() * k);
        for (std::int64_t rep = 0; rep < reps; ++rep)
            gap_replication(sims, rng, base.seed, rep, student_indices, bits, acc);
    }

    std::vector<PairedGap> out(d_list.size() - 1);
    for (std::size_t v = 0; v + 1 < d_list.size(); ++v) {
        out[v].d_lo = d_list[v];
        out[v].d_hi = d_list[v + 1];
        out[v].gap.resize(k);
        for (std::size_t s = 0; s < k; ++s)
            out[v].gap[s] =
                scaled_mean_estimate(acc.diff_sum[v * k + s],
                                     acc.diff_abs_sum[v * k + s], reps, 1.0);
    }
    return out;
}

TrajectoryEstimate estimate_trajectory(const MarketConfig& config, double t_max,
                                       int grid_points, std::int64_t reps, int threads) {
    if (grid_points < 2) throw std::invalid_argument("montecarlo: need at least 2 grid points");
    if (t_max < 0.0) throw std::invalid_argument("montecarlo: t_max must be nonnegative");
    const double needed = std::ceil(t_max * config.n - 1e-9);
    if (static_cast<double>(config.m) < needed)
        throw std::invalid_argument("montecarlo: config.m must cover ceil(t_max * n) students");

    TrajectoryEstimate result;
    result.t_grid.resize(static_cast<std::size_t>(grid_points));
    std::vector<int> counts(static_cast<std::size_t>(grid_points));
    std::vector<double> x_ref(static_cast<std::size_t>(grid_points), 0.0);
    const double spacing = t_max / (grid_points - 1);
    for (int g = 0; g < grid_points; ++g) {
        const double t = spacing * g;
        result.t_grid[static_cast<std::size_t>(g)] = t;
        counts[static_cast<std::size_t>(g)] =
            std::min(config.m, static_cast<int>(std::floor(t * config.n + 1e-9)));
    }
    if (t_max > 0.0) {
        if (spacing > 1.0 / config.n + 1e-12) {
            result.grid_coarse_warning = true;
            std::fprintf(stderr,
                         "montecarlo: trajectory grid spacing %.3g exceeds 1/n; "
                         "sup deviation is underestimated\n",
                         spacing);
        }
        const OdeSolution sol = solve_ivp(config.d, t_max);
        for (int g = 0; g < grid_points; ++g)
            x_ref[static_cast<std::size_t>(g)] = sol.x_at(result.t_grid[static_cast<std::size_t>(g)]);
    }

    result.sup_deviation_samples.assign(static_cast<std::size_t>(reps), 0.0);
    TrajectoryAcc acc;
    acc.student_counts = &counts;
    acc.x_ref = &x_ref;
    acc.inv_n = 1.0 / config.n;
    acc.sup_slots = result.sup_deviation_samples.data();
    acc.taken_sum.assign(counts.size(), 0);
    acc.taken_sq_sum.assign(counts.size(), 0);
    run_replications(config, reps, threads, acc);

    result.mean_fraction.resize(counts.size());
    result.mean_fraction_std_err.resize(counts.size());
    for (std::size_t g = 0; g < counts.size(); ++g) {
        const Estimate e =
            scaled_mean_estimate(acc.taken_sum[g], acc.taken_sq_sum[g], reps, 1.0 / config.n);
        result.mean_fraction[g] = e.mean;
        result.mean_fraction_std_err[g] = e.std_err;
    }
    return result;
}

RsdEstimate estimate_rsd(const MarketConfig& config, std::int64_t reps, int threads) {
    RsdAcc acc;
    run_replications(config, reps, threads, acc);

    RsdEstimate out;
    out.direct = scaled_mean_estimate(acc.matched_sum, acc.matched_sq_sum, reps, 1.0 / config.m);
    const Estimate full = bernoulli_estimate(acc.school_full_count, reps);
    const double ratio = static_cast<double>(config.n) / static_cast<double>(config.m);
    out.identity = {full.mean * ratio, full.std_err * ratio, reps};

    const double tol =
        3.0 * std::sqrt(out.direct.std_err * out.direct.std_err +
                        out.identity.std_err * out.identity.std_err);
    if (std::abs(out.direct.mean - out.identity.mean) > tol)
        throw std::runtime_error("estimate_rsd: direct and identity estimators disagree");
    return out;
}

Estimate estimate_school_match_prob(const MarketConfig& config, int student_index,
                                    std::int64_t reps, int threads) {
    check_student_index(config, student_index);
    SchoolMatchAcc acc;
    acc.student = student_index;
    acc.n = config.n;
    run_replications(config, reps, threads, acc);

    const Estimate freq = bernoulli_estimate(acc.full_before_count, reps);
    if (config.dist.is_uniform()) {
        // Symmetry: P(school 1 full before i) must match E[T_i]/n.
        const Estimate diff =
            scaled_mean_estimate(acc.diff_sum, acc.diff_sq_sum, reps, 1.0 / config.n);
        if (std::abs(diff.mean) > 3.0 * diff.std_err + 1e-12)
            throw std::runtime_error(
                "estimate_school_match_prob: school frequency and E[T_i]/n disagree");
    }
    return freq;
}

}  // namespace listmatch
