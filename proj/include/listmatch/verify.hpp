// One runnable suite per claim: assembles oracle, Monte Carlo, and continuum
// results into pass/fail reports with the measured margins.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "listmatch/report.hpp"

namespace listmatch {

struct VerifyOptions {
    int n = 1000;
    std::int64_t reps = 10000;
    std::uint64_t seed = 42;
    int threads = 1;
    int q_max = 20;
    int d_max = 15;
    std::string dist = "uniform";  // Monte Carlo path of the monotonicity suite
    std::string out_dir;           // empty = no CSV artifacts
};

// Claim identifiers, one per verified theorem/lemma/conjecture.
const std::vector<std::string>& suite_names();

VerificationReport run_suite(const std::string& claim_id, const VerifyOptions& opts);

VerificationReport verify_main_discrete(const VerifyOptions& opts);
VerificationReport verify_school_love(const VerifyOptions& opts);
VerificationReport verify_crossing_discrete(const VerifyOptions& opts);
VerificationReport verify_bound_discrete(const VerifyOptions& opts);
VerificationReport verify_worst_case_rank(const VerifyOptions& opts);
VerificationReport verify_bound_cts(const VerifyOptions& opts);
VerificationReport verify_xts_convergence(const VerifyOptions& opts);
VerificationReport verify_prob_to_xprime(const VerifyOptions& opts);
VerificationReport verify_serial(const VerifyOptions& opts);
VerificationReport verify_conjecture(const VerifyOptions& opts);
VerificationReport verify_xd_bounds(const VerifyOptions& opts);
VerificationReport verify_integral_sign(const VerifyOptions& opts);

// Regenerates the five-distribution figure data (weights, taken fraction,
// match probability per student) and checks its qualitative properties.
// CSV artifacts land in opts.out_dir when set.
VerificationReport verify_figures(const VerifyOptions& opts);

}  // namespace listmatch
