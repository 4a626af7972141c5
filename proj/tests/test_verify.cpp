#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "listmatch/verify.hpp"

using namespace listmatch;

namespace {

VerifyOptions quick_options() {
    VerifyOptions opts;
    opts.n = 200;
    opts.reps = 2000;
    opts.seed = 42;
    opts.threads = 2;
    opts.q_max = 3;
    opts.d_max = 5;
    return opts;
}

}  // namespace

TEST_CASE("the suite registry covers every verified claim") {
    const auto& names = suite_names();
    REQUIRE(names.size() == 12);
    for (const auto& name : names) {
        const VerifyOptions opts = quick_options();
        if (name == "main-discrete" || name == "school-love" || name == "xts") continue;  // exercised below
        const VerificationReport report = run_suite(name, opts);
        CHECK(report.claim_id == name);
        CHECK(!report.scope.empty());
        CHECK(report.status != CheckStatus::fail);
    }
    CHECK_THROWS_AS(run_suite("nosuch", quick_options()), std::invalid_argument);
}

TEST_CASE("monotonicity suites run on the exact path") {
    VerifyOptions opts = quick_options();
    const VerificationReport main_report = verify_main_discrete(opts);
    CHECK(main_report.claim_id == "main-discrete");
    CHECK(main_report.status != CheckStatus::fail);  // small n may downgrade to finding

    const VerificationReport school = verify_school_love(opts);
    CHECK(school.status != CheckStatus::fail);
}

TEST_CASE("monotonicity suite runs on the Monte Carlo path") {
    VerifyOptions opts = quick_options();
    opts.dist = "pareto-high";
    const VerificationReport report = verify_main_discrete(opts);
    CHECK(report.scope.find("pareto-high") != std::string::npos);
    CHECK(report.status != CheckStatus::fail);

    opts.dist = "degenerate";
    const VerificationReport degenerate = verify_main_discrete(opts);
    CHECK(degenerate.status != CheckStatus::fail);
}

TEST_CASE("convergence suite orders the market sizes") {
    VerifyOptions opts = quick_options();
    opts.reps = 50;
    const VerificationReport report = verify_xts_convergence(opts);
    CHECK(report.claim_id == "xts");
    CHECK(report.status == CheckStatus::pass);
    CHECK(report.notes.size() == 3);
}

TEST_CASE("reports serialize deterministically") {
    const VerifyOptions opts = quick_options();
    const std::string a = verify_integral_sign(opts).to_text();
    const std::string b = verify_integral_sign(opts).to_text();
    CHECK(a == b);
    CHECK(a.find("claim: ig") == 0);
    CHECK(a.find("status: pass") != std::string::npos);

    const std::string xs = verify_crossing_discrete(opts).to_text();
    CHECK(xs == verify_crossing_discrete(opts).to_text());
}

TEST_CASE("artifact CSVs are written when an output directory is set") {
    VerifyOptions opts = quick_options();
    opts.reps = 50;
    opts.out_dir = (std::filesystem::temp_directory_path() / "listmatch_verify_test").string();
    std::filesystem::create_directories(opts.out_dir);
    const VerificationReport report = verify_xts_convergence(opts);
    REQUIRE(report.artifacts.size() == 1);
    std::ifstream in(report.artifacts.front());
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,median_sup_dev,mean_sup_dev,mean_abs_dev_t1");
    std::filesystem::remove_all(opts.out_dir);
}

TEST_CASE("figure protocol reproduces qualitatively at reduced scale") {
    VerifyOptions opts = quick_options();
    opts.n = 100;
    opts.reps = 800;
    opts.out_dir = (std::filesystem::temp_directory_path() / "listmatch_figures_test").string();
    std::filesystem::create_directories(opts.out_dir);
    const VerificationReport report = verify_figures(opts);
    CHECK(report.status != CheckStatus::fail);
    CHECK(report.artifacts.size() == 5);
    for (const auto& artifact : report.artifacts)
        CHECK(std::filesystem::exists(artifact));
    std::filesystem::remove_all(opts.out_dir);
}
