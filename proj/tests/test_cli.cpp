#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "listmatch/cli.hpp"

using namespace listmatch;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / fs::path("listmatch_cli_" +
                                                          std::to_string(std::rand()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

TEST_CASE("index range syntax") {
    CHECK(parse_index_ranges("5", "--i") == std::vector<int>{5});
    CHECK(parse_index_ranges("1..9:2", "--i") == std::vector<int>{1, 3, 5, 7, 9});
    CHECK(parse_index_ranges("1,4..6", "--i") == std::vector<int>{1, 4, 5, 6});
    CHECK(parse_index_ranges("2..2", "--i") == std::vector<int>{2});
    CHECK_THROWS_WITH_AS(parse_index_ranges("3..1", "--i"),
                         doctest::Contains("--i"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index_ranges("1..x", "--i"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index_ranges("1..5:0", "--i"), std::invalid_argument);
    CHECK(parse_int_list("1,2,20", "--d") == std::vector<int>{1, 2, 20});
    CHECK_THROWS_AS(parse_int_list("1,,2", "--d"), std::invalid_argument);
}

TEST_CASE("simulate writes the documented CSV schema and a manifest") {
    TempDir tmp;
    const std::string out = tmp.file("run.csv");
    const int code = run_cli({"simulate", "--n", "2", "--d", "1", "--i", "2", "--reps",
                              "100000", "--seed", "42", "--out", out});
    REQUIRE(code == 0);

    const auto rows = read_csv(out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"i", "d", "q", "dist", "reps", "p_match",
                                              "stderr", "rank_cdf_k", "taken_mean"});
    CHECK(rows[1][0] == "2");
    CHECK(rows[1][1] == "1");
    CHECK(rows[1][3] == "uniform");
    const double p = std::stod(rows[1][5]);
    const double se = std::stod(rows[1][6]);
    CHECK(std::abs(p - 0.5) <= 3.0 * se);

    const std::string manifest = read_file(out + ".manifest.json");
    CHECK(manifest.find("\"subcommand\": \"simulate\"") != std::string::npos);
    CHECK(manifest.find("\"seed\": 42") != std::string::npos);
}

TEST_CASE("simulate output is byte-stable across thread counts and reruns") {
    TempDir tmp;
    const std::string a = tmp.file("a.csv");
    const std::string b = tmp.file("b.csv");
    REQUIRE(run_cli({"simulate", "--n", "50", "--d", "1,3", "--i", "1..50:7", "--reps",
                     "3000", "--threads", "1", "--out", a}) == 0);
    REQUIRE(run_cli({"simulate", "--n", "50", "--d", "1,3", "--i", "1..50:7", "--reps",
                     "3000", "--threads", "4", "--out", b}) == 0);
    CHECK(read_file(a) == read_file(b));

    REQUIRE(run_cli({"rerun", "--manifest", a + ".manifest.json"}) == 0);
    CHECK(read_file(a) == read_file(b));
}

TEST_CASE("flag errors exit with code 2 and name the flag") {
    TempDir tmp;
    CHECK(run_cli({"simulate", "--d", "0", "--out", tmp.file("x.csv")}) == 2);
    CHECK(run_cli({"simulate", "--i", "oops", "--out", tmp.file("x.csv")}) == 2);
    CHECK(run_cli({"simulate", "--no-such-flag", "1"}) == 2);
    CHECK(run_cli({"verify", "--suite", "nosuch"}) == 2);
    CHECK(run_cli({"figures", "--fig", "nosuch", "--out-dir", tmp.file("f")}) == 2);
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"--help"}) == 0);
}

TEST_CASE("ode subcommand emits closed-form trajectories") {
    TempDir tmp;
    const std::string out = tmp.file("ode.csv");
    REQUIRE(run_cli({"ode", "--d", "2", "--t-max", "1", "--out", out}) == 0);
    const auto rows = read_csv(out);
    CHECK(rows[0] == std::vector<std::string>{"t", "x", "x_prime"});
    const auto& last = rows.back();
    CHECK(std::stod(last[0]) == doctest::Approx(1.0));
    CHECK(std::stod(last[1]) == doctest::Approx(std::tanh(1.0)).epsilon(1e-8));

    // Erlang family columns appear for q > 1.
    const std::string multi = tmp.file("ode_q4.csv");
    REQUIRE(run_cli({"ode", "--d", "1", "--q", "4", "--t-max", "2", "--out", multi}) == 0);
    const auto mrows = read_csv(multi);
    CHECK(mrows[0] == std::vector<std::string>{"t", "x", "x_prime", "y0", "y1", "y2", "y3"});
    const double t = std::stod(mrows.back()[0]);
    double expect = 0.0;
    double term = std::exp(-t);
    for (int k = 0; k < 4; ++k) {
        expect += term;
        term *= t / (k + 1);
    }
    CHECK(std::stod(mrows.back()[1]) == doctest::Approx(1.0 - expect).epsilon(1e-6));

    // The time-change route coincides with direct integration when q = 1.
    const std::string tau = tmp.file("ode_tau.csv");
    REQUIRE(run_cli({"ode", "--d", "2", "--q", "1", "--t-max", "1", "--method", "tau",
                     "--out", tau}) == 0);
    const auto trows = read_csv(tau);
    CHECK(std::stod(trows.back()[1]) == doctest::Approx(std::tanh(1.0)).epsilon(1e-6));

    CHECK(run_cli({"ode", "--method", "bogus", "--out", tmp.file("x.csv")}) == 2);
    CHECK(run_cli({"ode", "--step", "0.01", "--out", tmp.file("x.csv")}) == 2);
}

TEST_CASE("verify subcommand writes reports and respects exit codes") {
    TempDir tmp;
    const std::string dir = tmp.file("verify");
    REQUIRE(run_cli({"verify", "--suite", "ig", "--out-dir", dir}) == 0);
    const std::string report = read_file(dir + "/ig.report.txt");
    CHECK(report.find("claim: ig") == 0);
    CHECK(report.find("status: pass") != std::string::npos);

    REQUIRE(run_cli({"verify", "--suite", "xd-bounds", "--out-dir", dir}) == 0);
    CHECK(read_file(dir + "/xd-bounds.report.txt").find("status: pass") != std::string::npos);
}

TEST_CASE("verify reports are byte-stable across thread counts") {
    TempDir tmp;
    const std::string d1 = tmp.file("v1");
    const std::string d2 = tmp.file("v2");
    REQUIRE(run_cli({"verify", "--suite", "serial", "--n", "60", "--reps", "2000",
                     "--threads", "1", "--out-dir", d1}) == 0);
    REQUIRE(run_cli({"verify", "--suite", "serial", "--n", "60", "--reps", "2000",
                     "--threads", "4", "--out-dir", d2}) == 0);
    CHECK(read_file(d1 + "/serial.report.txt") == read_file(d2 + "/serial.report.txt"));
}

TEST_CASE("figure command produces SVG plus backing CSV") {
    TempDir tmp;
    const std::string dir = tmp.file("figs");
    REQUIRE(run_cli({"figures", "--fig", "d1-vs-d2", "--out-dir", dir}) == 0);
    CHECK(fs::exists(dir + "/fig_d1_vs_d2.csv"));
    const std::string svg = read_file(dir + "/fig_d1_vs_d2.svg");
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("t=1.219") != std::string::npos);

    REQUIRE(run_cli({"figures", "--fig", "overlay", "--n", "100", "--d", "2", "--reps",
                     "20", "--out-dir", dir}) == 0);
    CHECK(fs::exists(dir + "/fig_overlay.svg"));
    const auto rows = read_csv(dir + "/fig_overlay.csv");
    CHECK(rows[0].size() == 22);  // t, continuum, 20 replications
}

TEST_CASE("environment variable supplies the default seed") {
    TempDir tmp;
    const std::string out = tmp.file("env.csv");
    setenv("LISTMATCH_SEED", "777", 1);
    REQUIRE(run_cli({"simulate", "--n", "10", "--d", "1", "--i", "5", "--reps", "100",
                     "--out", out}) == 0);
    unsetenv("LISTMATCH_SEED");
    CHECK(read_file(out + ".manifest.json").find("\"seed\": 777") != std::string::npos);

    setenv("LISTMATCH_SEED", "notanumber", 1);
    const int code = run_cli({"simulate", "--n", "10", "--d", "1", "--i", "5", "--reps",
                              "100", "--out", tmp.file("bad.csv")});
    unsetenv("LISTMATCH_SEED");
    CHECK(code == 2);
}
