#include "listmatch/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "listmatch/csv.hpp"
#include "listmatch/market.hpp"
#include "listmatch/montecarlo.hpp"
#include "listmatch/ode.hpp"
#include "listmatch/rng.hpp"
#include "listmatch/svg.hpp"
#include "listmatch/textio.hpp"
#include "listmatch/verify.hpp"

namespace listmatch {

namespace {

using nlohmann::json;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LISTMATCH_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw std::invalid_argument("LISTMATCH_SEED is not a valid integer");
        return static_cast<std::uint64_t>(v);
    }
    return 42;
}

class ManifestWriter {
public:
    ManifestWriter(std::string subcommand, std::vector<std::string> argv)
        : start_(std::chrono::steady_clock::now()) {
        manifest_["tool"] = "listmatch";
        manifest_["version"] = kToolVersion;
        manifest_["subcommand"] = std::move(subcommand);
        manifest_["argv"] = std::move(argv);
    }

    json& parameters() { return manifest_["parameters"]; }
    void set_seed(std::uint64_t seed) { manifest_["seed"] = seed; }
    void add_output(const std::string& path) { outputs_.push_back(path); }

    void write(const std::string& primary_output) {
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start_;
        manifest_["outputs"] = outputs_;
        manifest_["duration_seconds"] = elapsed.count();
        const std::string path = primary_output + ".manifest.json";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write manifest: " + path);
        out << manifest_.dump(2) << "\n";
    }

private:
    std::chrono::steady_clock::time_point start_;
    json manifest_;
    std::vector<std::string> outputs_;
};

int parse_int_token(const std::string& token, const std::string& flag) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(token, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(flag + ": malformed integer '" + token + "'");
    }
    if (used != token.size())
        throw std::invalid_argument(flag + ": malformed integer '" + token + "'");
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find(sep, start);
        if (end == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

struct FigureContext {
    std::string out_dir;
    ManifestWriter* manifest;
};

void figure_d1_vs_d2(FigureContext& ctx) {
    const double t_max = 3.0;
    const OdeSolution s1 = solve_ivp(1.0, t_max);
    const OdeSolution s2 = solve_ivp(2.0, t_max);
    const double cross = crossing_time(1.0, 2.0);

    const std::string csv_path = ctx.out_dir + "/fig_d1_vs_d2.csv";
    CsvWriter csv(csv_path);
    csv.header({"t", "x_d1", "x_d2", "x_prime_d1", "x_prime_d2"});
    for (std::size_t i = 0; i < s1.size(); i += 5) {
        csv.begin_row();
        csv.field(s1.t_grid[i]);
        csv.field(s1.x[i]);
        csv.field(s2.x[i]);
        csv.field(s1.x_prime[i]);
        csv.field(s2.x_prime[i]);
        csv.end_row();
    }
    ctx.manifest->add_output(csv_path);

    SvgPlot taken("taken fraction", "t", "x(t)");
    SvgPlot rate("match rate", "t", "x'(t)");
    SvgSeries x1{"d=1", "#1f77b4", false, {}};
    SvgSeries x2{"d=2", "#d62728", false, {}};
    SvgSeries p1{"d=1", "#1f77b4", false, {}};
    SvgSeries p2{"d=2", "#d62728", false, {}};
    for (std::size_t i = 0; i < s1.size(); i += 5) {
        x1.points.push_back({s1.t_grid[i], s1.x[i]});
        x2.points.push_back({s2.t_grid[i], s2.x[i]});
        p1.points.push_back({s1.t_grid[i], s1.x_prime[i]});
        p2.points.push_back({s2.t_grid[i], s2.x_prime[i]});
    }
    taken.add_series(std::move(x1));
    taken.add_series(std::move(x2));
    rate.add_series(std::move(p1));
    rate.add_series(std::move(p2));
    rate.add_vline(cross, "t=" + format_g(cross, 4), "#2ca02c");

    const std::string svg_path = ctx.out_dir + "/fig_d1_vs_d2.svg";
    SvgPlot::write_grid(svg_path, {taken, rate}, 2);
    ctx.manifest->add_output(svg_path);
}

void figure_overlay(FigureContext& ctx, int n, int d, std::int64_t reps,
                    std::uint64_t seed) {
    const double t_max = 2.0;
    const int m = static_cast<int>(std::ceil(t_max * n));
    MarketConfig config;
    config.n = n;
    config.d = d;
    config.m = m;
    config.dist = DistributionSpec::make(DistKind::uniform, n);
    config.seed = seed;

    const int grid = 201;
    std::vector<double> t_grid(grid);
    std::vector<int> counts(grid);
    for (int g = 0; g < grid; ++g) {
        t_grid[static_cast<std::size_t>(g)] = t_max * g / (grid - 1);
        counts[static_cast<std::size_t>(g)] = std::min(
            m, static_cast<int>(std::floor(t_grid[static_cast<std::size_t>(g)] * n + 1e-9)));
    }
    const OdeSolution sol = solve_ivp(d, t_max);

    std::vector<std::vector<double>> fractions(
        static_cast<std::size_t>(reps), std::vector<double>(static_cast<std::size_t>(grid)));
    MarketSimulator sim(config);
    Rng rng(0);
    for (std::int64_t rep = 0; rep < reps; ++rep) {
        rng.reseed(derive_seed(seed, static_cast<std::uint64_t>(rep)));
        const SimOutcome& out = sim.simulate(rng);
        for (int g = 0; g < grid; ++g)
            fractions[static_cast<std::size_t>(rep)][static_cast<std::size_t>(g)] =
                static_cast<double>(
                    out.taken_trajectory[static_cast<std::size_t>(counts[static_cast<std::size_t>(g)])]) /
                n;
    }

    const std::string csv_path = ctx.out_dir + "/fig_overlay.csv";
    CsvWriter csv(csv_path);
    std::vector<std::string> cols = {"t", "x_continuum"};
    for (std::int64_t rep = 0; rep < reps; ++rep)
        cols.push_back("rep_" + std::to_string(rep));
    csv.header(cols);
    for (int g = 0; g < grid; ++g) {
        csv.begin_row();
        csv.field(t_grid[static_cast<std::size_t>(g)]);
        csv.field(sol.x_at(t_grid[static_cast<std::size_t>(g)]));
        for (std::int64_t rep = 0; rep < reps; ++rep)
            csv.field(fractions[static_cast<std::size_t>(rep)][static_cast<std::size_t>(g)]);
        csv.end_row();
    }
    ctx.manifest->add_output(csv_path);

    SvgPlot plot("discrete trajectories vs continuum, n=" + std::to_string(n) +
                     ", d=" + std::to_string(d),
                 "t", "taken fraction");
    for (std::int64_t rep = 0; rep < reps; ++rep) {
        SvgSeries series{"", "#9b9b9b", false, {}};
        for (int g = 0; g < grid; ++g)
            series.points.push_back({t_grid[static_cast<std::size_t>(g)],
                                     fractions[static_cast<std::size_t>(rep)][static_cast<std::size_t>(g)]});
        plot.add_series(std::move(series));
    }
    SvgSeries cont{"continuum", "#d62728", false, {}};
    for (int g = 0; g < grid; ++g)
        cont.points.push_back({t_grid[static_cast<std::size_t>(g)],
                               sol.x_at(t_grid[static_cast<std::size_t>(g)])});
    plot.add_series(std::move(cont));

    const std::string svg_path = ctx.out_dir + "/fig_overlay.svg";
    plot.write(svg_path);
    ctx.manifest->add_output(svg_path);
}

void figure_nonuniform(FigureContext& ctx, const VerifyOptions& opts) {
    VerifyOptions with_csv = opts;
    with_csv.out_dir = ctx.out_dir;
    const VerificationReport report = verify_figures(with_csv);
    for (const auto& artifact : report.artifacts) ctx.manifest->add_output(artifact);

    const std::string report_path = ctx.out_dir + "/fig_nonuniform.report.txt";
    std::ofstream rep(report_path, std::ios::binary);
    rep << report.to_text();
    rep.close();
    ctx.manifest->add_output(report_path);

    // Panels per distribution: weights, taken fraction, match probability.
    const std::vector<std::string> dists = {"uniform", "pareto-low", "pareto-high",
                                            "two-class", "degenerate"};
    const std::vector<int> d_list = {1, 2, 4, 10, 20};
    const std::vector<std::string> palette = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                              "#d62728", "#9467bd"};
    std::vector<SvgPlot> panels;
    for (const auto& dist : dists) {
        const auto spec = DistributionSpec::parse(dist, opts.n);
        SvgPlot weights(dist + ": sampling weights", "school j", "p(j)");
        SvgSeries w{"", "#1f77b4", false, {}};
        for (int j = 1; j <= opts.n; j += std::max(1, opts.n / 500))
            w.points.push_back({static_cast<double>(j),
                                spec.weights[static_cast<std::size_t>(j) - 1]});
        weights.add_series(std::move(w));
        panels.push_back(std::move(weights));

        // Re-read the per-distribution CSV written by verify_figures.
        std::ifstream in(ctx.out_dir + "/figure_" + dist + ".csv");
        if (!in) throw std::runtime_error("figure CSV missing for " + dist);
        std::string line;
        std::getline(in, line);  // header
        struct Row { int i, d; double p, taken; };
        std::vector<Row> rows;
        while (std::getline(in, line)) {
            const auto f = split(line, ',');
            rows.push_back({parse_int_token(f[0], "figure csv"),
                            parse_int_token(f[1], "figure csv"), std::stod(f[4]),
                            std::stod(f[6])});
        }

        SvgPlot taken(dist + ": taken fraction", "student i", "E[T_i]/n");
        SvgPlot match(dist + ": match probability", "student i", "P(M_i=1)");
        for (std::size_t di = 0; di < d_list.size(); ++di) {
            SvgSeries st{"d=" + std::to_string(d_list[di]), palette[di], false, {}};
            SvgSeries sm = st;
            for (const auto& row : rows) {
                if (row.d != d_list[di]) continue;
                st.points.push_back({static_cast<double>(row.i), row.taken});
                sm.points.push_back({static_cast<double>(row.i), row.p});
            }
            taken.add_series(std::move(st));
            match.add_series(std::move(sm));
        }
        panels.push_back(std::move(taken));
        panels.push_back(std::move(match));
    }
    const std::string svg_path = ctx.out_dir + "/fig_nonuniform.svg";
    SvgPlot::write_grid(svg_path, panels, 3);
    ctx.manifest->add_output(svg_path);
}

int dispatch(const std::vector<std::string>& args);

int cmd_rerun(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::invalid_argument("--manifest: cannot open " + manifest_path);
    json manifest;
    in >> manifest;
    const std::vector<std::string> argv = manifest.at("argv").get<std::vector<std::string>>();
    return dispatch(argv);
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"bounded-list serial dictatorship market toolkit"};
    app.require_subcommand(1);

    // --- simulate ---
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo match statistics as CSV");
    int sim_n = 1000, sim_q = 1, sim_m = 0, sim_k = 1, sim_threads = 1;
    std::int64_t sim_reps = 100000;
    std::string sim_d = "1,2,4,10,20", sim_i, sim_dist = "uniform", sim_out = "simulate.csv";
    std::string sim_weights_file;
    std::uint64_t sim_seed = default_seed();
    simulate->add_option("--n", sim_n, "number of schools")->check(CLI::PositiveNumber);
    simulate->add_option("--d", sim_d, "list lengths, comma separated");
    simulate->add_option("--q", sim_q, "seats per school")->check(CLI::PositiveNumber);
    simulate->add_option("--m", sim_m, "students to process (0 = max index)");
    simulate->add_option("--i", sim_i, "student indices, e.g. 1..1000:10 (default)");
    simulate->add_option("--k", sim_k, "rank threshold for the rank_cdf_k column");
    simulate->add_option("--reps", sim_reps, "replications")->check(CLI::PositiveNumber);
    simulate->add_option("--dist", sim_dist,
                         "uniform|pareto-low|pareto-high|two-class|degenerate|custom");
    simulate->add_option("--weights-file", sim_weights_file,
                         "one weight per line (dist=custom)");
    simulate->add_option("--seed", sim_seed, "master seed (env LISTMATCH_SEED)");
    simulate->add_option("--threads", sim_threads, "worker threads (speed only)");
    simulate->add_option("--out", sim_out, "output CSV path");

    // --- ode ---
    auto* ode = app.add_subcommand("ode", "continuum trajectories as CSV");
    double ode_d = 1.0, ode_tmax = 3.0, ode_step = 1e-3;
    int ode_q = 1;
    std::string ode_method = "direct", ode_out = "ode.csv";
    ode->add_option("--d", ode_d, "list length (real, >= 1)");
    ode->add_option("--q", ode_q, "seats per school")->check(CLI::PositiveNumber);
    ode->add_option("--t-max", ode_tmax, "horizon")->check(CLI::PositiveNumber);
    ode->add_option("--step", ode_step, "integrator step (<= 1e-3)");
    ode->add_option("--method", ode_method, "direct|tau");
    ode->add_option("--out", ode_out, "output CSV path");

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "run claim suites");
    VerifyOptions vopts;
    vopts.seed = default_seed();
    std::string verify_suite = "all";
    std::string verify_out_dir = "verify-out";
    verify->add_option("--suite", verify_suite, "all|figures|<claim id>");
    verify->add_option("--n", vopts.n, "number of schools")->check(CLI::PositiveNumber);
    verify->add_option("--reps", vopts.reps, "replications")->check(CLI::PositiveNumber);
    verify->add_option("--seed", vopts.seed, "master seed");
    verify->add_option("--threads", vopts.threads, "worker threads (speed only)");
    verify->add_option("--q-max", vopts.q_max, "conjecture scan seat limit");
    verify->add_option("--d-max", vopts.d_max, "conjecture scan list-length limit");
    verify->add_option("--dist", vopts.dist, "distribution for the Monte Carlo path");
    verify->add_option("--out-dir", verify_out_dir, "report/CSV directory");

    // --- figures ---
    auto* figures = app.add_subcommand("figures", "SVG figures with backing CSVs");
    std::string fig_name;
    int fig_n = 1000, fig_d = 2, fig_threads = 1;
    std::int64_t fig_reps = 0;
    std::uint64_t fig_seed = default_seed();
    std::string fig_out_dir = "figures-out";
    figures->add_option("--fig", fig_name, "d1-vs-d2|overlay|nonuniform")->required();
    figures->add_option("--n", fig_n, "number of schools")->check(CLI::PositiveNumber);
    figures->add_option("--d", fig_d, "list length (overlay)");
    figures->add_option("--reps", fig_reps, "replications (0 = figure default)");
    figures->add_option("--seed", fig_seed, "master seed");
    figures->add_option("--threads", fig_threads, "worker threads (speed only)");
    figures->add_option("--out-dir", fig_out_dir, "output directory");

    // --- rerun ---
    auto* rerun = app.add_subcommand("rerun", "re-execute a run manifest");
    std::string rerun_manifest;
    rerun->add_option("--manifest", rerun_manifest, "manifest path")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (simulate->parsed()) {
        const std::vector<int> d_list = parse_int_list(sim_d, "--d");
        for (int d : d_list)
            if (d < 1) throw std::invalid_argument("--d: list lengths must be positive");
        if (sim_i.empty()) sim_i = "1.." + std::to_string(sim_n) + ":10";
        std::vector<int> indices = parse_index_ranges(sim_i, "--i");
        for (int i : indices)
            if (i < 1) throw std::invalid_argument("--i: student indices must be positive");
        const int max_index = *std::max_element(indices.begin(), indices.end());
        const int m = sim_m > 0 ? sim_m : max_index;
        if (m < max_index)
            throw std::invalid_argument("--m: must cover the largest requested index");

        DistributionSpec dist;
        if (sim_dist == "custom") {
            if (sim_weights_file.empty())
                throw std::invalid_argument("--weights-file: required for --dist custom");
            std::ifstream in(sim_weights_file);
            if (!in) throw std::invalid_argument("--weights-file: cannot open " + sim_weights_file);
            std::vector<double> weights;
            double w = 0.0;
            while (in >> w) weights.push_back(w);
            dist = DistributionSpec::custom(std::move(weights));
            if (dist.weights.size() != static_cast<std::size_t>(sim_n))
                throw std::invalid_argument("--weights-file: need exactly n weights");
        } else {
            dist = DistributionSpec::parse(sim_dist, sim_n);
        }

        ManifestWriter manifest("simulate", args);
        manifest.set_seed(sim_seed);
        manifest.parameters() = {{"n", sim_n},     {"d", sim_d},       {"q", sim_q},
                                 {"m", m},         {"i", sim_i},       {"k", sim_k},
                                 {"reps", sim_reps}, {"dist", sim_dist}, {"threads", sim_threads},
                                 {"out", sim_out}};

        CsvWriter csv(sim_out);
        csv.header({"i", "d", "q", "dist", "reps", "p_match", "stderr", "rank_cdf_k",
                    "taken_mean"});
        for (int d : d_list) {
            MarketConfig config;
            config.n = sim_n;
            config.d = d;
            config.q = sim_q;
            config.m = m;
            config.dist = dist;
            config.seed = sim_seed;
            const int k = std::min(sim_k, d);
            const auto stats =
                estimate_student_stats(config, indices, k, sim_reps, sim_threads);
            for (const auto& row : stats) {
                csv.begin_row();
                csv.field(static_cast<std::int64_t>(row.student));
                csv.field(static_cast<std::int64_t>(d));
                csv.field(static_cast<std::int64_t>(sim_q));
                csv.field(dist.name());
                csv.field(sim_reps);
                csv.field(row.p_match.mean);
                csv.field(row.p_match.std_err);
                csv.field(row.rank_cdf.mean);
                csv.field(row.taken_fraction.mean);
                csv.end_row();
            }
        }
        manifest.add_output(sim_out);
        manifest.write(sim_out);
        return 0;
    }

    if (ode->parsed()) {
        if (ode_method != "direct" && ode_method != "tau")
            throw std::invalid_argument("--method: expected direct or tau");
        ManifestWriter manifest("ode", args);
        manifest.parameters() = {{"d", ode_d},       {"q", ode_q},
                                 {"t_max", ode_tmax}, {"step", ode_step},
                                 {"method", ode_method}, {"out", ode_out}};
        manifest.set_seed(0);

        const OdeSolution sol = [&] {
            if (ode_method == "tau") return tau_rescaled_solve(ode_d, ode_q, ode_tmax, ode_step);
            if (ode_q > 1) return multi_seat_solve(ode_d, ode_q, ode_tmax, ode_step);
            return solve_ivp(ode_d, ode_tmax, ode_step);
        }();

        CsvWriter csv(ode_out);
        std::vector<std::string> cols = {"t", "x", "x_prime"};
        for (int k = 0; k < static_cast<int>(sol.y.size()); ++k)
            cols.push_back("y" + std::to_string(k));
        csv.header(cols);
        for (std::size_t g = 0; g < sol.size(); ++g) {
            csv.begin_row();
            csv.field(sol.t_grid[g]);
            csv.field(sol.x[g]);
            csv.field(sol.x_prime[g]);
            for (const auto& yk : sol.y) csv.field(yk[g]);
            csv.end_row();
        }
        manifest.add_output(ode_out);
        manifest.write(ode_out);
        return 0;
    }

    if (verify->parsed()) {
        std::vector<std::string> suites;
        if (verify_suite == "all") {
            suites = suite_names();
        } else {
            const auto& names = suite_names();
            if (verify_suite != "figures" &&
                std::find(names.begin(), names.end(), verify_suite) == names.end())
                throw std::invalid_argument("--suite: unknown suite '" + verify_suite + "'");
            suites = {verify_suite};
        }
        std::filesystem::create_directories(verify_out_dir);
        vopts.out_dir = verify_out_dir;

        ManifestWriter manifest("verify", args);
        manifest.set_seed(vopts.seed);
        manifest.parameters() = {{"suite", verify_suite}, {"n", vopts.n},
                                 {"reps", vopts.reps},    {"threads", vopts.threads},
                                 {"q_max", vopts.q_max},  {"d_max", vopts.d_max},
                                 {"dist", vopts.dist},    {"out_dir", verify_out_dir}};

        bool any_fail = false;
        for (const auto& suite : suites) {
            const VerificationReport report = run_suite(suite, vopts);
            const std::string path = verify_out_dir + "/" + suite + ".report.txt";
            std::ofstream out(path, std::ios::binary);
            out << report.to_text();
            out.close();
            manifest.add_output(path);
            std::cout << suite << ": " << to_string(report.status)
                      << " (margin=" << format_g(report.margin) << ")\n";
            any_fail = any_fail || report.status == CheckStatus::fail;
        }
        manifest.write(verify_out_dir + "/verify");
        return any_fail ? 1 : 0;
    }

    if (figures->parsed()) {
        std::filesystem::create_directories(fig_out_dir);
        ManifestWriter manifest("figures", args);
        manifest.set_seed(fig_seed);
        manifest.parameters() = {{"fig", fig_name}, {"n", fig_n},   {"d", fig_d},
                                 {"reps", fig_reps}, {"threads", fig_threads},
                                 {"out_dir", fig_out_dir}};
        FigureContext ctx{fig_out_dir, &manifest};
        if (fig_name == "d1-vs-d2") {
            figure_d1_vs_d2(ctx);
        } else if (fig_name == "overlay") {
            figure_overlay(ctx, fig_n, fig_d, fig_reps > 0 ? fig_reps : 100, fig_seed);
        } else if (fig_name == "nonuniform") {
            VerifyOptions opts;
            opts.n = fig_n;
            opts.reps = fig_reps > 0 ? fig_reps : 10000;
            opts.seed = fig_seed;
            opts.threads = fig_threads;
            figure_nonuniform(ctx, opts);
        } else {
            throw std::invalid_argument("--fig: unknown figure '" + fig_name + "'");
        }
        manifest.write(fig_out_dir + "/" + fig_name);
        return 0;
    }

    if (rerun->parsed()) return cmd_rerun(rerun_manifest);

    return 2;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    for (const auto& token : split(text, ','))
        out.push_back(parse_int_token(token, flag));
    if (out.empty()) throw std::invalid_argument(flag + ": empty list");
    return out;
}

std::vector<int> parse_index_ranges(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    for (const auto& token : split(text, ',')) {
        const std::size_t dots = token.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_int_token(token, flag));
            continue;
        }
        const std::string first = token.substr(0, dots);
        std::string rest = token.substr(dots + 2);
        int step = 1;
        const std::size_t colon = rest.find(':');
        if (colon != std::string::npos) {
            step = parse_int_token(rest.substr(colon + 1), flag);
            rest = rest.substr(0, colon);
        }
        const int lo = parse_int_token(first, flag);
        const int hi = parse_int_token(rest, flag);
        if (step < 1 || hi < lo)
            throw std::invalid_argument(flag + ": malformed range '" + token + "'");
        for (int v = lo; v <= hi; v += step) out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(flag + ": empty list");
    return out;
}

int run_cli(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace listmatch
