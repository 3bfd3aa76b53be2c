#include "cli.hpp"

#include "verify.hpp"

#include "nasearch/analytic.hpp"
#include "nasearch/errors.hpp"
#include "nasearch/io.hpp"
#include "nasearch/propagator.hpp"
#include "nasearch/sweep.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace nasearch::cli {

namespace {

using nlohmann::json;

// Resolved arguments of one run, replayable through `nasearch rerun`.
struct Replay {
    std::vector<std::string> argv;

    void add(const std::string& flag, const std::string& value) {
        argv.push_back(flag);
        argv.push_back(value);
    }
    void add(const std::string& flag, double value) { add(flag, format_double(value)); }
    void add_int(const std::string& flag, long long value) { add(flag, std::to_string(value)); }
};

std::optional<std::int64_t> parse_size(const std::string& text) {
    if (text == "inf") {
        return std::nullopt;
    }
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("--n must be an integer >= 2 or 'inf' (got '" + text + "')");
    }
    if (used != text.size()) {
        throw ValidationError("--n must be an integer >= 2 or 'inf' (got '" + text + "')");
    }
    if (v < 2) {
        throw InvalidProblem("database size N must be >= 2 (got " + text + ")");
    }
    return v;
}

std::pair<double, double> parse_range(const std::string& text, const std::string& flag) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ValidationError(flag + " must look like MIN:MAX (got '" + text + "')");
    }
    try {
        std::size_t u1 = 0;
        std::size_t u2 = 0;
        const std::string lo_text = text.substr(0, colon);
        const std::string hi_text = text.substr(colon + 1);
        const double lo = std::stod(lo_text, &u1);
        const double hi = std::stod(hi_text, &u2);
        if (u1 != lo_text.size() || u2 != hi_text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return {lo, hi};
    } catch (const std::exception&) {
        throw ValidationError(flag + " must look like MIN:MAX (got '" + text + "')");
    }
}

std::pair<int, int> parse_cells(const std::string& text) {
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) {
            throw std::invalid_argument("missing x");
        }
        std::size_t u1 = 0;
        std::size_t u2 = 0;
        const std::string a_text = text.substr(0, x);
        const std::string b_text = text.substr(x + 1);
        const int na = std::stoi(a_text, &u1);
        const int nb = std::stoi(b_text, &u2);
        if (u1 != a_text.size() || u2 != b_text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return {na, nb};
    } catch (const std::exception&) {
        throw ValidationError("--cells must look like NAxNB (got '" + text + "')");
    }
}

std::string size_text(const std::optional<std::int64_t>& n) { return n ? std::to_string(*n) : "inf"; }

json replay_meta(const std::string& command, const Replay& replay) {
    json argv = json::array();
    argv.push_back(command);
    for (const auto& a : replay.argv) {
        argv.push_back(a);
    }
    return {{"command", command}, {"argv", argv}, {"version", code_version()}};
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    int algorithm = 0;
    std::optional<long long> n;
    std::optional<double> epsilon;
    std::optional<double> alpha;
    std::optional<double> a;
    std::optional<double> b;
    std::optional<double> t_max;
    std::optional<double> t_max_in_tau;
    std::size_t samples = 2000;
    double tol = 1e-10;
    std::string out = "-";
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) {
            throw ValidationError(msg);
        }
    };
    require(args.n.has_value(), "simulate: --n is required");
    require(args.samples >= 2, "simulate: --samples must be >= 2");

    Replay replay;
    replay.add_int("--algorithm", args.algorithm);
    replay.add_int("--n", *args.n);

    Trajectory traj;
    IntegratorSettings settings;
    settings.tol = args.tol;
    std::string extra;
    if (args.algorithm == 1) {
        require(args.epsilon && args.alpha, "simulate: algorithm 1 requires --epsilon and --alpha");
        require(!args.a && !args.b, "simulate: --a and --b belong to algorithm 2");
        require(args.t_max.has_value() != args.t_max_in_tau.has_value(),
                "simulate: algorithm 1 takes exactly one of --t-max and --t-max-in-tau");
        const ScheduleI s(*args.n, *args.epsilon, *args.alpha);
        require(!args.t_max_in_tau || std::isfinite(s.tau()), "simulate: --t-max-in-tau needs epsilon > 0");
        const double t_max = args.t_max ? *args.t_max : *args.t_max_in_tau * s.tau();
        require(t_max > 0.0 && std::isfinite(t_max), "simulate: the time span must be positive");
        traj = simulate_I(s, uniform_grid(t_max, args.samples), settings);
        if (args.t_max_in_tau) {
            traj.time_unit = s.tau();
        }
        replay.add("--epsilon", *args.epsilon);
        replay.add("--alpha", *args.alpha);
        if (args.t_max) {
            replay.add("--t-max", *args.t_max);
        } else {
            replay.add("--t-max-in-tau", *args.t_max_in_tau);
        }
        extra = " tau=" + format_double(s.tau());
        if (auto tc = close_approach_time(s)) {
            extra += " t_c=" + format_double(*tc);
        }
    } else if (args.algorithm == 2) {
        require(args.a && args.b, "simulate: algorithm 2 requires --a and --b");
        require(!args.epsilon && !args.alpha, "simulate: --epsilon and --alpha belong to algorithm 1");
        require(!args.t_max_in_tau, "simulate: algorithm 2 uses absolute time (--t-max)");
        require(args.t_max.has_value(), "simulate: --t-max is required");
        require(*args.t_max > 0.0 && std::isfinite(*args.t_max), "simulate: --t-max must be positive");
        const ScheduleII s(*args.n, *args.a, *args.b);
        traj = simulate_II(s, uniform_grid(*args.t_max, args.samples), settings);
        replay.add("--a", *args.a);
        replay.add("--b", *args.b);
        replay.add("--t-max", *args.t_max);
        if (auto tc = close_approach_time(s)) {
            extra = " t_c=" + format_double(*tc);
        }
    } else {
        throw ValidationError("simulate: --algorithm must be 1 or 2");
    }
    replay.add_int("--samples", static_cast<long long>(args.samples));
    replay.add("--tol", args.tol);
    replay.add("--out", args.out);

    const std::string csv = trajectory_csv(traj);
    json meta = replay_meta("simulate", replay);
    meta["trajectory"] = trajectory_meta(traj);
    std::ostream& summary = args.out == "-" ? err : out;
    if (args.out == "-") {
        out << csv;
    } else {
        write_text_file(args.out, csv);
        write_text_file(args.out + ".meta.json", meta.dump(2) + "\n");
    }
    double max_ps = 0.0;
    for (const auto& x : traj.samples) {
        max_ps = std::max(max_ps, x.p_s);
    }
    summary << traj.label << ": samples=" << traj.samples.size()
            << " final_P_s=" << format_double(traj.samples.back().p_s) << " max_P_s=" << format_double(max_ps)
            << extra << " norm_drift=" << format_double(traj.stats.max_norm_drift) << "\n";
    return kOk;
}

// ------------------------------------------------------------------- limit

struct LimitArgs {
    std::string n = "100";
    std::optional<double> a;
    std::optional<double> b;
    bool as_json = false;
};

int cmd_limit(const LimitArgs& args, std::ostream& out, std::ostream& err) {
    if (!args.a || !args.b) {
        throw ValidationError("limit: --a and --b are required");
    }
    if (!(*args.a > 0.0)) {
        throw ValidationError("limit: --a must be > 0");
    }
    const auto n = parse_size(args.n);
    const LimitProbability lp = n ? algII_limit_prob(*n, *args.a, *args.b) : algII_limit_prob_inf(*args.a, *args.b);
    if (args.as_json) {
        out << json{{"N", size_text(n)},
                    {"a", *args.a},
                    {"b", *args.b},
                    {"p", lp.value},
                    {"raw", lp.raw},
                    {"estimated_error", lp.estimated_error},
                    {"accurate", lp.accurate},
                    {"branch", lp.asymptotic_branch ? "asymptotic" : "power-series"},
                    {"extended_precision", lp.extended_precision}}
                   .dump()
            << "\n";
    } else {
        out << "p=" << format_double(lp.value) << " raw=" << format_double(lp.raw)
            << " estimated_error=" << format_double(lp.estimated_error)
            << " accurate=" << (lp.accurate ? "true" : "false")
            << " branch=" << (lp.asymptotic_branch ? "asymptotic" : "power-series") << "\n";
    }
    if (!lp.accurate) {
        err << "limit: estimated error " << format_double(lp.estimated_error) << " exceeds tolerance\n";
        return kAccuracyFailed;
    }
    return kOk;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
    std::string a_range = "0.2:25";
    std::string b_range = "0:10";
    std::string cells = "250x250";
    std::string n = "100";
    std::string out = "grid.json";
    unsigned workers = 0;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
    GridSpec spec;
    std::tie(spec.a_min, spec.a_max) = parse_range(args.a_range, "--a-range");
    std::tie(spec.b_min, spec.b_max) = parse_range(args.b_range, "--b-range");
    std::tie(spec.n_a, spec.n_b) = parse_cells(args.cells);
    spec.n = parse_size(args.n);
    spec.validate();

    const ProbabilityGrid grid = sweep_ab(spec, args.workers);

    Replay replay;
    replay.add("--a-range", args.a_range);
    replay.add("--b-range", args.b_range);
    replay.add("--cells", args.cells);
    replay.add("--n", args.n);
    replay.add("--out", args.out);
    json meta = replay_meta("sweep", replay);
    meta["parameters"] = {{"a_min", spec.a_min}, {"a_max", spec.a_max}, {"b_min", spec.b_min},
                          {"b_max", spec.b_max}, {"n_a", spec.n_a},     {"n_b", spec.n_b}};
    meta["tolerances"] = {{"pcf_max_rel_error", PcfOptions{}.max_rel_error},
                          {"pcf_switch_radius", PcfOptions{}.switch_radius},
                          {"accurate_cell_error", 1e-8}};
    meta["provenance"] = grid_provenance_summary(grid);
    write_text_file(args.out, grid_json(grid, meta).dump() + "\n");

    const std::size_t total = static_cast<std::size_t>(spec.n_a) * static_cast<std::size_t>(spec.n_b);
    out << "sweep: N=" << size_text(spec.n) << " cells=" << total << " accurate=" << grid.accurate_cells()
        << " out=" << args.out << "\n";
    if (grid.accurate_cells() != total) {
        err << "sweep: " << total - grid.accurate_cells() << " cells missed the accuracy target\n";
        return kAccuracyFailed;
    }
    return kOk;
}

// ------------------------------------------------------------------ figure

struct FigureArgs {
    std::string id;
    std::string out_dir = ".";
    std::size_t samples = 2000;
    double tol = 1e-10;
    unsigned workers = 0;
};

int cmd_figure(const FigureArgs& args, std::ostream& out) {
    const FigureId id = parse_figure_id(args.id);
    if (args.samples < 2) {
        throw ValidationError("figure: --samples must be >= 2");
    }
    FigureOverrides ov;
    ov.samples = args.samples;
    ov.tol = args.tol;
    ov.workers = args.workers;
    const auto trajs = figure_dataset(id, ov);

    Replay replay;
    replay.add("--id", args.id);
    replay.add("--out-dir", args.out_dir);
    replay.add_int("--samples", static_cast<long long>(args.samples));
    replay.add("--tol", args.tol);
    json index = replay_meta("figure", replay);
    index["files"] = json::array();
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        const std::string stem = args.out_dir + "/" + args.id + "_" + std::to_string(i + 1);
        write_text_file(stem + ".csv", trajectory_csv(trajs[i]));
        write_text_file(stem + ".csv.meta.json", trajectory_meta(trajs[i]).dump(2) + "\n");
        index["files"].push_back(stem + ".csv");
        out << trajs[i].label << ": samples=" << trajs[i].samples.size()
            << " final_P_s=" << format_double(trajs[i].samples.back().p_s) << " -> " << stem << ".csv\n";
    }
    write_text_file(args.out_dir + "/" + args.id + ".json", index.dump(2) + "\n");
    return kOk;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    std::vector<std::string> suites;
    bool fast = false;
    std::string report;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
    std::vector<std::string> suites = args.suites;
    if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) {
        suites = verify::suite_names();
    }
    std::vector<verify::CheckResult> all;
    for (const auto& name : suites) {
        for (auto& r : verify::run_suite(name, args.fast)) {
            out << (r.passed ? "PASS " : "FAIL ") << r.suite << "/" << r.name << "  " << r.detail << "\n";
            all.push_back(std::move(r));
        }
    }
    const json report = verify::report_json(all);
    if (args.report == "-") {
        out << report.dump(2) << "\n";
    } else if (!args.report.empty()) {
        write_text_file(args.report, report.dump(2) + "\n");
    }
    const std::size_t failed = report["failed"].get<std::size_t>();
    out << "verify: " << all.size() - failed << "/" << all.size() << " checks passed\n";
    return failed == 0 ? kOk : kVerifyFailed;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// ------------------------------------------------------------------- rerun

int cmd_rerun(const std::string& meta_path, const std::string& out_override, std::ostream& out,
              std::ostream& err) {
    std::ifstream in(meta_path);
    if (!in) {
        throw ValidationError("rerun: cannot read " + meta_path);
    }
    json meta;
    try {
        meta = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("rerun: malformed metadata: ") + e.what());
    }
    // Grid files carry their run record under "meta".
    if (!meta.contains("argv") && meta.contains("meta") && meta["meta"].is_object()) {
        meta = meta["meta"];
    }
    if (!meta.contains("argv") || !meta["argv"].is_array()) {
        throw ValidationError("rerun: metadata has no argv record");
    }
    std::vector<std::string> args{"nasearch"};
    for (const auto& a : meta["argv"]) {
        args.push_back(a.get<std::string>());
    }
    if (!out_override.empty()) {
        const std::string flag = args[1] == "figure" ? "--out-dir" : "--out";
        for (std::size_t i = 2; i + 1 < args.size(); ++i) {
            if (args[i] == flag) {
                args[i + 1] = out_override;
            }
        }
    }
    std::vector<const char*> raw;
    for (const auto& a : args) {
        raw.push_back(a.c_str());
    }
    return dispatch(static_cast<int>(raw.size()), raw.data(), out, err);
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Non-adiabatic continuous-time quantum search: simulation, closed forms and sweeps",
                 "nasearch"};
    app.set_version_flag("--version", code_version());
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Integrate the Schroedinger equation and write a trajectory CSV");
    simulate->add_option("--algorithm", sim.algorithm, "1 (linear gap schedule) or 2 (linear sweep)")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    simulate->add_option("--n", sim.n, "Database size N");
    simulate->add_option("--epsilon", sim.epsilon, "Algorithm 1 coupling");
    simulate->add_option("--alpha", sim.alpha, "Algorithm 1 gap velocity");
    simulate->add_option("--a", sim.a, "Algorithm 2 sweep rate");
    simulate->add_option("--b", sim.b, "Algorithm 2 detuning");
    simulate->add_option("--t-max", sim.t_max, "Final time");
    simulate->add_option("--t-max-in-tau", sim.t_max_in_tau, "Final time in units of tau (algorithm 1)");
    simulate->add_option("--samples", sim.samples, "Number of output samples")->capture_default_str();
    simulate->add_option("--tol", sim.tol, "Integrator tolerance")->capture_default_str();
    simulate->add_option("--out", sim.out, "Output CSV path, '-' for stdout")->capture_default_str();

    LimitArgs lim;
    auto* limit = app.add_subcommand("limit", "Evaluate the limiting probability p(a, b)");
    limit->add_option("--n", lim.n, "Database size N or 'inf'")->capture_default_str();
    limit->add_option("--a", lim.a, "Sweep rate (> 0)");
    limit->add_option("--b", lim.b, "Detuning");
    limit->add_flag("--json", lim.as_json, "Print a JSON object");

    SweepArgs sw;
    sw.workers = default_worker_count();
    auto* sweep = app.add_subcommand("sweep", "Tabulate p(a, b) on a grid and write JSON");
    sweep->add_option("--a-range", sw.a_range, "MIN:MAX")->capture_default_str();
    sweep->add_option("--b-range", sw.b_range, "MIN:MAX")->capture_default_str();
    sweep->add_option("--cells", sw.cells, "NAxNB")->capture_default_str();
    sweep->add_option("--n", sw.n, "Database size N or 'inf'")->capture_default_str();
    sweep->add_option("--out", sw.out, "Output JSON path")->capture_default_str();
    sweep->add_option("--workers", sw.workers, "Worker threads (default: NASEARCH_WORKERS or cores)");

    FigureArgs fig;
    fig.workers = default_worker_count();
    auto* figure = app.add_subcommand("figure", "Write the trajectory datasets of a reference figure");
    figure->add_option("--id", fig.id, "fig1, fig2 or fig5")->required();
    figure->add_option("--out-dir", fig.out_dir, "Output directory")->capture_default_str();
    figure->add_option("--samples", fig.samples, "Samples per trajectory")->capture_default_str();
    figure->add_option("--tol", fig.tol, "Integrator tolerance")->capture_default_str();
    figure->add_option("--workers", fig.workers, "Worker threads");

    VerifyArgs ver;
    auto* verify_cmd = app.add_subcommand("verify", "Run the cross-validation suites");
    verify_cmd->add_option("--suite", ver.suites, "all, model, specfun, propagator, analytic, figures");
    verify_cmd->add_flag("--fast", ver.fast, "Reduced sample counts");
    verify_cmd->add_option("--report", ver.report, "Write a JSON report to this path ('-' for stdout)");

    std::string rerun_meta;
    std::string rerun_out;
    auto* rerun = app.add_subcommand("rerun", "Repeat a run from its metadata file");
    rerun->add_option("meta", rerun_meta, "Metadata JSON written by a previous run")->required();
    rerun->add_option("--out", rerun_out, "Replace the recorded output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << code_version() << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    }

    if (simulate->parsed()) {
        return cmd_simulate(sim, out, err);
    }
    if (limit->parsed()) {
        return cmd_limit(lim, out, err);
    }
    if (sweep->parsed()) {
        return cmd_sweep(sw, out, err);
    }
    if (figure->parsed()) {
        return cmd_figure(fig, out);
    }
    if (verify_cmd->parsed()) {
        return cmd_verify(ver, out);
    }
    return cmd_rerun(rerun_meta, rerun_out, out, err);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(argc, argv, out, err);
    } catch (const IntegrationError& e) {
        err << "integration failed at t=" << format_double(e.failing_time()) << ": " << e.what() << "\n";
        return kIntegrationFailed;
    } catch (const AccuracyError& e) {
        err << "accuracy target missed: " << e.what() << "\n";
        return kAccuracyFailed;
    } catch (const PoleError& e) {
        err << "error: " << e.what() << "\n";
        return kAccuracyFailed;
    } catch (const DegenerateSolution& e) {
        err << "error: " << e.what() << "\n";
        return kAccuracyFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    }
}

}  // namespace nasearch::cli
