#include "qam/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qam/closedform.hpp"
#include "qam/errors.hpp"
#include "qam/gatesim.hpp"
#include "qam/pattern.hpp"
#include "qam/retrieval.hpp"
#include "qam/thermo.hpp"
#include "qam/tuner.hpp"

namespace qam::cli {

namespace {

using nlohmann::json;

std::string format12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

MemoryInstance load_pattern_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open pattern file '" + path + "'");
    return load_patterns(in);
}

// Emit to the named file or, with an empty path, to the fallback stream.
void emit(const std::string& path, std::ostream& fallback, const std::string& payload) {
    if (path.empty()) {
        fallback << payload;
        return;
    }
    std::ofstream out(path);
    if (!out) throw io_error("cannot open output file '" + path + "'");
    out << payload;
    if (!out) throw io_error("failed writing output file '" + path + "'");
}

struct SimulateArgs {
    std::string pattern_file;
    std::string input_bits;
    std::int64_t b = 1;
    std::int64_t max_entries = gatesim::SimLimits{}.max_entries;
    std::string format = "text";
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
    const MemoryInstance mem = load_pattern_file(args.pattern_file);
    const BinaryPattern input = BinaryPattern::from_string(args.input_bits);
    if (args.b < 1) throw validation_error("simulate requires b >= 1");

    gatesim::SimLimits limits;
    limits.max_entries = args.max_entries;
    const auto state = gatesim::run_all_rounds(mem, input, static_cast<int>(args.b), limits);
    const double p_zero = state.control_marginals()[0];

    const auto spectrum = distance_spectrum(mem, input);
    const double p_rec_cf = closedform::recognition_probability(spectrum, args.b);

    // Gate-level readout distribution, when the all-zeros outcome carries
    // any weight at all.
    std::map<BinaryPattern, double> gate_dist;
    if (p_zero > 0.0) gate_dist = gatesim::memory_distribution(gatesim::project_all_zeros(state));

    // Closed-form distribution aggregated per distinct pattern so both
    // sides key identically (duplicates merge).
    std::map<BinaryPattern, double> cf_dist;
    std::map<BinaryPattern, std::int64_t> pattern_distance;
    if (spectrum.min_distance() < mem.width() || args.b == 0) {
        const auto stats = closedform::retrieval_distribution(mem, input, args.b);
        for (std::int64_t k = 0; k < mem.pattern_count(); ++k)
            cf_dist[mem.pattern(k)] += stats.per_pattern[static_cast<std::size_t>(k)];
    }
    for (const auto& pat : mem.patterns())
        pattern_distance[pat] = hamming_distance(pat, input);

    double max_delta = 0.0;
    for (const auto& [pat, prob] : gate_dist) {
        const auto it = cf_dist.find(pat);
        const double cf = it == cf_dist.end() ? 0.0 : it->second;
        max_delta = std::max(max_delta, std::abs(prob - cf));
    }

    if (args.format == "json") {
        json report;
        report["n"] = mem.width();
        report["p"] = mem.pattern_count();
        report["b"] = args.b;
        report["p_all_zeros"] = p_zero;
        report["p_rec_closed_form"] = p_rec_cf;
        report["recognition_delta"] = std::abs(p_zero - p_rec_cf);
        json dist = json::object();
        for (const auto& [pat, prob] : gate_dist) {
            json row;
            row["distance"] = pattern_distance[pat];
            row["gatesim"] = prob;
            row["closed_form"] = cf_dist.count(pat) ? cf_dist[pat] : 0.0;
            dist[pat.to_string()] = row;
        }
        report["memory_distribution"] = dist;
        report["max_distribution_delta"] = max_delta;
        out << report.dump(2) << '\n';
        return 0;
    }

    out << "n = " << mem.width() << ", p = " << mem.pattern_count() << ", b = " << args.b << '\n';
    out << "P(all-zeros control)     = " << format12(p_zero) << '\n';
    out << "closed-form recognition  = " << format12(p_rec_cf) << '\n';
    out << "|delta|                  = " << format12(std::abs(p_zero - p_rec_cf)) << '\n';
    if (gate_dist.empty()) {
        out << "memory distribution undefined: the all-zeros outcome carries no weight\n";
        return 0;
    }
    out << "pattern  d_H  P(gatesim)  P(closed-form)\n";
    for (const auto& [pat, prob] : gate_dist) {
        const double cf = cf_dist.count(pat) ? cf_dist[pat] : 0.0;
        out << pat.to_string() << "  " << pattern_distance[pat] << "  " << format12(prob) << "  "
            << format12(cf) << '\n';
    }
    out << "max distribution |delta| = " << format12(max_delta) << '\n';
    return 0;
}

struct RetrieveArgs {
    std::string pattern_file;
    std::string input_bits;
    std::int64_t b = 1;
    std::int64_t threshold = 1;
    std::int64_t trials = 1;
    std::uint64_t seed = 1;
    std::string out_path;
};

int cmd_retrieve(const RetrieveArgs& args, std::ostream& out) {
    const MemoryInstance mem = load_pattern_file(args.pattern_file);
    const BinaryPattern input = BinaryPattern::from_string(args.input_bits);
    const auto stats =
        retrieval::run_trials(mem, input, args.b, args.threshold, args.trials, args.seed);

    json report;
    report["n"] = mem.width();
    report["p"] = mem.pattern_count();
    report["b"] = args.b;
    report["T"] = args.threshold;
    report["seed"] = args.seed;
    report["trials"] = stats.trials;
    report["recognized"] = stats.recognized;
    report["recognition_rate"] = stats.recognition_rate;
    if (std::isnan(stats.mean_attempts))
        report["mean_attempts"] = nullptr;
    else
        report["mean_attempts"] = stats.mean_attempts;
    report["mean_attempts_all"] = stats.mean_attempts_all;
    json histogram = json::object();
    for (const auto& [pat, count] : stats.output_histogram) histogram[pat.to_string()] = count;
    report["output_histogram"] = histogram;

    emit(args.out_path, out, report.dump(2) + "\n");
    return 0;
}

struct SweepArgs {
    std::int64_t n = 0;
    std::optional<std::int64_t> d;
    std::optional<double> d_over_n;
    double b_min = 1e-3;
    double b_max = 1e5;
    int points_per_decade = 8;
    int linear_count = 50;
    std::string grid_kind = "log";
    std::string mode = "exact-sum";
    std::string out_path;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
    if (args.d.has_value() == args.d_over_n.has_value())
        throw validation_error("give exactly one of --d and --d-over-n");
    const thermo::AverageModel model =
        args.d ? thermo::AverageModel(args.n, *args.d)
               : thermo::AverageModel::from_relative_distance(args.n, *args.d_over_n);
    const auto grid = args.grid_kind == "linear"
                          ? thermo::make_linear_grid(args.b_min, args.b_max, args.linear_count)
                          : thermo::make_log_grid(args.b_min, args.b_max, args.points_per_decade);
    const auto mode =
        args.mode == "integral" ? thermo::EvalMode::integral : thermo::EvalMode::exact_sum;

    const auto result = thermo::sweep(model, grid, mode);
    std::ostringstream csv;
    thermo::write_sweep_csv(csv, result);
    emit(args.out_path, out, csv.str());
    if (!args.out_path.empty()) {
        out << "wrote " << result.points.size() << " points to " << args.out_path
            << "  (b_crossover = "
            << (result.b_crossover ? format12(*result.b_crossover) : std::string("none"))
            << ", plateau_low_D = " << format12(result.plateau_low_d)
            << ", plateau_high_D = " << format12(result.plateau_high_d) << ")\n";
    }
    return 0;
}

struct TuneArgs {
    std::int64_t n = 0;
    double epsilon = 0.0;
    double nu = 0.0;
    std::string out_path;
};

int cmd_tune(const TuneArgs& args, std::ostream& out) {
    const auto plan = tuner::tune(args.n, args.epsilon, args.nu);
    json report;
    report["epsilon"] = plan.epsilon;
    report["nu"] = plan.nu;
    report["n"] = plan.n;
    report["d"] = plan.d;
    report["b"] = plan.b;
    report["achieved_D"] = plan.achieved_d;
    report["threshold_practical"] = plan.threshold_practical;
    if (plan.threshold_practical)
        report["T"] = plan.threshold;
    else
        report["T"] = nullptr;
    report["log10_T_bound"] = plan.log10_threshold_bound;
    emit(args.out_path, out, report.dump(2) + "\n");
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probabilistic quantum associative memory: exact simulation, closed-form "
                 "retrieval statistics, effective thermodynamics and parameter tuning"};
    app.require_subcommand(1);
    app.set_config("--config");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand(
        "simulate", "Exact state-vector run of the retrieval circuit with closed-form cross-check");
    simulate->add_option("--patterns", sim.pattern_file, "pattern file, one bitstring per line")
        ->required();
    simulate->add_option("--input", sim.input_bits, "input bitstring")->required();
    simulate->add_option("--b", sim.b, "number of control qbits")->required();
    simulate->add_option("--max-entries", sim.max_entries, "amplitude-table cap (default 2^24)");
    simulate->add_option("--format", sim.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    RetrieveArgs ret;
    auto* retrieve = app.add_subcommand(
        "retrieve", "Monte Carlo repeat-until-success protocol; emits JSON statistics");
    retrieve->add_option("--patterns", ret.pattern_file, "pattern file")->required();
    retrieve->add_option("--input", ret.input_bits, "input bitstring")->required();
    retrieve->add_option("--b", ret.b, "number of control qbits")->required();
    retrieve->add_option("--T", ret.threshold, "repetition threshold")->required();
    retrieve->add_option("--trials", ret.trials, "number of independent trials");
    retrieve->add_option("--seed", ret.seed, "rng seed");
    retrieve->add_option("--out", ret.out_path, "output file (default stdout)");

    SweepArgs swp;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Thermodynamic sweep over inverse temperature b; emits CSV");
    sweep_cmd->add_option("--n", swp.n, "pattern width")->required();
    auto* d_opt = sweep_cmd->add_option("--d", swp.d, "minimal Hamming distance");
    sweep_cmd->add_option("--d-over-n", swp.d_over_n, "minimal relative distance")->excludes(d_opt);
    sweep_cmd->add_option("--b-min", swp.b_min, "grid start (default 1e-3)");
    sweep_cmd->add_option("--b-max", swp.b_max, "grid end (default 1e5)");
    sweep_cmd->add_option("--points-per-decade", swp.points_per_decade,
                          "log-grid resolution (default 8)");
    sweep_cmd->add_option("--count", swp.linear_count, "linear-grid point count (default 50)");
    sweep_cmd->add_option("--grid", swp.grid_kind, "log or linear")
        ->check(CLI::IsMember({"log", "linear"}));
    sweep_cmd->add_option("--mode", swp.mode, "exact-sum or integral")
        ->check(CLI::IsMember({"exact-sum", "integral"}));
    sweep_cmd->add_option("--out", swp.out_path, "output file (default stdout)");

    TuneArgs tun;
    auto* tune_cmd = app.add_subcommand(
        "tune", "Minimal control-register size and threshold for a target efficiency");
    tune_cmd->add_option("--n", tun.n, "pattern width")->required();
    tune_cmd->add_option("--epsilon", tun.epsilon, "tolerated corruption fraction")->required();
    tune_cmd->add_option("--nu", tun.nu, "target efficiency")->required();
    tune_cmd->add_option("--out", tun.out_path, "output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim, out);
        if (retrieve->parsed()) return cmd_retrieve(ret, out);
        if (sweep_cmd->parsed()) return cmd_sweep(swp, out);
        return cmd_tune(tun, out);
    } catch (const resource_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const io_error& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qam::cli
