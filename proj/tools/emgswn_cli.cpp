// Command-line front end: synthetic cohort generation, the OWN/OTHER
// evaluation runs, window sweeps, correlation analysis, the latency
// benchmark and report re-rendering.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "emgswn/config.hpp"
#include "emgswn/errors.hpp"
#include "emgswn/experiment.hpp"
#include "emgswn/io.hpp"
#include "emgswn/report.hpp"
#include "emgswn/synth.hpp"

namespace {

using namespace emgswn;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct GlobalArgs {
    std::string config_path;
    std::string data_root;
    std::string out_dir = "out";
    std::int64_t seed = -1; // -1: keep config/file value
};

ExperimentConfig load_config(const GlobalArgs& args) {
    ConfigFile file;
    if (!args.config_path.empty()) file = ConfigFile::parse_file(args.config_path);
    ExperimentConfig config = experiment_from_config(file);
    if (!args.data_root.empty()) config.data_root = args.data_root;
    if (args.seed >= 0) config.seed = static_cast<std::uint64_t>(args.seed);
    return config;
}

void finish(const RunReport& report, const GlobalArgs& args) {
    emit_report(report, args.out_dir);
    std::printf("report written to %s (kind=%s, hash=%s)\n", args.out_dir.c_str(),
                report.kind.c_str(), report.config_hash.c_str());
    for (const auto& g : report.groups) {
        std::printf("  %-24s mean=%.4f sd=%.4f (n=%zu)\n", g.label.c_str(), g.mean, g.sd,
                    g.per_subject.size());
    }
    for (const auto& c : report.comparisons) {
        std::printf("  %s vs %s: p=%.4g corrected=%.4g %s\n", c.a.c_str(), c.b.c_str(),
                    c.test.p_value, c.test.corrected_p, c.test.stars.c_str());
    }
    if (report.bench_ticks > 0) {
        std::printf("  swn  mean=%.1fus p95=%.1fus max=%.1fus\n", report.bench_swn.mean_us,
                    report.bench_swn.p95_us, report.bench_swn.max_us);
        std::printf("  none mean=%.1fus p95=%.1fus max=%.1fus\n", report.bench_none.mean_us,
                    report.bench_none.p95_us, report.bench_none.max_us);
        std::printf("  normalization share of tick time: %.1f%% (budget %s)\n",
                    100.0 * report.swn_overhead_share, report.budget_met ? "met" : "MISSED");
    }
    if (!report.correlation.empty()) {
        std::printf("  mean r: swn=%.3f none=%.3f\n", report.mean_r_swn, report.mean_r_none);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sliding-window EMG normalization toolkit"};
    app.require_subcommand(1);

    GlobalArgs args;
    app.add_option("--config", args.config_path, "TOML config file");
    app.add_option("--seed", args.seed, "override the experiment seed");
    app.add_option("--data-root", args.data_root, "dataset directory (default: synthesize)");
    app.add_option("--out", args.out_dir, "output directory for reports");

    // synth
    auto* synth = app.add_subcommand("synth", "write a synthetic cohort to disk");
    int synth_subjects = 2;
    int synth_sessions = 1;
    synth->add_option("--subjects", synth_subjects, "subjects to generate");
    synth->add_option("--sessions", synth_sessions, "sessions per subject");

    // evaluation runs
    auto* run_own_cmd = app.add_subcommand("run-own", "train and test per subject");
    auto* run_other_cmd =
        app.add_subcommand("run-other", "train on other subjects, test per subject");
    bool compare_both = false;
    for (auto* cmd : {run_own_cmd, run_other_cmd}) {
        cmd->add_flag("--both-normalizations", compare_both,
                      "also run the opposite normalization and test the difference");
    }
    bool shuffle = false;
    run_own_cmd->add_flag("--shuffle-labels", shuffle, "chance-level control");
    int n_train = -1;
    run_other_cmd->add_option("--n-train", n_train, "training subjects per model (1..9)");

    auto* sweep_cmd = app.add_subcommand("sweep", "5x5 window-length grid");
    auto* winfn_cmd =
        app.add_subcommand("window-funcs", "weighting and dividing window comparison");
    auto* corr_cmd = app.add_subcommand("correlate", "sigma vs MAV correlation analysis");
    auto* bench_cmd = app.add_subcommand("bench", "per-tick latency benchmark");
    int ticks = -1;
    bench_cmd->add_option("--ticks", ticks, "measured ticks (>= 100)");

    auto* report_cmd = app.add_subcommand("report", "re-render a report.json");
    std::string report_in;
    report_cmd->add_option("--in", report_in, "existing report.json")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (report_cmd->parsed()) {
            std::ifstream in(report_in);
            if (!in) throw DataError("cannot read " + report_in);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            finish(report_from_json(text), args);
            return kExitOk;
        }

        ExperimentConfig config = load_config(args);

        if (synth->parsed()) {
            CohortSpec cohort = config.cohort;
            cohort.subjects = synth_subjects;
            cohort.sessions = synth_sessions;
            const auto specs = cohort_specs(cohort);
            for (const auto& spec : specs) {
                write_subject_dataset(args.out_dir, spec, cohort.sessions);
                std::printf("subject %02d written (%d sessions)\n", spec.subject_id,
                            cohort.sessions);
            }
            return kExitOk;
        }
        if (run_own_cmd->parsed()) {
            config.model_type = ModelType::Own;
            config.shuffle_labels = shuffle;
            config.both_normalizations = compare_both || config.both_normalizations;
            finish(run_own(config), args);
            return kExitOk;
        }
        if (run_other_cmd->parsed()) {
            config.model_type = ModelType::Other;
            if (n_train > 0) config.n_train_subjects = n_train;
            config.both_normalizations = compare_both || config.both_normalizations;
            finish(run_other(config), args);
            return kExitOk;
        }
        if (sweep_cmd->parsed()) {
            finish(run_sweep(config), args);
            return kExitOk;
        }
        if (winfn_cmd->parsed()) {
            finish(run_window_funcs(config), args);
            return kExitOk;
        }
        if (corr_cmd->parsed()) {
            finish(run_correlation(config), args);
            return kExitOk;
        }
        if (bench_cmd->parsed()) {
            if (ticks > 0) config.bench_ticks = ticks;
            finish(run_bench(config), args);
            return kExitOk;
        }
        std::fprintf(stderr, "no subcommand selected\n");
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
