#include "emgswn/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "emgswn/errors.hpp"
#include "emgswn/io.hpp"
#include "emgswn/logistic.hpp"
#include "emgswn/rng.hpp"
#include "emgswn/sos_filter.hpp"
#include "emgswn/swn.hpp"

namespace emgswn {

namespace {

constexpr std::uint64_t kSplitSalt = 0x517A1ULL;
constexpr std::uint64_t kShuffleSalt = 0x5481FULL;

int effective_threads(int configured) {
    if (configured > 0) return configured;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

// Index-striped parallel loop; workers only write to index-addressed
// slots, so results do not depend on scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    pool.reserve(t);
    for (std::size_t w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += t) fn(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct Pool {
    std::vector<double> x;
    std::vector<TargetLabel> y;
    std::size_t rows = 0;
    std::size_t dim = 0;

    void append(const TrialFeatures& t) {
        x.insert(x.end(), t.x.begin(), t.x.end());
        y.insert(y.end(), t.y.begin(), t.y.end());
        rows += t.rows;
        dim = t.dim;
    }
};

Pool pool_trials(const SubjectData& data, const std::vector<std::size_t>& trial_indices) {
    Pool pool;
    for (std::size_t idx : trial_indices) pool.append(data.trials[idx]);
    return pool;
}

TrialFeatures trial_features(const TrialRecord& trial, const ArmGeometry& geom,
                             const FeatureConfig& fc) {
    const MultiChannelSignal prep = preprocess_emg(trial.emg);
    FeatureStream stream = feature_stream(prep, fc);

    const auto smooth = smooth_positions(trial.positions, kPositionRateHz);
    std::vector<double> theta;
    theta.reserve(smooth.size());
    for (const auto& pose : smooth) theta.push_back(positions_to_angles(pose, geom).elbow_deg);
    const auto labels = code_targets(angular_velocity(theta, kPositionRateHz));

    TrialFeatures out;
    out.rows = stream.features.rows;
    out.dim = stream.features.cols;
    out.x = std::move(stream.features.data);
    out.y = align_targets(labels, stream.source_index);
    out.sigma = std::move(stream.window_sigma);
    return out;
}

std::uint64_t subject_split_seed(const ExperimentConfig& config, int subject_index) {
    return derive_seed(config.seed, kSplitSalt + static_cast<std::uint64_t>(subject_index));
}

double own_subject_accuracy(const ExperimentConfig& config, int subject_index,
                            const SubjectData& data) {
    std::vector<std::size_t> train, test;
    split_trials(data.trials.size(), subject_split_seed(config, subject_index), train, test);
    Pool train_pool = pool_trials(data, train);
    const Pool test_pool = pool_trials(data, test);
    if (config.shuffle_labels) {
        Rng rng(derive_seed(config.seed, kShuffleSalt + static_cast<std::uint64_t>(subject_index)));
        rng.shuffle(train_pool.y);
    }
    const LogisticModel model =
        fit_logistic(train_pool.x, train_pool.rows, train_pool.dim, train_pool.y);
    const auto predicted = predict(model, test_pool.x, test_pool.rows, test_pool.dim);
    return accuracy(predicted, test_pool.y);
}

RunReport base_report(const ExperimentConfig& config, const std::string& kind) {
    RunReport report;
    report.kind = kind;
    report.seed = config.seed;
    report.config_hash = config_hash(config);
    report.config_echo = config_echo(config);
    return report;
}

GroupResult own_group(const ExperimentConfig& config, const std::string& label) {
    const int n_subjects = config.data_root.empty()
                               ? config.cohort.subjects
                               : static_cast<int>(list_subjects(config.data_root).size());
    GroupResult group;
    group.label = label;
    group.per_subject.resize(static_cast<std::size_t>(n_subjects));
    for (int s = 0; s < n_subjects; ++s) {
        const SubjectData data = compute_subject_data(config, s);
        group.per_subject[static_cast<std::size_t>(s)] =
            SubjectResult{data.subject_id, own_subject_accuracy(config, s, data), 1};
    }
    group.finalize();
    return group;
}

GroupResult other_group(const ExperimentConfig& config, const std::string& label) {
    const int n_subjects = config.data_root.empty()
                               ? config.cohort.subjects
                               : static_cast<int>(list_subjects(config.data_root).size());
    if (config.n_train_subjects >= n_subjects) {
        throw ConfigError("run_other: n_train_subjects must be below the cohort size");
    }

    std::vector<SubjectData> all(static_cast<std::size_t>(n_subjects));
    for (int s = 0; s < n_subjects; ++s) all[static_cast<std::size_t>(s)] =
        compute_subject_data(config, s);

    std::vector<std::vector<std::size_t>> train_split(all.size()), test_split(all.size());
    for (std::size_t s = 0; s < all.size(); ++s) {
        split_trials(all[s].trials.size(), subject_split_seed(config, static_cast<int>(s)),
                     train_split[s], test_split[s]);
    }

    struct Job {
        int test_subject;
        std::vector<int> train_subjects;
    };
    std::vector<Job> jobs;
    for (int s = 0; s < n_subjects; ++s) {
        for (auto& combo : other_combinations(n_subjects, s, config.n_train_subjects)) {
            jobs.push_back(Job{s, std::move(combo)});
        }
    }

    std::vector<double> job_accuracy(jobs.size(), 0.0);
    parallel_for(jobs.size(), effective_threads(config.threads), [&](std::size_t j) {
        const Job& job = jobs[j];
        Pool train;
        for (int t : job.train_subjects) {
            const auto& data = all[static_cast<std::size_t>(t)];
            for (std::size_t idx : train_split[static_cast<std::size_t>(t)]) {
                train.append(data.trials[idx]);
            }
        }
        const Pool test = pool_trials(all[static_cast<std::size_t>(job.test_subject)],
                                      test_split[static_cast<std::size_t>(job.test_subject)]);
        const LogisticModel model = fit_logistic(train.x, train.rows, train.dim, train.y);
        const auto predicted = predict(model, test.x, test.rows, test.dim);
        job_accuracy[j] = accuracy(predicted, test.y);
    });

    GroupResult group;
    group.label = label;
    group.per_subject.resize(all.size());
    for (std::size_t s = 0; s < all.size(); ++s) {
        double sum = 0.0;
        int count = 0;
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            if (jobs[j].test_subject == static_cast<int>(s)) {
                sum += job_accuracy[j];
                ++count;
            }
        }
        group.per_subject[s] =
            SubjectResult{all[s].subject_id, count > 0 ? sum / count : 0.0, count};
    }
    group.finalize();
    return group;
}

void add_group_comparison(RunReport& report) {
    if (report.groups.size() < 2) return;
    std::vector<double> a, b;
    for (const auto& s : report.groups[0].per_subject) a.push_back(s.accuracy);
    for (const auto& s : report.groups[1].per_subject) b.push_back(s.accuracy);
    Comparison cmp;
    cmp.a = report.groups[0].label;
    cmp.b = report.groups[1].label;
    cmp.test = wilcoxon_rank_sum(a, b);
    report.comparisons.push_back(std::move(cmp));
    std::vector<StatTestResult> tests;
    for (auto& c : report.comparisons) tests.push_back(c.test);
    apply_bonferroni(tests, static_cast<int>(tests.size()));
    for (std::size_t i = 0; i < tests.size(); ++i) report.comparisons[i].test = tests[i];
}

ExperimentConfig flipped(const ExperimentConfig& config) {
    ExperimentConfig other = config;
    other.pipeline.normalization = config.pipeline.normalization == Normalization::Swn
                                       ? Normalization::None
                                       : Normalization::Swn;
    return other;
}

// prepared per-trial intermediates shared by sweep and window-funcs runs
struct PreparedTrial {
    MultiChannelSignal prep; // 500 Hz
    std::vector<TargetLabel> labels;
};

std::vector<PreparedTrial> prepare_subject(const ExperimentConfig& config, int subject_index,
                                           int& subject_id_out) {
    std::vector<PreparedTrial> out;
    const int threads = effective_threads(config.threads);
    if (config.data_root.empty()) {
        const auto specs = cohort_specs(config.cohort);
        const auto& spec = specs.at(static_cast<std::size_t>(subject_index));
        subject_id_out = spec.subject_id;
        const auto plan = subject_trial_plan(spec, config.cohort.sessions);
        out.resize(plan.size());
        parallel_for(plan.size(), threads, [&](std::size_t i) {
            const TrialRecord trial = generate_trial(spec, plan[i]);
            PreparedTrial p;
            p.prep = preprocess_emg(trial.emg);
            const auto smooth = smooth_positions(trial.positions, kPositionRateHz);
            std::vector<double> theta;
            theta.reserve(smooth.size());
            for (const auto& pose : smooth) {
                theta.push_back(positions_to_angles(pose, kDefaultArm).elbow_deg);
            }
            p.labels = code_targets(angular_velocity(theta, kPositionRateHz));
            out[i] = std::move(p);
        });
        return out;
    }
    const auto ids = list_subjects(config.data_root);
    subject_id_out = ids.at(static_cast<std::size_t>(subject_index));
    const auto dirs = list_trial_dirs(config.data_root, subject_id_out);
    out.resize(dirs.size());
    parallel_for(dirs.size(), threads, [&](std::size_t i) {
        ArmGeometry geom;
        const TrialRecord trial = read_trial(dirs[i], geom);
        PreparedTrial p;
        p.prep = preprocess_emg(trial.emg);
        const auto smooth = smooth_positions(trial.positions, kPositionRateHz);
        std::vector<double> theta;
        theta.reserve(smooth.size());
        for (const auto& pose : smooth) {
            theta.push_back(positions_to_angles(pose, geom).elbow_deg);
        }
        p.labels = code_targets(angular_velocity(theta, kPositionRateHz));
        out[i] = std::move(p);
    });
    return out;
}

double own_accuracy_from_prepared(const ExperimentConfig& config, int subject_index,
                                  const std::vector<PreparedTrial>& prepared,
                                  const FeatureConfig& fc) {
    std::vector<TrialFeatures> trials(prepared.size());
    parallel_for(prepared.size(), effective_threads(config.threads), [&](std::size_t i) {
        FeatureStream stream = feature_stream(prepared[i].prep, fc);
        TrialFeatures t;
        t.rows = stream.features.rows;
        t.dim = stream.features.cols;
        t.x = std::move(stream.features.data);
        t.y = align_targets(prepared[i].labels, stream.source_index);
        trials[i] = std::move(t);
    });
    SubjectData data;
    data.trials = std::move(trials);
    data.dim = data.trials.empty() ? 0 : data.trials.front().dim;
    return own_subject_accuracy(config, subject_index, data);
}

} // namespace

void split_trials(std::size_t n_trials, std::uint64_t seed, std::vector<std::size_t>& train,
                  std::vector<std::size_t>& test) {
    if (n_trials == 0 || n_trials % 10 != 0) {
        throw std::invalid_argument("split_trials: trial count must be divisible by 10");
    }
    train.clear();
    test.clear();
    Rng rng(seed);
    for (std::size_t block = 0; block < n_trials / 10; ++block) {
        std::vector<std::size_t> indices(10);
        for (std::size_t i = 0; i < 10; ++i) indices[i] = block * 10 + i;
        rng.shuffle(indices);
        for (std::size_t i = 0; i < 5; ++i) train.push_back(indices[i]);
        for (std::size_t i = 5; i < 10; ++i) test.push_back(indices[i]);
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
}

std::vector<std::vector<int>> other_combinations(int n_subjects, int test_subject, int k) {
    if (k < 1 || k >= n_subjects) {
        throw ConfigError("other_combinations: k must be in 1..n_subjects-1");
    }
    std::vector<int> others;
    for (int s = 0; s < n_subjects; ++s) {
        if (s != test_subject) others.push_back(s);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> pick(static_cast<std::size_t>(k));
    // lexicographic k-combinations over `others`
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int depth) {
        if (depth == k) {
            out.push_back(pick);
            return;
        }
        for (std::size_t i = start; i + static_cast<std::size_t>(k - depth) <= others.size();
             ++i) {
            pick[static_cast<std::size_t>(depth)] = others[i];
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return out;
}

SubjectData compute_subject_data(const ExperimentConfig& config, int subject_index) {
    const int threads = effective_threads(config.threads);
    SubjectData data;
    if (config.data_root.empty()) {
        const auto specs = cohort_specs(config.cohort);
        const auto& spec = specs.at(static_cast<std::size_t>(subject_index));
        data.subject_id = spec.subject_id;
        const auto plan = subject_trial_plan(spec, config.cohort.sessions);
        data.trials.resize(plan.size());
        parallel_for(plan.size(), threads, [&](std::size_t i) {
            data.trials[i] =
                trial_features(generate_trial(spec, plan[i]), kDefaultArm, config.pipeline);
        });
    } else {
        const auto ids = list_subjects(config.data_root);
        data.subject_id = ids.at(static_cast<std::size_t>(subject_index));
        const auto dirs = list_trial_dirs(config.data_root, data.subject_id);
        data.trials.resize(dirs.size());
        parallel_for(dirs.size(), threads, [&](std::size_t i) {
            ArmGeometry geom;
            const TrialRecord trial = read_trial(dirs[i], geom);
            data.trials[i] = trial_features(trial, geom, config.pipeline);
        });
    }
    data.dim = data.trials.empty() ? 0 : data.trials.front().dim;
    return data;
}

RunReport run_own(const ExperimentConfig& config) {
    config.validate();
    RunReport report = base_report(config, "own");
    const std::string suffix = config.shuffle_labels ? "_own_shuffled" : "_own";
    report.groups.push_back(
        own_group(config, normalization_name(config.pipeline.normalization) + suffix));
    if (config.both_normalizations) {
        const ExperimentConfig other = flipped(config);
        report.groups.push_back(
            own_group(other, normalization_name(other.pipeline.normalization) + suffix));
        add_group_comparison(report);
    }
    return report;
}

RunReport run_other(const ExperimentConfig& config) {
    config.validate();
    RunReport report = base_report(config, "other");
    report.groups.push_back(
        other_group(config, normalization_name(config.pipeline.normalization) + "_other"));
    if (config.both_normalizations) {
        const ExperimentConfig other = flipped(config);
        report.groups.push_back(
            other_group(other, normalization_name(other.pipeline.normalization) + "_other"));
        add_group_comparison(report);
    }
    return report;
}

RunReport run_sweep(const ExperimentConfig& config) {
    config.validate();
    RunReport report = base_report(config, "sweep");

    const int n_subjects = config.data_root.empty()
                               ? config.cohort.subjects
                               : static_cast<int>(list_subjects(config.data_root).size());
    const int lengths[5] = {100, 200, 300, 400, 500};

    struct Cell {
        FeatureConfig fc;
        bool ok = true;
        std::vector<double> accs;
    };
    std::vector<Cell> cells;
    for (int ln : lengths) {
        for (int lf : lengths) {
            Cell cell;
            cell.fc = config.pipeline;
            cell.fc.l_norm_ms = ln;
            cell.fc.l_feature_ms = lf;
            try {
                cell.fc.validate();
            } catch (const ConfigError&) {
                cell.ok = false;
            }
            cells.push_back(std::move(cell));
        }
    }

    for (int s = 0; s < n_subjects; ++s) {
        int subject_id = 0;
        const auto prepared = prepare_subject(config, s, subject_id);
        for (auto& cell : cells) {
            if (!cell.ok) continue;
            cell.accs.push_back(own_accuracy_from_prepared(config, s, prepared, cell.fc));
        }
    }

    for (const auto& cell : cells) {
        GridCell out;
        out.l_norm_ms = cell.fc.l_norm_ms;
        out.l_feature_ms = cell.fc.l_feature_ms;
        out.skipped = !cell.ok;
        if (cell.ok) {
            out.mean = mean_of(cell.accs);
            out.sd = sample_sd(cell.accs);
        }
        report.grid.push_back(out);
    }

    const GridCell* best = nullptr;
    for (const auto& cell : report.grid) {
        if (!cell.skipped && (best == nullptr || cell.mean > best->mean)) best = &cell;
    }
    if (best != nullptr) {
        report.notes.push_back("best cell: l_norm_ms=" + std::to_string(best->l_norm_ms) +
                               " l_feature_ms=" + std::to_string(best->l_feature_ms) +
                               " mean=" + std::to_string(best->mean));
    }
    return report;
}

RunReport run_window_funcs(const ExperimentConfig& config) {
    config.validate();
    RunReport report = base_report(config, "window_funcs");

    const int n_subjects = config.data_root.empty()
                               ? config.cohort.subjects
                               : static_cast<int>(list_subjects(config.data_root).size());

    struct Entry {
        std::string label;
        FeatureConfig fc;
        bool ok = true;
        std::vector<SubjectResult> per_subject;
    };
    std::vector<Entry> entries;
    for (WeightingWindowKind kind : all_weighting_kinds()) {
        Entry e;
        e.fc = config.pipeline;
        e.fc.weighting = kind;
        e.fc.dividing = DividingWindowScheme{};
        e.label = "w_" + weighting_name(kind);
        entries.push_back(std::move(e));
    }
    for (DividingKind kind : {DividingKind::Equal, DividingKind::Overlap}) {
        for (int n = 2; n <= 4; ++n) {
            Entry e;
            e.fc = config.pipeline;
            e.fc.weighting = WeightingWindowKind::Flat;
            e.fc.dividing = DividingWindowScheme{kind, n};
            e.label = "d_" + dividing_name(e.fc.dividing);
            entries.push_back(std::move(e));
        }
    }
    for (auto& e : entries) {
        try {
            e.fc.validate();
        } catch (const ConfigError& err) {
            e.ok = false;
            report.notes.push_back("skipped " + e.label + ": " + err.what());
        }
    }

    for (int s = 0; s < n_subjects; ++s) {
        int subject_id = 0;
        const auto prepared = prepare_subject(config, s, subject_id);
        for (auto& e : entries) {
            if (!e.ok) continue;
            const double acc = own_accuracy_from_prepared(config, s, prepared, e.fc);
            e.per_subject.push_back(SubjectResult{subject_id, acc, 1});
        }
    }

    for (auto& e : entries) {
        if (!e.ok) continue;
        GroupResult g;
        g.label = e.label;
        g.per_subject = std::move(e.per_subject);
        g.finalize();
        report.groups.push_back(std::move(g));
    }
    return report;
}

RunReport run_correlation(const ExperimentConfig& config) {
    config.validate();
    RunReport report = base_report(config, "correlation");

    FeatureConfig swn_fc = config.pipeline;
    swn_fc.feature = FeatureKind::Mav;
    swn_fc.weighting = WeightingWindowKind::Flat;
    swn_fc.dividing = DividingWindowScheme{};
    swn_fc.normalization = Normalization::Swn;
    FeatureConfig none_fc = swn_fc;
    none_fc.normalization = Normalization::None;

    const int n_subjects = config.data_root.empty()
                               ? config.cohort.subjects
                               : static_cast<int>(list_subjects(config.data_root).size());

    double sum_swn = 0.0, sum_none = 0.0;
    std::size_t kept = 0;

    for (int s = 0; s < n_subjects; ++s) {
        int subject_id = 0;
        const auto prepared = prepare_subject(config, s, subject_id);
        const std::size_t n_channels = prepared.empty() ? 0 : prepared[0].prep.channel_count();

        // per-channel series pooled over trials, per normalization mode
        std::vector<std::vector<double>> sig_swn(n_channels), mav_swn(n_channels);
        std::vector<std::vector<double>> sig_none(n_channels), mav_none(n_channels);
        std::vector<FeatureStream> streams_swn(prepared.size()), streams_none(prepared.size());
        parallel_for(prepared.size(), effective_threads(config.threads), [&](std::size_t i) {
            streams_swn[i] = feature_stream(prepared[i].prep, swn_fc);
            streams_none[i] = feature_stream(prepared[i].prep, none_fc);
        });
        for (std::size_t i = 0; i < prepared.size(); ++i) {
            for (std::size_t r = 0; r < streams_swn[i].features.rows; ++r) {
                for (std::size_t c = 0; c < n_channels; ++c) {
                    sig_swn[c].push_back(streams_swn[i].window_sigma[r][c]);
                    mav_swn[c].push_back(streams_swn[i].features.at(r, c));
                }
            }
            for (std::size_t r = 0; r < streams_none[i].features.rows; ++r) {
                for (std::size_t c = 0; c < n_channels; ++c) {
                    const double sigma = streams_none[i].window_sigma[r][c];
                    if (!std::isfinite(sigma)) continue; // stats window still filling
                    sig_none[c].push_back(sigma);
                    mav_none[c].push_back(streams_none[i].features.at(r, c));
                }
            }
        }

        for (std::size_t c = 0; c < n_channels; ++c) {
            CorrelationRow row;
            row.subject = subject_id;
            row.channel = static_cast<int>(c + 1);
            row.r_swn = pearson(sig_swn[c], mav_swn[c]);
            row.r_none = pearson(sig_none[c], mav_none[c]);
            if (!std::isfinite(row.r_swn) || !std::isfinite(row.r_none)) {
                row.skipped = true;
                row.r_swn = 0.0;
                row.r_none = 0.0;
                row.note = "degenerate variance";
            } else {
                sum_swn += row.r_swn;
                sum_none += row.r_none;
                ++kept;
            }
            report.correlation.push_back(std::move(row));
        }
    }
    if (kept > 0) {
        report.mean_r_swn = sum_swn / static_cast<double>(kept);
        report.mean_r_none = sum_none / static_cast<double>(kept);
    }
    return report;
}

RunReport run_bench(const ExperimentConfig& config) {
    config.validate();
    RunReport report = base_report(config, "bench");
    report.bench_ticks = config.bench_ticks;

    const int n_channels = kSynthChannels;
    const int raw_per_tick = 40;  // 20 ms at 2000 Hz
    const std::size_t l_norm =
        static_cast<std::size_t>(config.pipeline.l_norm_ms * 500 / 1000);
    const int warmup_ticks = 2 * static_cast<int>(l_norm) / 10 + 10;
    const int total_ticks = warmup_ticks + config.bench_ticks;

    // one shared input stream so both variants do identical signal work
    Rng rng(derive_seed(config.seed, 0xBE7CULL));
    std::vector<std::vector<double>> input(static_cast<std::size_t>(n_channels));
    for (auto& ch : input) {
        ch.resize(static_cast<std::size_t>(total_ticks) * raw_per_tick);
        for (double& v : ch) v = rng.normal() * 0.1;
    }

    auto simulate = [&](bool with_swn) {
        const SosFilter lp = design_butterworth(3, 500.0, 2000.0, FilterKind::Lowpass);
        const SosFilter hp = design_butterworth(3, 30.0, 500.0, FilterKind::Highpass);
        std::vector<SosStream> lp_state, hp_state;
        std::vector<IncrementalWindowStats> stats;
        std::vector<std::vector<double>> ring(static_cast<std::size_t>(n_channels),
                                              std::vector<double>(l_norm, 0.0));
        std::vector<std::size_t> ring_pos(static_cast<std::size_t>(n_channels), 0);
        for (int c = 0; c < n_channels; ++c) {
            lp_state.emplace_back(lp);
            hp_state.emplace_back(hp);
            stats.emplace_back(l_norm);
        }
        std::vector<double> window(l_norm);
        std::vector<double> times_us;
        times_us.reserve(static_cast<std::size_t>(config.bench_ticks));
        std::size_t sample_counter = 0;
        volatile double sink = 0.0; // keep the normalized output observable

        for (int tick = 0; tick < total_ticks; ++tick) {
            const auto t0 = std::chrono::steady_clock::now();
            for (int c = 0; c < n_channels; ++c) {
                const std::size_t ci = static_cast<std::size_t>(c);
                const double* raw = input[ci].data() +
                                    static_cast<std::size_t>(tick) * raw_per_tick;
                for (int i = 0; i < raw_per_tick; ++i) {
                    const double lp_out = lp_state[ci].process(raw[i]);
                    if (i % kPreprocessDecimation != 0) continue;
                    const double sample = hp_state[ci].process(lp_out);
                    if (with_swn) {
                        stats[ci].push(sample);
                    } else {
                        ring[ci][ring_pos[ci]] = sample;
                        ring_pos[ci] = (ring_pos[ci] + 1) % l_norm;
                    }
                }
            }
            // feature-rate window materialization (20 Hz = every 25th sample,
            // 10 new 500 Hz samples per tick)
            if (with_swn) {
                const std::size_t before = sample_counter;
                sample_counter += 10;
                for (std::size_t t = before; t < sample_counter; ++t) {
                    if (t % 25 == 0 && stats[0].full()) {
                        for (int c = 0; c < n_channels; ++c) {
                            stats[static_cast<std::size_t>(c)].normalized_window_into(window);
                            sink = sink + window[l_norm - 1];
                        }
                    }
                }
            } else {
                sample_counter += 10;
            }
            const auto t1 = std::chrono::steady_clock::now();
            if (tick >= warmup_ticks) {
                times_us.push_back(
                    std::chrono::duration<double, std::micro>(t1 - t0).count());
            }
        }
        (void)sink;

        TimingStats out;
        out.mean_us = mean_of(times_us);
        std::vector<double> sorted = times_us;
        std::sort(sorted.begin(), sorted.end());
        out.p95_us = sorted[static_cast<std::size_t>(0.95 * (sorted.size() - 1))];
        out.max_us = sorted.back();
        return out;
    };

    report.bench_swn = simulate(true);
    report.bench_none = simulate(false);
    report.swn_overhead_share =
        (report.bench_swn.mean_us - report.bench_none.mean_us) / report.bench_swn.mean_us;
    report.budget_ms = 20.0;
    report.budget_met = report.bench_swn.max_us < 20000.0 && report.bench_none.max_us < 20000.0;
    return report;
}

std::size_t total_models(const RunReport& report) {
    std::size_t n = 0;
    for (const auto& g : report.groups) {
        for (const auto& s : g.per_subject) n += static_cast<std::size_t>(s.n_models);
    }
    return n;
}

} // namespace emgswn
