// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Each criterion pins its tolerances in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "emgswn/config.hpp"
#include "emgswn/experiment.hpp"
#include "emgswn/features.hpp"
#include "emgswn/kinematics.hpp"
#include "emgswn/logistic.hpp"
#include "emgswn/pipeline.hpp"
#include "emgswn/report.hpp"
#include "emgswn/rng.hpp"
#include "emgswn/sos_filter.hpp"
#include "emgswn/stats.hpp"
#include "emgswn/swn.hpp"
#include "../support/oracles.hpp"

using namespace emgswn;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw Failure(what);
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- 1
void criterion_swn_correctness() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(20240501);
    for (int round = 0; round < 1000; ++round) {
        const std::size_t len = 50 + rng.uniform_int(201);
        std::vector<double> x(len);
        for (double& v : x) v = rng.normal() * rng.uniform(0.1, 4.0) + rng.uniform(-2.0, 2.0);
        const NormalizedWindow w = normalize_window(x);

        double mean = 0.0;
        for (double v : w.values) mean += v;
        mean /= static_cast<double>(len);
        double var = 0.0;
        for (double v : w.values) var += (v - mean) * (v - mean);
        var /= static_cast<double>(len);
        require(std::abs(mean) < 1e-9, "window mean not 0: " + num(mean));
        require(std::abs(std::sqrt(var) - 1.0) < 1e-9, "window std not 1");

        const double k = rng.uniform(0.2, 8.0);
        const double b = rng.uniform(-3.0, 3.0);
        std::vector<double> kx(len);
        for (std::size_t i = 0; i < len; ++i) kx[i] = k * x[i] + b;
        const NormalizedWindow wk = normalize_window(kx);
        for (std::size_t i = 0; i < len; ++i) {
            const double scale = std::max(1.0, std::abs(w.values[i]));
            require(std::abs(wk.values[i] - w.values[i]) / scale < 1e-9,
                    "affine invariance violated");
        }
    }
    require(seconds_since(t0) < 1.0, "runtime above 1 s");
}

// ---------------------------------------------------------------- 2
void criterion_streaming_equals_batch() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t rate = 500;
    const std::size_t n = 60 * rate;
    const std::size_t window = 250;

    Rng rng(60601);
    std::vector<double> signal(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double envelope =
            1.0 + 0.8 * std::sin(2.0 * oracles::kPi * 0.2 * static_cast<double>(i) / rate);
        signal[i] = envelope * rng.normal() + 0.1;
    }

    SlidingWindowBuffer buf(window);
    double max_diff = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        buf.push(signal[t]);
        if (t + 1 < window) continue;
        const NormalizedWindow streaming = buf.swn_window();
        const NormalizedWindow batch =
            normalize_window(std::span<const double>(signal).subspan(t + 1 - window, window));
        for (std::size_t i = 0; i < window; ++i) {
            max_diff = std::max(max_diff, std::abs(streaming.values[i] - batch.values[i]));
        }
    }
    require(max_diff <= 1e-12, "streaming/batch diff " + num(max_diff));
    require(seconds_since(t0) < 5.0, "runtime above 5 s");
}

// ---------------------------------------------------------------- 3
void criterion_filter_fidelity() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Design {
        int order;
        double cutoff, fs;
        FilterKind kind;
    };
    const Design designs[] = {
        {3, 500.0, 2000.0, FilterKind::Lowpass},
        {3, 30.0, 500.0, FilterKind::Highpass},
        {2, 20.0, 500.0, FilterKind::Lowpass},
    };
    for (const auto& d : designs) {
        const SosFilter f = design_butterworth(d.order, d.cutoff, d.fs, d.kind);
        const double lo = std::log10(0.5);
        const double hi = std::log10(0.49 * d.fs);
        for (int i = 0; i < 100; ++i) {
            const double freq = std::pow(10.0, lo + (hi - lo) * i / 99.0);
            const double expected = oracles::butterworth_magnitude(
                d.order, d.cutoff, d.fs, d.kind == FilterKind::Highpass, freq);
            if (expected < 1e-12) continue;
            const double err_db =
                std::abs(20.0 * std::log10(f.magnitude_at(freq) / expected));
            require(err_db < 0.05, "magnitude off by " + num(err_db) + " dB");
        }
    }

    const SosFilter smooth = design_butterworth(2, 20.0, 500.0, FilterKind::Lowpass);
    for (double tone : {2.0, 5.0}) {
        std::vector<double> x(1500);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = std::sin(2.0 * oracles::kPi * tone * static_cast<double>(i) / 500.0);
        }
        const std::vector<double> y = filter_zero_phase(smooth, x);
        require(oracles::cross_correlation_peak_lag(x, y, 40) == 0,
                "zero-phase output lags the input");
    }
    require(seconds_since(t0) < 5.0, "runtime above 5 s");
}

// ---------------------------------------------------------------- 4
void criterion_feature_oracles() {
    const auto t0 = std::chrono::steady_clock::now();
    require(mav(std::vector<double>{1, -1, 2, -2}) == 1.5, "mav hand value");
    require(mwl(std::vector<double>{0, 1, 3}) == 1.5, "mwl hand value");
    require(std::abs(drms(std::vector<double>{0, 1, 3}) - std::sqrt(2.5)) < 1e-15,
            "drms hand value");

    struct Tone {
        double freq;
        int band;
    };
    for (const Tone tone : {Tone{35.0, 0}, Tone{80.0, 1}, Tone{175.0, 2}}) {
        std::vector<double> x(500);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = std::sin(2.0 * oracles::kPi * tone.freq * static_cast<double>(i) / 500.0);
        }
        const BandTriple got = stft_bands(x, 500.0);
        const auto ref = oracles::stft_band_oracle(x, 500.0);
        require(std::abs(got.low - ref.low) < 1e-9, "stft low vs DFT oracle");
        require(std::abs(got.mid - ref.mid) < 1e-9, "stft mid vs DFT oracle");
        require(std::abs(got.hig - ref.hig) < 1e-9, "stft hig vs DFT oracle");
        const double v[3] = {got.low, got.mid, got.hig};
        for (int other = 0; other < 3; ++other) {
            if (other != tone.band) {
                require(v[tone.band] > 5.0 * v[other], "tone concentration ratio <= 5");
            }
        }
    }

    Rng rng(44004);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> x(64);
        for (double& v : x) v = rng.normal();
        const auto got = swt_cd3_sequence(x);
        const auto ref = oracles::swt_cd3_oracle(x);
        for (std::size_t i = 0; i < x.size(); ++i) {
            require(std::abs(got[i] - ref[i]) < 1e-9, "swt cd3 vs convolution oracle");
        }
    }
    require(seconds_since(t0) < 10.0, "runtime above 10 s");
}

// ---------------------------------------------------------------- 5
void criterion_kinematics_roundtrip() {
    const ArmGeometry arm{0.30, 0.28};
    Rng rng(55005);
    for (int i = 0; i < 1000; ++i) {
        const double shoulder = rng.uniform(-80.0, 80.0);
        const double elbow = rng.uniform(1.0, 150.0);
        const PoseSample pose =
            forward_kinematics(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), arm, shoulder,
                               elbow);
        const JointAngles angles = positions_to_angles(pose, arm);
        require(std::abs(angles.shoulder_deg - shoulder) < 1e-6, "shoulder angle drifts");
        require(std::abs(angles.elbow_deg - elbow) < 1e-6, "elbow angle drifts");
    }

    require(code_target(5.0) == TargetLabel::Flexion, "coding: 5 -> flexion");
    require(code_target(-5.0) == TargetLabel::Extension, "coding: -5 -> extension");
    require(code_target(0.0) == TargetLabel::Rest, "coding: 0 -> rest");
    require(code_target(2.0) == TargetLabel::Flexion, "coding: +threshold inclusive");
    require(code_target(-2.0) == TargetLabel::Extension, "coding: -threshold inclusive");
    require(code_target(1.9999) == TargetLabel::Rest, "coding: below threshold");
    require(code_target(-1.9999) == TargetLabel::Rest, "coding: above -threshold");
}

// ---------------------------------------------------------------- 6
void criterion_statistics_oracle() {
    Rng rng(66006);
    for (std::size_t na = 1; na <= 6; ++na) {
        for (std::size_t nb = 1; nb <= 6; ++nb) {
            for (int round = 0; round < 5; ++round) {
                std::vector<double> a(na), b(nb);
                for (double& v : a) v = rng.normal();
                for (double& v : b) v = rng.normal() + 0.5;
                const StatTestResult r = wilcoxon_rank_sum(a, b);
                require(r.exact, "exact path not taken");
                const double ref = oracles::ranksum_exact_bruteforce(na, nb, r.statistic);
                require(std::abs(r.p_value - ref) <= 1e-12,
                        "exact p deviates from enumeration: " + num(r.p_value) + " vs " +
                            num(ref));
            }
        }
    }

    const auto c1 = bonferroni({0.01, 0.02}, 2);
    require(c1[0] == 0.02 && c1[1] == 0.04, "bonferroni scaling");
    require(bonferroni({0.9}, 5)[0] == 1.0, "bonferroni cap");
    require(significance_stars(0.04999) == "*", "star threshold 0.05");
    require(significance_stars(0.05) == "ns", "0.05 itself is not significant");
    require(significance_stars(0.00999) == "**", "star threshold 0.01");
    require(significance_stars(0.01) == "*", "0.01 itself gets a single star");
    require(significance_stars(0.00099) == "***", "star threshold 0.001");
    require(significance_stars(0.001) == "**", "0.001 itself gets two stars");
}

ExperimentConfig cohort_config() {
    ConfigFile file;
    ExperimentConfig config = experiment_from_config(file);
    config.cohort.subjects = 10;
    config.cohort.sessions = 10;
    config.cohort.gain_min = 0.2;
    config.cohort.gain_max = 5.0;
    config.cohort.master_seed = 1;
    config.seed = 42;
    config.pipeline.feature = FeatureKind::Mav;
    config.pipeline.l_norm_ms = 500;
    config.pipeline.l_feature_ms = 500;
    return config;
}

// ---------------------------------------------------------------- 7
void criterion_fig6_direction() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig config = cohort_config();

    ExperimentConfig none = config;
    none.pipeline.normalization = Normalization::None;

    const double swn_own = run_own(config).groups[0].mean;
    const double none_own = run_own(none).groups[0].mean;

    ExperimentConfig other_cfg = config;
    other_cfg.model_type = ModelType::Other;
    other_cfg.n_train_subjects = 9;
    ExperimentConfig other_none = other_cfg;
    other_none.pipeline.normalization = Normalization::None;

    const double swn_other = run_other(other_cfg).groups[0].mean;
    const double none_other = run_other(other_none).groups[0].mean;

    std::printf("         swn_own=%.3f none_own=%.3f swn_other=%.3f none_other=%.3f (%.0f s)\n",
                swn_own, none_own, swn_other, none_other, seconds_since(t0));

    require(swn_own - none_own >= 0.05,
            "SWN_OWN - None_OWN = " + num(swn_own - none_own) + " < 0.05");
    require(swn_other - none_other >= 0.05,
            "SWN_OTHER - None_OTHER = " + num(swn_other - none_other) + " < 0.05");
    require(swn_own - swn_other <= 0.10,
            "SWN_OTHER trails SWN_OWN by " + num(swn_own - swn_other) + " > 0.10");
}

// ---------------------------------------------------------------- 8
void criterion_fig12_direction() {
    ExperimentConfig config = cohort_config();
    config.cohort.sessions = 3;
    const RunReport report = run_correlation(config);
    std::printf("         r_none=%.3f r_swn=%.3f\n", report.mean_r_none, report.mean_r_swn);
    require(report.mean_r_none > 0.7,
            "raw sigma-MAV correlation r = " + num(report.mean_r_none) + " <= 0.7");
    require(std::abs(report.mean_r_swn) < 0.3,
            "normalized sigma-MAV |r| = " + num(std::abs(report.mean_r_swn)) + " >= 0.3");
}

// ---------------------------------------------------------------- 9
void criterion_chance_control() {
    ExperimentConfig config = cohort_config();
    config.cohort.sessions = 5;
    config.shuffle_labels = true;
    const RunReport report = run_own(config);
    const double mean = report.groups[0].mean;
    std::printf("         shuffled-label accuracy=%.4f\n", mean);
    require(std::abs(mean - 1.0 / 3.0) <= 0.03,
            "shuffled-label accuracy " + num(mean) + " outside 0.333 +/- 0.03");
}

// ---------------------------------------------------------------- 10
void criterion_latency() {
    ExperimentConfig config = cohort_config();
    config.bench_ticks = 1500;
    const RunReport report = run_bench(config);
    std::printf("         swn=%.1fus none=%.1fus share=%.1f%% max=%.2fms\n",
                report.bench_swn.mean_us, report.bench_none.mean_us,
                100.0 * report.swn_overhead_share, report.bench_swn.max_us / 1000.0);
    require(report.budget_met, "a tick exceeded the 20 ms budget");
    require(report.bench_swn.mean_us > report.bench_none.mean_us,
            "normalization added no measurable time");
    require(report.swn_overhead_share < 0.5,
            "normalization share " + num(report.swn_overhead_share) + " >= 0.5");
}

// ---------------------------------------------------------------- 11
void criterion_window_function_plumbing() {
    // layout arithmetic
    FeatureConfig fc;
    require(feature_layout(fc, 12).size() == 12, "plain MAV dimension");
    fc.weighting = WeightingWindowKind::UpDownLinear;
    require(feature_layout(fc, 12).size() == 24, "paired weighting doubles components");
    fc.feature = FeatureKind::Stft;
    fc.dividing = {DividingKind::Equal, 2};
    require(feature_layout(fc, 12).size() == 144, "stft x updown x ed2 = 144");
    fc.weighting = WeightingWindowKind::Flat;
    fc.feature = FeatureKind::Swt;
    fc.dividing = {DividingKind::Overlap, 4};
    require(feature_layout(fc, 12).size() == 48, "swt x od4 = 48");

    // the full weighting/dividing grid runs end-to-end for all features
    ExperimentConfig config = cohort_config();
    config.cohort.subjects = 1;
    config.cohort.sessions = 5;
    for (FeatureKind feature : all_feature_kinds()) {
        config.pipeline.feature = feature;
        config.pipeline.l_feature_ms = 500;
        const RunReport report = run_window_funcs(config);
        require(report.groups.size() == 16,
                feature_name(feature) + ": expected 16 runnable window configurations");
        for (const auto& g : report.groups) {
            require(g.per_subject.size() == 1, "missing subject result in " + g.label);
            require(g.mean >= 0.0 && g.mean <= 1.0, "accuracy out of range in " + g.label);
        }
    }

    // short feature windows make some divided configurations infeasible;
    // they must be skipped, not crash
    config.pipeline.feature = FeatureKind::Stft;
    config.pipeline.l_feature_ms = 200;
    const RunReport skipping = run_window_funcs(config);
    require(skipping.groups.size() < 16, "expected skipped stft configurations at 200 ms");
    require(!skipping.notes.empty(), "skip notes missing");
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void()> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "SWN correctness (mean 0, std 1, affine invariance)", criterion_swn_correctness},
        {2, "streaming equals batch normalization", criterion_streaming_equals_batch},
        {3, "Butterworth fidelity and zero-phase alignment", criterion_filter_fidelity},
        {4, "feature extractors match their oracles", criterion_feature_oracles},
        {5, "kinematics round trip and target coding", criterion_kinematics_roundtrip},
        {6, "rank-sum exact path and correction rules", criterion_statistics_oracle},
        {7, "normalization direction, OWN and OTHER", criterion_fig6_direction},
        {8, "sigma-feature correlation direction", criterion_fig12_direction},
        {9, "shuffled labels sit at chance level", criterion_chance_control},
        {10, "per-tick latency budget and overhead share", criterion_latency},
        {11, "window-function dimensions and full grid", criterion_window_function_plumbing},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.fn();
            std::printf("[PASS] criterion %2d: %s (%.1f s)\n", c.id, c.name, seconds_since(t0));
        } catch (const std::exception& e) {
            std::printf("[FAIL] criterion %2d: %s -- %s\n", c.id, c.name, e.what());
            ++failed;
        }
        std::fflush(stdout);
    }
    if (failed > 0) {
        std::printf("%d criterion(s) failed\n", failed);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
