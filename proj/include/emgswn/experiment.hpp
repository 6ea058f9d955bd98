#pragma once

#include <cstdint>
#include <vector>

#include "emgswn/config.hpp"
#include "emgswn/kinematics.hpp"
#include "emgswn/report.hpp"

namespace emgswn {

/// Feature rows + aligned labels of one trial.
struct TrialFeatures {
    std::vector<double> x; // rows x dim, row-major
    std::vector<TargetLabel> y;
    std::vector<std::vector<double>> sigma; // per row, per channel
    std::size_t rows = 0;
    std::size_t dim = 0;
};

struct SubjectData {
    int subject_id = 0;
    std::vector<TrialFeatures> trials;
    std::size_t dim = 0;
};

/// Within every block of 10 consecutive trials, 5 go to each side.
/// Trial count must be divisible by 10.
void split_trials(std::size_t n_trials, std::uint64_t seed, std::vector<std::size_t>& train,
                  std::vector<std::size_t>& test);

/// Training sets evaluated against one test subject: all combinations of
/// k companions out of the remaining subjects, in lexicographic order.
std::vector<std::vector<int>> other_combinations(int n_subjects, int test_subject, int k);

/// Feature rows for one subject, streaming trials from the synthetic
/// generator or from data_root. Trials parallelize across `threads`.
SubjectData compute_subject_data(const ExperimentConfig& config, int subject_index);

RunReport run_own(const ExperimentConfig& config);
RunReport run_other(const ExperimentConfig& config);

/// 5x5 grid over (L_norm, L_feature); cells whose configuration cannot run
/// (short STFT/SWT windows) are marked skipped.
RunReport run_sweep(const ExperimentConfig& config);

/// OWN accuracy for the ten weighting kinds (undivided) and the six
/// dividing schemes (flat weighting); infeasible combinations are skipped
/// with a note.
RunReport run_window_funcs(const ExperimentConfig& config);

/// Per channel and subject, the correlation between the raw-window sigma
/// and the MAV feature, under SWN and under None.
RunReport run_correlation(const ExperimentConfig& config);

/// Simulated 50 Hz live loop: each tick ingests 20 ms of raw samples and
/// runs preprocessing plus normalization. Single-threaded by design.
RunReport run_bench(const ExperimentConfig& config);

/// Total distinct trained models for a report (diagnostics).
std::size_t total_models(const RunReport& report);

} // namespace emgswn
