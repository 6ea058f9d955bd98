#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "emgswn/kinematics.hpp"
#include "emgswn/pipeline.hpp"
#include "emgswn/signal.hpp"
#include "emgswn/synth.hpp"

namespace emgswn {

// ----- CSV -----

/// emg.csv: header "t,ch01,..", t in seconds.
void write_signal_csv(const std::filesystem::path& path, const MultiChannelSignal& signal);
MultiChannelSignal read_signal_csv(const std::filesystem::path& path, double sample_rate_hz);

/// positions.csv: t,hand_x,hand_y,elbow_x,elbow_y,shoulder_x,shoulder_y.
void write_positions_csv(const std::filesystem::path& path,
                         const std::vector<PoseSample>& track, double sample_rate_hz);
std::vector<PoseSample> read_positions_csv(const std::filesystem::path& path);

/// Feature table as CSV: header is the layout descriptor, one row per step.
void write_features_csv(const std::filesystem::path& path, const FeatureMatrix& features);
FeatureMatrix read_features_csv(const std::filesystem::path& path, double rate_hz = 20.0);

/// Compact binary table: row-major little-endian float64 plus a JSON
/// sidecar (<path>.json) carrying rows/cols/layout/rate.
void write_features_binary(const std::filesystem::path& path, const FeatureMatrix& features);
FeatureMatrix read_features_binary(const std::filesystem::path& path);

// ----- dataset directory layout -----
// <root>/subject_<id>/session_<k>/trial_<j>/{emg.csv, positions.csv, meta.json}

std::filesystem::path trial_dir(const std::filesystem::path& root, int subject, int session,
                                int trial);

void write_trial(const std::filesystem::path& dir, const TrialRecord& trial,
                 const ArmGeometry& geom);
TrialRecord read_trial(const std::filesystem::path& dir, ArmGeometry& geom_out);

/// Writes a whole subject; sessions trials stream straight to disk.
void write_subject_dataset(const std::filesystem::path& root, const SyntheticSubjectSpec& spec,
                           int sessions);

/// Subject ids found under a dataset root (sorted).
std::vector<int> list_subjects(const std::filesystem::path& root);

/// Trial directories of one subject in (session, trial) order.
std::vector<std::filesystem::path> list_trial_dirs(const std::filesystem::path& root,
                                                   int subject);

} // namespace emgswn
