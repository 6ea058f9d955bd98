#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "emgswn/kinematics.hpp"
#include "emgswn/signal.hpp"

namespace emgswn {

inline constexpr int kSynthChannels = 12;
inline constexpr int kTrialsPerSession = 36; // 12 ordered point pairs x 3
inline constexpr int kMovementsPerSession = 12;
inline constexpr double kPreRestSeconds = 2.0;
inline constexpr double kTaskSeconds = 2.5;
inline constexpr double kPostRestSeconds = 0.1;
inline constexpr double kTrialSeconds = kPreRestSeconds + kTaskSeconds + kPostRestSeconds;
inline constexpr double kEmgRateHz = 2000.0;
inline constexpr double kPositionRateHz = 500.0;

/// Elbow angles of the four protocol points; every ordered pair of
/// distinct points is one movement id (0..11).
inline constexpr std::array<double, 4> kPointAnglesDeg = {30.0, 60.0, 90.0, 120.0};
inline constexpr double kShoulderAngleDeg = 45.0;
inline constexpr ArmGeometry kDefaultArm{0.30, 0.28};

struct ChannelActivation {
    double flexor = 0.0;
    double extensor = 0.0;
};

/// Per-subject signal model. Channel amplitude is the only intended
/// between-subject difference; a slow per-trial gain drift (log-domain
/// AR(1)) models the within-session electrode and fatigue variability that
/// amplitude-sensitive features are exposed to.
struct SyntheticSubjectSpec {
    int subject_id = 0;
    std::vector<double> channel_gains;          // 12 positive values
    std::vector<ChannelActivation> activation;  // 12 entries
    double noise_floor = 0.02;                  // volts of white sensor noise
    double tonic = 0.002;                       // resting muscle tone
    double velocity_ref_deg_s = 100.0;          // envelope scale
    double gain_drift_sigma = 0.40;             // stationary log-sd of drift
    double gain_drift_rho = 0.97;               // per-trial AR(1) coefficient
    std::uint64_t seed = 0;

    void validate() const;

    /// Shared activation structure scaled per subject.
    static SyntheticSubjectSpec defaults(int subject_id, double gain_scale, std::uint64_t seed);
};

struct TrialRecord {
    MultiChannelSignal emg;                     // 2000 Hz, 12 channels
    std::vector<PoseSample> positions;          // 500 Hz
    int movement_id = 0;                        // 0..11
    int session_id = 0;                         // 1-based
    int trial_in_session = 0;                   // 0..35
    double gain_drift = 1.0;                    // realized per-trial factor
};

/// (start, end) point indices for a movement id.
std::pair<int, int> movement_points(int movement_id);

/// Session schedule plus the realized drift factor per trial. Cheap to
/// compute; lets callers build any single trial independently.
struct TrialPlan {
    int session = 0;
    int trial_in_session = 0;
    int movement_id = 0;
    double drift = 1.0;
};

std::vector<TrialPlan> subject_trial_plan(const SyntheticSubjectSpec& spec, int sessions);

/// Builds one trial; depends only on (spec, plan entry), so plans can be
/// generated in parallel and in any order.
TrialRecord generate_trial(const SyntheticSubjectSpec& spec, const TrialPlan& plan);

/// Streams trials in session order with O(1) memory.
void for_each_trial(const SyntheticSubjectSpec& spec, int sessions,
                    const std::function<void(TrialRecord&&)>& fn);

std::vector<TrialRecord> generate_subject(const SyntheticSubjectSpec& spec, int sessions = 10);

struct CohortSpec {
    int subjects = 10;
    int sessions = 10;
    double gain_min = 0.2;
    double gain_max = 5.0;
    std::uint64_t master_seed = 1;
};

/// Per-subject specs with log-uniform amplitude scales and identical
/// activation structure.
std::vector<SyntheticSubjectSpec> cohort_specs(const CohortSpec& cohort);

} // namespace emgswn
