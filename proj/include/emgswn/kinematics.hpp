#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace emgswn {

struct ArmGeometry {
    double upper_arm_m = 0.0;
    double forearm_m = 0.0;
};

/// Planar marker positions (meters) for one 500 Hz sample.
struct PoseSample {
    double hand_x = 0, hand_y = 0;
    double elbow_x = 0, elbow_y = 0;
    double shoulder_x = 0, shoulder_y = 0;
};

struct JointAngles {
    double shoulder_deg = 0.0;
    /// 0 = fully extended; positive = flexion.
    double elbow_deg = 0.0;
};

enum class TargetLabel { Rest, Flexion, Extension };

inline constexpr double kTargetVelocityThreshold = 2.0; // deg/s

const char* label_name(TargetLabel label);
TargetLabel label_from_name(const std::string& name);

/// Zero-phase 2nd-order 20 Hz Butterworth lowpass per coordinate.
/// Needs more than 12 samples.
std::vector<PoseSample> smooth_positions(const std::vector<PoseSample>& track,
                                         double sample_rate_hz);

/// Two-link planar inverse kinematics from hand/shoulder positions.
/// Throws std::domain_error for unreachable poses.
JointAngles positions_to_angles(const PoseSample& pose, const ArmGeometry& geom);

/// Companion forward model: elbow at shoulder + L1*e(theta_sld); hand at
/// elbow + L2*e(theta_sld + theta_elb). Angles in degrees.
PoseSample forward_kinematics(double shoulder_x, double shoulder_y, const ArmGeometry& geom,
                              double shoulder_deg, double elbow_deg);

/// Forward difference scaled by the sample rate; the final sample
/// replicates the previous velocity so the series keeps its length.
std::vector<double> angular_velocity(std::span<const double> theta_deg, double sample_rate_hz);

/// Eq-style 3-class coding: flexion when velocity >= +2 deg/s, extension
/// when <= -2 deg/s, rest otherwise. Non-finite input throws.
TargetLabel code_target(double velocity_deg_s);
std::vector<TargetLabel> code_targets(std::span<const double> velocity_deg_s);

/// Picks the label at each feature row's generating source index.
std::vector<TargetLabel> align_targets(const std::vector<TargetLabel>& labels,
                                       const std::vector<std::size_t>& row_source_indices);

} // namespace emgswn
