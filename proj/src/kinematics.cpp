#include "emgswn/kinematics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "emgswn/sos_filter.hpp"

namespace emgswn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kDegPerRad = 180.0 / kPi;
constexpr double kReachTolerance = 1e-9;

double sqrt_clamped(double v) {
    if (v < -kReachTolerance) {
        throw std::domain_error("positions_to_angles: pose outside the reachable workspace");
    }
    return std::sqrt(v > 0.0 ? v : 0.0);
}

} // namespace

const char* label_name(TargetLabel label) {
    switch (label) {
    case TargetLabel::Rest: return "rest";
    case TargetLabel::Flexion: return "flexion";
    case TargetLabel::Extension: return "extension";
    }
    return "rest";
}

TargetLabel label_from_name(const std::string& name) {
    if (name == "rest") return TargetLabel::Rest;
    if (name == "flexion") return TargetLabel::Flexion;
    if (name == "extension") return TargetLabel::Extension;
    throw std::invalid_argument("unknown target label: " + name);
}

std::vector<PoseSample> smooth_positions(const std::vector<PoseSample>& track,
                                         double sample_rate_hz) {
    const SosFilter filter = design_butterworth(2, 20.0, sample_rate_hz, FilterKind::Lowpass);
    if (track.size() <= 12) {
        throw std::invalid_argument("smooth_positions: track too short (needs > 12 samples)");
    }

    MultiChannelSignal coords;
    coords.sample_rate_hz = sample_rate_hz;
    coords.channels.assign(6, std::vector<double>(track.size()));
    for (std::size_t i = 0; i < track.size(); ++i) {
        coords.channels[0][i] = track[i].hand_x;
        coords.channels[1][i] = track[i].hand_y;
        coords.channels[2][i] = track[i].elbow_x;
        coords.channels[3][i] = track[i].elbow_y;
        coords.channels[4][i] = track[i].shoulder_x;
        coords.channels[5][i] = track[i].shoulder_y;
    }
    coords = filter_zero_phase(filter, coords);

    std::vector<PoseSample> out(track.size());
    for (std::size_t i = 0; i < track.size(); ++i) {
        out[i].hand_x = coords.channels[0][i];
        out[i].hand_y = coords.channels[1][i];
        out[i].elbow_x = coords.channels[2][i];
        out[i].elbow_y = coords.channels[3][i];
        out[i].shoulder_x = coords.channels[4][i];
        out[i].shoulder_y = coords.channels[5][i];
    }
    return out;
}

JointAngles positions_to_angles(const PoseSample& pose, const ArmGeometry& geom) {
    if (geom.upper_arm_m <= 0.0 || geom.forearm_m <= 0.0) {
        throw std::invalid_argument("positions_to_angles: segment lengths must be > 0");
    }
    const double a = pose.hand_y - pose.shoulder_y;
    const double b = pose.hand_x - pose.shoulder_x;
    const double rr = a * a + b * b;
    const double r = std::sqrt(rr);
    const double l1 = geom.upper_arm_m;
    const double l2 = geom.forearm_m;

    if (r > l1 + l2 + kReachTolerance || r < std::abs(l1 - l2) - kReachTolerance) {
        throw std::domain_error("positions_to_angles: target distance outside [|L1-L2|, L1+L2]");
    }

    const double c = (rr + l1 * l1 - l2 * l2) / (2.0 * l1);
    const double d = (rr - l1 * l1 + l2 * l2) / (2.0 * l2);

    const double alpha = std::atan2(sqrt_clamped(rr - c * c), c);
    const double beta = std::atan2(sqrt_clamped(rr - d * d), d);
    const double phi = std::atan2(a, b);

    JointAngles out;
    out.shoulder_deg = (phi - alpha) * kDegPerRad;
    out.elbow_deg = (alpha + beta) * kDegPerRad;
    return out;
}

PoseSample forward_kinematics(double shoulder_x, double shoulder_y, const ArmGeometry& geom,
                              double shoulder_deg, double elbow_deg) {
    const double ts = shoulder_deg / kDegPerRad;
    const double te = elbow_deg / kDegPerRad;
    PoseSample p;
    p.shoulder_x = shoulder_x;
    p.shoulder_y = shoulder_y;
    p.elbow_x = shoulder_x + geom.upper_arm_m * std::cos(ts);
    p.elbow_y = shoulder_y + geom.upper_arm_m * std::sin(ts);
    p.hand_x = p.elbow_x + geom.forearm_m * std::cos(ts + te);
    p.hand_y = p.elbow_y + geom.forearm_m * std::sin(ts + te);
    return p;
}

std::vector<double> angular_velocity(std::span<const double> theta_deg, double sample_rate_hz) {
    if (theta_deg.size() < 2) {
        throw std::invalid_argument("angular_velocity: needs at least 2 samples");
    }
    std::vector<double> out(theta_deg.size());
    for (std::size_t i = 0; i + 1 < theta_deg.size(); ++i) {
        out[i] = (theta_deg[i + 1] - theta_deg[i]) * sample_rate_hz;
    }
    out.back() = out[out.size() - 2];
    return out;
}

TargetLabel code_target(double velocity_deg_s) {
    if (!std::isfinite(velocity_deg_s)) {
        throw std::invalid_argument("code_target: velocity must be finite");
    }
    if (velocity_deg_s >= kTargetVelocityThreshold) return TargetLabel::Flexion;
    if (velocity_deg_s <= -kTargetVelocityThreshold) return TargetLabel::Extension;
    return TargetLabel::Rest;
}

std::vector<TargetLabel> code_targets(std::span<const double> velocity_deg_s) {
    std::vector<TargetLabel> out;
    out.reserve(velocity_deg_s.size());
    for (double v : velocity_deg_s) out.push_back(code_target(v));
    return out;
}

std::vector<TargetLabel> align_targets(const std::vector<TargetLabel>& labels,
                                       const std::vector<std::size_t>& row_source_indices) {
    std::vector<TargetLabel> out;
    out.reserve(row_source_indices.size());
    for (std::size_t idx : row_source_indices) {
        if (idx >= labels.size()) {
            throw std::invalid_argument("align_targets: feature timeline exceeds target series");
        }
        out.push_back(labels[idx]);
    }
    return out;
}

} // namespace emgswn
