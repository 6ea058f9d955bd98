#include "emgswn/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "emgswn/rng.hpp"
#include "emgswn/sos_filter.hpp"

namespace emgswn {

namespace {

struct MinJerk {
    double theta_start = 0.0;
    double theta_end = 0.0;
    double onset_s = kPreRestSeconds;
    double duration_s = 1.5;

    double angle(double t) const {
        if (t <= onset_s) return theta_start;
        const double tau = (t - onset_s) / duration_s;
        if (tau >= 1.0) return theta_end;
        const double s = tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau));
        return theta_start + (theta_end - theta_start) * s;
    }

    double velocity(double t) const {
        if (t <= onset_s) return 0.0;
        const double tau = (t - onset_s) / duration_s;
        if (tau >= 1.0) return 0.0;
        const double ds = 30.0 * tau * tau * (1.0 + tau * (-2.0 + tau));
        return (theta_end - theta_start) / duration_s * ds;
    }
};

std::vector<double> band_limited_noise(Rng& rng, std::size_t n, const SosFilter& highpass,
                                       const SosFilter& lowpass) {
    std::vector<double> x(n);
    for (double& v : x) v = rng.normal();
    SosStream hp(highpass);
    hp.process(x, x);
    SosStream lp(lowpass);
    lp.process(x, x);
    return x;
}

TrialRecord make_trial(const SyntheticSubjectSpec& spec, int session, int trial_in_session,
                       int movement_id, double drift, const SosFilter& noise_hp,
                       const SosFilter& noise_lp) {
    const auto [start_point, end_point] = movement_points(movement_id);

    Rng rng(derive_seed(derive_seed(spec.seed, static_cast<std::uint64_t>(session)),
                        static_cast<std::uint64_t>(trial_in_session)));

    MinJerk traj;
    traj.theta_start = kPointAnglesDeg[static_cast<std::size_t>(start_point)];
    traj.theta_end = kPointAnglesDeg[static_cast<std::size_t>(end_point)];
    traj.duration_s = rng.uniform(1.2, 2.0); // always completes inside the task window

    TrialRecord trial;
    trial.movement_id = movement_id;
    trial.session_id = session;
    trial.trial_in_session = trial_in_session;
    trial.gain_drift = drift;

    const std::size_t n_pos = static_cast<std::size_t>(std::lround(kTrialSeconds * kPositionRateHz));
    trial.positions.reserve(n_pos);
    for (std::size_t i = 0; i < n_pos; ++i) {
        const double t = static_cast<double>(i) / kPositionRateHz;
        trial.positions.push_back(
            forward_kinematics(0.0, 0.0, kDefaultArm, kShoulderAngleDeg, traj.angle(t)));
    }

    const std::size_t n_emg = static_cast<std::size_t>(std::lround(kTrialSeconds * kEmgRateHz));
    trial.emg.sample_rate_hz = kEmgRateHz;
    trial.emg.channels.assign(kSynthChannels, std::vector<double>(n_emg));
    for (int ch = 0; ch < kSynthChannels; ++ch) {
        const std::vector<double> band = band_limited_noise(rng, n_emg, noise_hp, noise_lp);
        const double gain = spec.channel_gains[static_cast<std::size_t>(ch)] * drift;
        const ChannelActivation& act = spec.activation[static_cast<std::size_t>(ch)];
        std::vector<double>& out = trial.emg.channels[static_cast<std::size_t>(ch)];
        for (std::size_t i = 0; i < n_emg; ++i) {
            const double t = static_cast<double>(i) / kEmgRateHz;
            const double vel = traj.velocity(t);
            const double envelope = spec.tonic +
                                    act.flexor * std::max(vel, 0.0) / spec.velocity_ref_deg_s +
                                    act.extensor * std::max(-vel, 0.0) / spec.velocity_ref_deg_s;
            out[i] = gain * envelope * band[i] + spec.noise_floor * rng.normal();
        }
    }
    return trial;
}

} // namespace

void SyntheticSubjectSpec::validate() const {
    if (channel_gains.size() != kSynthChannels || activation.size() != kSynthChannels) {
        throw std::invalid_argument("subject spec: needs 12 channel gains and activations");
    }
    bool has_flexor = false, has_extensor = false;
    for (int ch = 0; ch < kSynthChannels; ++ch) {
        if (channel_gains[static_cast<std::size_t>(ch)] <= 0.0) {
            throw std::invalid_argument("subject spec: channel gains must be > 0");
        }
        const auto& act = activation[static_cast<std::size_t>(ch)];
        if (act.flexor < 0.0 || act.flexor > 1.0 || act.extensor < 0.0 || act.extensor > 1.0) {
            throw std::invalid_argument("subject spec: activation weights must be in [0, 1]");
        }
        has_flexor = has_flexor || act.flexor > 0.0;
        has_extensor = has_extensor || act.extensor > 0.0;
    }
    if (!has_flexor || !has_extensor) {
        throw std::invalid_argument("subject spec: need a flexor- and an extensor-weighted channel");
    }
    if (noise_floor < 0.0 || velocity_ref_deg_s <= 0.0 || gain_drift_sigma < 0.0 ||
        gain_drift_rho < 0.0 || gain_drift_rho >= 1.0) {
        throw std::invalid_argument("subject spec: invalid noise/drift parameters");
    }
}

SyntheticSubjectSpec SyntheticSubjectSpec::defaults(int subject_id, double gain_scale,
                                                    std::uint64_t seed) {
    if (gain_scale <= 0.0) {
        throw std::invalid_argument("subject spec: gain scale must be > 0");
    }
    // 4x biceps, brachialis, brachioradialis / anconeus, 2x2 triceps / ECRL
    static const std::array<ChannelActivation, kSynthChannels> kActivation = {{
        {1.00, 0.05}, {0.95, 0.05}, {1.00, 0.05}, {0.90, 0.05},
        {0.90, 0.05}, {0.80, 0.10},
        {0.10, 0.70},
        {0.05, 1.00}, {0.05, 0.95}, {0.05, 1.00}, {0.05, 0.90},
        {0.35, 0.35},
    }};
    static const std::array<double, kSynthChannels> kBaseGain = {
        1.00, 0.95, 1.05, 0.90, 1.10, 1.00, 0.95, 1.05, 1.00, 0.90, 1.10, 1.00};

    SyntheticSubjectSpec spec;
    spec.subject_id = subject_id;
    spec.seed = seed;
    spec.channel_gains.resize(kSynthChannels);
    spec.activation.assign(kActivation.begin(), kActivation.end());
    for (int ch = 0; ch < kSynthChannels; ++ch) {
        spec.channel_gains[static_cast<std::size_t>(ch)] =
            gain_scale * kBaseGain[static_cast<std::size_t>(ch)];
    }
    return spec;
}

std::pair<int, int> movement_points(int movement_id) {
    if (movement_id < 0 || movement_id >= kMovementsPerSession) {
        throw std::invalid_argument("movement_points: id must be in 0..11");
    }
    const int start = movement_id / 3;
    int end = movement_id % 3;
    if (end >= start) ++end;
    return {start, end};
}

std::vector<TrialPlan> subject_trial_plan(const SyntheticSubjectSpec& spec, int sessions) {
    spec.validate();
    if (sessions < 1) {
        throw std::invalid_argument("subject_trial_plan: sessions must be >= 1");
    }

    // slow per-trial amplitude drift: stationary AR(1) in the log domain
    Rng drift_rng(derive_seed(spec.seed, 0xD21F7ULL));
    const double rho = spec.gain_drift_rho;
    const double step_sd = spec.gain_drift_sigma * std::sqrt(1.0 - rho * rho);
    double log_drift = spec.gain_drift_sigma * drift_rng.normal();

    std::vector<TrialPlan> plan;
    plan.reserve(static_cast<std::size_t>(sessions) * kTrialsPerSession);
    for (int session = 1; session <= sessions; ++session) {
        // 12 movements x 3 repeats, order re-drawn per session
        std::vector<int> schedule;
        schedule.reserve(kTrialsPerSession);
        for (int rep = 0; rep < 3; ++rep) {
            for (int m = 0; m < kMovementsPerSession; ++m) schedule.push_back(m);
        }
        Rng order_rng(derive_seed(derive_seed(spec.seed, 0x5E55ULL),
                                  static_cast<std::uint64_t>(session)));
        order_rng.shuffle(schedule);

        for (int trial = 0; trial < kTrialsPerSession; ++trial) {
            plan.push_back(TrialPlan{session, trial, schedule[static_cast<std::size_t>(trial)],
                                     std::exp(log_drift)});
            log_drift = rho * log_drift + step_sd * drift_rng.normal();
        }
    }
    return plan;
}

TrialRecord generate_trial(const SyntheticSubjectSpec& spec, const TrialPlan& plan) {
    const SosFilter noise_hp = design_butterworth(4, 20.0, kEmgRateHz, FilterKind::Highpass);
    const SosFilter noise_lp = design_butterworth(4, 450.0, kEmgRateHz, FilterKind::Lowpass);
    return make_trial(spec, plan.session, plan.trial_in_session, plan.movement_id, plan.drift,
                      noise_hp, noise_lp);
}

void for_each_trial(const SyntheticSubjectSpec& spec, int sessions,
                    const std::function<void(TrialRecord&&)>& fn) {
    const SosFilter noise_hp = design_butterworth(4, 20.0, kEmgRateHz, FilterKind::Highpass);
    const SosFilter noise_lp = design_butterworth(4, 450.0, kEmgRateHz, FilterKind::Lowpass);
    for (const TrialPlan& plan : subject_trial_plan(spec, sessions)) {
        fn(make_trial(spec, plan.session, plan.trial_in_session, plan.movement_id, plan.drift,
                      noise_hp, noise_lp));
    }
}

std::vector<TrialRecord> generate_subject(const SyntheticSubjectSpec& spec, int sessions) {
    std::vector<TrialRecord> out;
    out.reserve(static_cast<std::size_t>(sessions) * kTrialsPerSession);
    for_each_trial(spec, sessions, [&](TrialRecord&& t) { out.push_back(std::move(t)); });
    return out;
}

std::vector<SyntheticSubjectSpec> cohort_specs(const CohortSpec& cohort) {
    if (cohort.subjects < 1) {
        throw std::invalid_argument("cohort: subjects must be >= 1");
    }
    if (cohort.gain_min <= 0.0 || cohort.gain_max < cohort.gain_min) {
        throw std::invalid_argument("cohort: gain spread must satisfy 0 < min <= max");
    }
    std::vector<SyntheticSubjectSpec> specs;
    specs.reserve(static_cast<std::size_t>(cohort.subjects));
    for (int i = 0; i < cohort.subjects; ++i) {
        Rng rng(derive_seed(cohort.master_seed, 0xA110C + static_cast<std::uint64_t>(i)));
        const double scale = rng.log_uniform(cohort.gain_min, cohort.gain_max);
        specs.push_back(SyntheticSubjectSpec::defaults(
            i + 1, scale, derive_seed(cohort.master_seed, 0x5EED + static_cast<std::uint64_t>(i))));
    }
    return specs;
}

} // namespace emgswn
