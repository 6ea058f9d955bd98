#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "emgswn/signal.hpp"
#include "emgswn/window_functions.hpp"

namespace emgswn {

enum class Normalization { Swn, None };
enum class FeatureKind { Mav, Mwl, Drms, Stft, Swt };

std::string normalization_name(Normalization n);
Normalization normalization_from_name(const std::string& name);
std::string feature_name(FeatureKind f);
FeatureKind feature_from_name(const std::string& name);
const std::vector<FeatureKind>& all_feature_kinds();

/// Pipeline settings for turning a preprocessed 500 Hz signal into feature
/// rows at 20 Hz. Window lengths come in 100 ms steps between 100 and 500.
struct FeatureConfig {
    Normalization normalization = Normalization::Swn;
    int l_norm_ms = 500;
    int l_feature_ms = 500;
    FeatureKind feature = FeatureKind::Mav;
    WeightingWindowKind weighting = WeightingWindowKind::Flat;
    DividingWindowScheme dividing{};

    /// Throws ConfigError when the combination cannot run (window lengths
    /// outside the grid, STFT/SWT blocks too short, divided length <= 100 ms
    /// for the frequency features).
    void validate(double sample_rate_hz = 500.0, std::size_t n_channels = 12) const;
};

/// Values STFT/SWT need per divided block: over 100 ms of signal, and at
/// least one STFT segment / the SWT minimum length.
bool dividing_supports_feature(const FeatureConfig& config, double sample_rate_hz);

/// Component names per (channel, block, weighting member, feature part),
/// e.g. "ch01.d2.up_linear.low". Stable for a fixed config.
std::vector<std::string> feature_layout(const FeatureConfig& config, std::size_t n_channels,
                                        double sample_rate_hz = 500.0);

struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // row-major
    std::vector<std::string> layout;
    double rate_hz = 20.0;

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// One feature row per 20 Hz step plus alignment and analysis side data.
struct FeatureStream {
    FeatureMatrix features;
    /// 500 Hz sample index that generated each row.
    std::vector<std::size_t> source_index;
    /// Raw-window standard deviation per row and channel (the sigma the
    /// normalizer divides by); NaN while the stats window is filling.
    std::vector<std::vector<double>> window_sigma;
};

inline constexpr int kFeatureDecimation = 25; // 500 Hz -> 20 Hz
inline constexpr double kPipelineRateHz = 500.0;

/// Runs normalization, window functions and the selected feature over a
/// preprocessed 500 Hz signal. At each emitted step the trailing feature
/// window is mapped through the current normalization-window statistics,
/// then divided/weighted and reduced to feature components. Rows start
/// after max(L_norm, L_feature) samples under SWN and after L_feature
/// samples under None (where the feature output cannot depend on L_norm),
/// and are decimated keep-first to 20 Hz.
FeatureStream feature_stream(const MultiChannelSignal& signal, const FeatureConfig& config);

/// The fixed conditioning chain for raw 2000 Hz recordings: 3rd-order
/// 500 Hz lowpass, decimation by 4, 3rd-order 30 Hz highpass. Note the
/// lowpass sits at the post-decimation Nyquist, so 250-500 Hz content is
/// only attenuated by the filter skirt before subsampling.
MultiChannelSignal preprocess_emg(const MultiChannelSignal& raw);

inline constexpr double kAcquisitionRateHz = 2000.0;
inline constexpr int kPreprocessDecimation = 4;

} // namespace emgswn
