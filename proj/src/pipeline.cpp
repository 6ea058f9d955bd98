#include "emgswn/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "emgswn/errors.hpp"
#include "emgswn/features.hpp"
#include "emgswn/sos_filter.hpp"
#include "emgswn/swn.hpp"

namespace emgswn {

std::string normalization_name(Normalization n) {
    return n == Normalization::Swn ? "swn" : "none";
}

Normalization normalization_from_name(const std::string& name) {
    if (name == "swn") return Normalization::Swn;
    if (name == "none") return Normalization::None;
    throw ConfigError("unknown normalization: " + name);
}

std::string feature_name(FeatureKind f) {
    switch (f) {
    case FeatureKind::Mav: return "mav";
    case FeatureKind::Mwl: return "mwl";
    case FeatureKind::Drms: return "drms";
    case FeatureKind::Stft: return "stft";
    case FeatureKind::Swt: return "swt";
    }
    return "mav";
}

const std::vector<FeatureKind>& all_feature_kinds() {
    static const std::vector<FeatureKind> kinds = {
        FeatureKind::Mav, FeatureKind::Mwl, FeatureKind::Drms,
        FeatureKind::Stft, FeatureKind::Swt};
    return kinds;
}

FeatureKind feature_from_name(const std::string& name) {
    for (FeatureKind f : all_feature_kinds()) {
        if (feature_name(f) == name) return f;
    }
    throw ConfigError("unknown feature: " + name);
}

namespace {

int window_samples(int ms, double rate_hz) {
    return static_cast<int>(std::lround(ms * rate_hz / 1000.0));
}

bool valid_window_ms(int ms) {
    return ms >= 100 && ms <= 500 && ms % 100 == 0;
}

std::size_t block_length(const FeatureConfig& config, double rate_hz) {
    const std::size_t lf = static_cast<std::size_t>(window_samples(config.l_feature_ms, rate_hz));
    return dividing_blocks(config.dividing, lf).front().length;
}

} // namespace

bool dividing_supports_feature(const FeatureConfig& config, double sample_rate_hz) {
    if (config.feature != FeatureKind::Stft && config.feature != FeatureKind::Swt) {
        return true;
    }
    std::size_t dl = 0;
    try {
        dl = block_length(config, sample_rate_hz);
    } catch (const ConfigError&) {
        return false;
    }
    const double dl_ms = 1000.0 * static_cast<double>(dl) / sample_rate_hz;
    if (config.dividing.kind != DividingKind::None && dl_ms <= 100.0) return false;
    if (config.feature == FeatureKind::Stft && dl < kStftSegment) return false;
    if (config.feature == FeatureKind::Swt && dl < 8) return false;
    return true;
}

void FeatureConfig::validate(double sample_rate_hz, std::size_t n_channels) const {
    if (n_channels == 0) {
        throw ConfigError("feature config: need at least one channel");
    }
    if (!valid_window_ms(l_norm_ms)) {
        throw ConfigError("feature config: normalization window must be 100..500 ms in 100 ms steps");
    }
    if (!valid_window_ms(l_feature_ms)) {
        throw ConfigError("feature config: feature window must be 100..500 ms in 100 ms steps");
    }
    const std::size_t lf = static_cast<std::size_t>(window_samples(l_feature_ms, sample_rate_hz));
    dividing_blocks(dividing, lf); // throws on a degenerate divided length
    if (!dividing_supports_feature(*this, sample_rate_hz)) {
        throw ConfigError("feature config: " + feature_name(feature) +
                          " needs divided windows over 100 ms (and at least one full segment)");
    }
}

std::vector<std::string> feature_layout(const FeatureConfig& config, std::size_t n_channels,
                                        double sample_rate_hz) {
    config.validate(sample_rate_hz, n_channels);
    const std::size_t lf =
        static_cast<std::size_t>(window_samples(config.l_feature_ms, sample_rate_hz));
    const auto blocks = dividing_blocks(config.dividing, lf);
    const auto members = weighting_members(config.weighting);
    const bool tag_blocks = config.dividing.kind != DividingKind::None;
    const bool tag_members = weighting_is_paired(config.weighting);

    std::vector<std::string> components;
    if (config.feature == FeatureKind::Stft) components = {"low", "mid", "hig"};
    else components = {feature_name(config.feature)};

    std::vector<std::string> layout;
    layout.reserve(n_channels * blocks.size() * members.size() * components.size());
    for (std::size_t c = 0; c < n_channels; ++c) {
        char ch[16];
        std::snprintf(ch, sizeof(ch), "ch%02u", static_cast<unsigned>(c + 1));
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            for (std::size_t m = 0; m < members.size(); ++m) {
                for (const auto& comp : components) {
                    std::string name = ch;
                    if (tag_blocks) name += ".d" + std::to_string(b + 1);
                    if (tag_members) name += "." + weighting_name(members[m]);
                    name += "." + comp;
                    layout.push_back(std::move(name));
                }
            }
        }
    }
    return layout;
}

FeatureStream feature_stream(const MultiChannelSignal& signal, const FeatureConfig& config) {
    signal.validate();
    if (std::abs(signal.sample_rate_hz - kPipelineRateHz) > 1e-6) {
        throw std::invalid_argument("feature_stream: expected a 500 Hz preprocessed signal");
    }
    const double rate = signal.sample_rate_hz;
    const std::size_t n_channels = signal.channel_count();
    config.validate(rate, n_channels);

    const std::size_t ln = static_cast<std::size_t>(window_samples(config.l_norm_ms, rate));
    const std::size_t lf = static_cast<std::size_t>(window_samples(config.l_feature_ms, rate));
    const bool swn = config.normalization == Normalization::Swn;
    const std::size_t warmup = swn ? std::max(ln, lf) : lf;

    const auto blocks = dividing_blocks(config.dividing, lf);
    const auto members = weighting_members(config.weighting);

    // per-(block, member) weight vectors; the frequency features weight
    // their per-time sequences, the time features weight the samples
    std::vector<std::vector<std::vector<double>>> weights(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (const auto member : members) {
            std::size_t wlen = blocks[b].length;
            if (config.feature == FeatureKind::Stft) wlen = stft_segment_count(blocks[b].length);
            weights[b].push_back(weight_vector(member, wlen));
        }
    }

    FeatureStream out;
    out.features.layout = feature_layout(config, n_channels, rate);
    out.features.cols = out.features.layout.size();
    out.features.rate_hz = rate / kFeatureDecimation;

    const std::size_t n = signal.length();
    std::vector<double> window(lf);
    std::vector<double> weighted;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t t = warmup; t < n; t += kFeatureDecimation) {
        out.source_index.push_back(t);
        auto& sigma_row = out.window_sigma.emplace_back(n_channels, nan);

        for (std::size_t c = 0; c < n_channels; ++c) {
            const std::vector<double>& x = signal.channels[c];

            double m = 0.0, sigma = 0.0;
            const bool stats_ready = t + 1 >= ln;
            if (stats_ready) {
                window_moments(std::span<const double>(x).subspan(t + 1 - ln, ln), m, sigma);
                sigma_row[c] = sigma;
            }

            const std::size_t w0 = t + 1 - lf;
            if (swn) {
                if (sigma < kDegenerateSigma) {
                    std::fill(window.begin(), window.end(), 0.0);
                } else {
                    const double inv = 1.0 / sigma;
                    for (std::size_t i = 0; i < lf; ++i) window[i] = (x[w0 + i] - m) * inv;
                }
            } else {
                std::copy(x.begin() + static_cast<std::ptrdiff_t>(w0),
                          x.begin() + static_cast<std::ptrdiff_t>(w0 + lf), window.begin());
            }

            for (std::size_t b = 0; b < blocks.size(); ++b) {
                const std::span<const double> vb(window.data() + blocks[b].start,
                                                 blocks[b].length);
                for (std::size_t mi = 0; mi < members.size(); ++mi) {
                    const std::vector<double>& w = weights[b][mi];
                    switch (config.feature) {
                    case FeatureKind::Mav:
                    case FeatureKind::Mwl:
                    case FeatureKind::Drms: {
                        weighted.resize(vb.size());
                        for (std::size_t i = 0; i < vb.size(); ++i) weighted[i] = vb[i] * w[i];
                        double value = 0.0;
                        if (config.feature == FeatureKind::Mav) value = mav(weighted);
                        else if (config.feature == FeatureKind::Mwl) value = mwl(weighted);
                        else value = drms(weighted);
                        out.features.data.push_back(value);
                        break;
                    }
                    case FeatureKind::Stft: {
                        const BandTriple bands = stft_bands(vb, rate, w);
                        out.features.data.push_back(bands.low);
                        out.features.data.push_back(bands.mid);
                        out.features.data.push_back(bands.hig);
                        break;
                    }
                    case FeatureKind::Swt:
                        out.features.data.push_back(swt_cd3(vb, w));
                        break;
                    }
                }
            }
        }
        ++out.features.rows;
    }
    return out;
}

MultiChannelSignal preprocess_emg(const MultiChannelSignal& raw) {
    raw.validate();
    if (std::abs(raw.sample_rate_hz - kAcquisitionRateHz) > 1e-6) {
        throw std::invalid_argument("preprocess_emg: expected a 2000 Hz recording");
    }
    const SosFilter lowpass =
        design_butterworth(3, 500.0, kAcquisitionRateHz, FilterKind::Lowpass);
    const SosFilter highpass = design_butterworth(3, 30.0, kPipelineRateHz, FilterKind::Highpass);

    MultiChannelSignal s = filter_causal(lowpass, raw);
    s = decimate(s, kPreprocessDecimation);
    return filter_causal(highpass, s);
}

} // namespace emgswn
