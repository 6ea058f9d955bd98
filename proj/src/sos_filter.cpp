#include "emgswn/sos_filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emgswn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::complex<double> bilinear(std::complex<double> s, double fs2) {
    return (fs2 + s) / (fs2 - s);
}

Biquad section_from_pole_pair(std::complex<double> zp, FilterKind kind) {
    Biquad s;
    s.a1 = -2.0 * zp.real();
    s.a2 = std::norm(zp);
    if (kind == FilterKind::Lowpass) {
        // two zeros at z = -1, unit gain at z = 1
        const double g = (1.0 + s.a1 + s.a2) / 4.0;
        s.b0 = g;
        s.b1 = 2.0 * g;
        s.b2 = g;
    } else {
        // two zeros at z = +1, unit gain at z = -1
        const double g = (1.0 - s.a1 + s.a2) / 4.0;
        s.b0 = g;
        s.b1 = -2.0 * g;
        s.b2 = g;
    }
    return s;
}

Biquad section_from_real_pole(double zp, FilterKind kind) {
    Biquad s;
    s.a1 = -zp;
    s.a2 = 0.0;
    if (kind == FilterKind::Lowpass) {
        const double g = (1.0 + s.a1) / 2.0;
        s.b0 = g;
        s.b1 = g;
        s.b2 = 0.0;
    } else {
        const double g = (1.0 - s.a1) / 2.0;
        s.b0 = g;
        s.b1 = -g;
        s.b2 = 0.0;
    }
    return s;
}

} // namespace

SosFilter design_butterworth(int order, double cutoff_hz, double sample_rate_hz,
                             FilterKind kind) {
    if (order < 1) {
        throw std::invalid_argument("design_butterworth: order must be >= 1");
    }
    if (sample_rate_hz <= 0.0) {
        throw std::invalid_argument("design_butterworth: sample rate must be > 0");
    }
    if (cutoff_hz <= 0.0 || cutoff_hz >= 0.5 * sample_rate_hz) {
        throw std::domain_error("design_butterworth: cutoff must be in (0, sample_rate/2)");
    }

    const double fs2 = 2.0 * sample_rate_hz;
    const double wc = fs2 * std::tan(kPi * cutoff_hz / sample_rate_hz); // prewarped

    SosFilter f;
    f.order = order;
    f.cutoff_hz = cutoff_hz;
    f.sample_rate_hz = sample_rate_hz;
    f.kind = kind;

    // Analog prototype poles on the unit circle, upper half plane; the
    // conjugate of each complex pole is implied by the real coefficients.
    for (int k = 0; k < order / 2; ++k) {
        const double theta = kPi * (2.0 * k + order + 1.0) / (2.0 * order);
        const std::complex<double> proto(std::cos(theta), std::sin(theta));
        const std::complex<double> s_pole =
            (kind == FilterKind::Lowpass) ? wc * proto : wc / proto;
        f.sections.push_back(section_from_pole_pair(bilinear(s_pole, fs2), kind));
    }
    if (order % 2 == 1) {
        const double s_pole = -wc; // real prototype pole at -1
        const double zp = bilinear(std::complex<double>(s_pole, 0.0), fs2).real();
        f.sections.push_back(section_from_real_pole(zp, kind));
    }
    return f;
}

std::complex<double> SosFilter::response_at(double freq_hz) const {
    const double w = 2.0 * kPi * freq_hz / sample_rate_hz;
    const std::complex<double> z1 = std::exp(std::complex<double>(0.0, -w));
    const std::complex<double> z2 = z1 * z1;
    std::complex<double> h(1.0, 0.0);
    for (const auto& s : sections) {
        h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
    }
    return h;
}

double SosFilter::magnitude_at(double freq_hz) const { return std::abs(response_at(freq_hz)); }

std::vector<std::complex<double>> SosFilter::poles() const {
    std::vector<std::complex<double>> out;
    for (const auto& s : sections) {
        if (s.a2 == 0.0) {
            out.emplace_back(-s.a1, 0.0);
            continue;
        }
        const std::complex<double> disc =
            std::sqrt(std::complex<double>(s.a1 * s.a1 - 4.0 * s.a2, 0.0));
        out.push_back((-s.a1 + disc) / 2.0);
        out.push_back((-s.a1 - disc) / 2.0);
    }
    return out;
}

SosStream::SosStream(SosFilter filter) : filter_(std::move(filter)) {
    state_.assign(filter_.sections.size() * 2, 0.0);
}

double SosStream::process(double x) {
    double v = x;
    for (std::size_t i = 0; i < filter_.sections.size(); ++i) {
        const Biquad& s = filter_.sections[i];
        double& z1 = state_[2 * i];
        double& z2 = state_[2 * i + 1];
        const double y = s.b0 * v + z1;
        z1 = s.b1 * v - s.a1 * y + z2;
        z2 = s.b2 * v - s.a2 * y;
        v = y;
    }
    return v;
}

void SosStream::process(std::span<const double> in, std::span<double> out) {
    for (std::size_t n = 0; n < in.size(); ++n) out[n] = process(in[n]);
}

void SosStream::reset() { std::fill(state_.begin(), state_.end(), 0.0); }

void SosStream::set_state(std::span<const double> state) {
    if (state.size() != state_.size()) {
        throw std::invalid_argument("SosStream: state size mismatch");
    }
    std::copy(state.begin(), state.end(), state_.begin());
}

std::vector<double> sos_step_state(const std::vector<Biquad>& sections) {
    std::vector<double> zi(sections.size() * 2, 0.0);
    double cum_gain = 1.0;
    for (std::size_t i = 0; i < sections.size(); ++i) {
        const Biquad& s = sections[i];
        const double sum_b = s.b0 + s.b1 + s.b2;
        const double sum_a = 1.0 + s.a1 + s.a2;
        const double g = (sum_a != 0.0) ? sum_b / sum_a : 0.0;
        zi[2 * i] = (g - s.b0) * cum_gain;
        zi[2 * i + 1] = (s.b2 - s.a2 * g) * cum_gain;
        cum_gain *= g;
    }
    return zi;
}

MultiChannelSignal filter_causal(const SosFilter& filter, const MultiChannelSignal& signal) {
    signal.validate();
    if (signal.length() == 0) {
        throw std::invalid_argument("filter_causal: empty signal");
    }
    if (std::abs(filter.sample_rate_hz - signal.sample_rate_hz) > 1e-6) {
        throw std::invalid_argument("filter_causal: filter/signal sample rate mismatch");
    }
    MultiChannelSignal out = signal;
    for (auto& ch : out.channels) {
        SosStream stream(filter);
        stream.process(ch, ch);
    }
    return out;
}

namespace {

// one forward-backward sweep over an odd-reflection-padded copy
std::vector<double> forward_backward(const SosFilter& filter, std::span<const double> x,
                                     std::size_t pad) {
    std::vector<double> ext;
    ext.reserve(x.size() + 2 * pad);
    for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x.front() - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x.back() - x[x.size() - 1 - i]);

    const std::vector<double> zi = sos_step_state(filter.sections);
    std::vector<double> scaled(zi.size());

    SosStream forward(filter);
    for (std::size_t i = 0; i < zi.size(); ++i) scaled[i] = zi[i] * ext.front();
    forward.set_state(scaled);
    forward.process(ext, ext);

    std::reverse(ext.begin(), ext.end());
    SosStream backward(filter);
    for (std::size_t i = 0; i < zi.size(); ++i) scaled[i] = zi[i] * ext.front();
    backward.set_state(scaled);
    backward.process(ext, ext);
    std::reverse(ext.begin(), ext.end());

    return std::vector<double>(ext.begin() + static_cast<std::ptrdiff_t>(pad),
                               ext.end() - static_cast<std::ptrdiff_t>(pad));
}

} // namespace

std::vector<double> filter_zero_phase(const SosFilter& filter, std::span<const double> x) {
    const std::size_t pad = static_cast<std::size_t>(3 * 2 * filter.order);
    if (x.size() <= pad) {
        throw std::invalid_argument("filter_zero_phase: signal too short for edge padding");
    }
    // Averaging the sweep with its time-reversed twin cancels the residual
    // edge transients asymmetry: reversing the input exactly reverses the
    // output, so symmetric inputs give symmetric outputs.
    const std::vector<double> ab = forward_backward(filter, x, pad);
    std::vector<double> rx(x.rbegin(), x.rend());
    const std::vector<double> ba = forward_backward(filter, rx, pad);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = 0.5 * (ab[i] + ba[out.size() - 1 - i]);
    }
    return out;
}

MultiChannelSignal filter_zero_phase(const SosFilter& filter, const MultiChannelSignal& signal) {
    signal.validate();
    if (std::abs(filter.sample_rate_hz - signal.sample_rate_hz) > 1e-6) {
        throw std::invalid_argument("filter_zero_phase: filter/signal sample rate mismatch");
    }
    MultiChannelSignal out = signal;
    for (auto& ch : out.channels) ch = filter_zero_phase(filter, ch);
    return out;
}

std::vector<double> decimate(std::span<const double> x, int factor) {
    if (factor < 1) {
        throw std::invalid_argument("decimate: factor must be >= 1");
    }
    std::vector<double> out;
    out.reserve((x.size() + factor - 1) / factor);
    for (std::size_t i = 0; i < x.size(); i += static_cast<std::size_t>(factor)) {
        out.push_back(x[i]);
    }
    return out;
}

MultiChannelSignal decimate(const MultiChannelSignal& signal, int factor) {
    if (factor < 1) {
        throw std::invalid_argument("decimate: factor must be >= 1");
    }
    MultiChannelSignal out;
    out.sample_rate_hz = signal.sample_rate_hz / factor;
    out.channels.reserve(signal.channel_count());
    for (const auto& ch : signal.channels) out.channels.push_back(decimate(ch, factor));
    return out;
}

} // namespace emgswn
