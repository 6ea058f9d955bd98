#include "emgswn/features.hpp"

#include <cmath>
#include <stdexcept>

namespace emgswn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// left margin needed by the 3-level a-trous cascade (4 + 6 + 12 taps back)
constexpr std::size_t kSwtMargin = 21;

} // namespace

double mav(std::span<const double> window) {
    if (window.empty()) {
        throw std::invalid_argument("mav: empty window");
    }
    double s = 0.0;
    for (double v : window) s += std::abs(v);
    return s / static_cast<double>(window.size());
}

double mwl(std::span<const double> window) {
    if (window.size() < 2) {
        throw std::invalid_argument("mwl: window needs at least 2 samples");
    }
    double s = 0.0;
    for (std::size_t i = 1; i < window.size(); ++i) {
        s += std::abs(window[i] - window[i - 1]);
    }
    return s / static_cast<double>(window.size() - 1);
}

double drms(std::span<const double> window) {
    if (window.size() < 2) {
        throw std::invalid_argument("drms: window needs at least 2 samples");
    }
    double s = 0.0;
    for (std::size_t i = 1; i < window.size(); ++i) {
        const double d = window[i] - window[i - 1];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(window.size() - 1));
}

std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
    }
    return w;
}

void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("fft_radix2: size must be a power of two");
    }
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::size_t stft_segment_count(std::size_t window_length) {
    if (window_length < kStftSegment) return 0;
    return 1 + (window_length - kStftSegment) / kStftHop;
}

BandTriple stft_bands(std::span<const double> window, double sample_rate_hz,
                      std::span<const double> segment_weights) {
    const std::size_t n_seg = stft_segment_count(window.size());
    if (n_seg == 0) {
        throw std::invalid_argument("stft_bands: window shorter than one segment");
    }
    if (!segment_weights.empty() && segment_weights.size() != n_seg) {
        throw std::invalid_argument("stft_bands: weight count must match segment count");
    }

    static const std::vector<double> hann = hann_window(kStftSegment);
    const std::size_t n_bins = kStftSegment / 2 + 1;

    std::vector<double> mean_spec(n_bins, 0.0);
    std::vector<std::complex<double>> buf(kStftSegment);
    for (std::size_t s = 0; s < n_seg; ++s) {
        const std::size_t off = s * kStftHop;
        for (std::size_t i = 0; i < kStftSegment; ++i) {
            buf[i] = std::complex<double>(window[off + i] * hann[i], 0.0);
        }
        fft_radix2(buf);
        const double w = segment_weights.empty() ? 1.0 : segment_weights[s];
        for (std::size_t k = 0; k < n_bins; ++k) {
            mean_spec[k] += w * std::abs(buf[k]);
        }
    }
    for (double& v : mean_spec) v /= static_cast<double>(n_seg);

    auto band_mean = [&](double lo_hz, double hi_hz) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t k = 0; k < n_bins; ++k) {
            const double f = static_cast<double>(k) * sample_rate_hz /
                             static_cast<double>(kStftSegment);
            if (f >= lo_hz && f <= hi_hz) {
                sum += mean_spec[k];
                ++count;
            }
        }
        return count > 0 ? sum / static_cast<double>(count) : 0.0;
    };

    BandTriple out;
    out.low = band_mean(1.0, 70.0);
    out.mid = band_mean(60.0, 100.0);
    out.hig = band_mean(100.0, 250.0);
    return out;
}

const std::array<double, 4>& db2_dec_lo() {
    static const std::array<double, 4> h = {
        -0.12940952255092145, 0.22414386804185735, 0.836516303737469, 0.48296291314469025};
    return h;
}

const std::array<double, 4>& db2_dec_hi() {
    static const std::array<double, 4> g = {
        -0.48296291314469025, 0.836516303737469, -0.22414386804185735, -0.12940952255092145};
    return g;
}

std::vector<double> swt_cd3_sequence(std::span<const double> window) {
    const std::size_t len = window.size();
    if (len < 8) {
        throw std::invalid_argument("swt_cd3: window needs at least 8 samples");
    }

    // ext[i] holds signal index i - kSwtMargin. Left extension is odd
    // reflection about the first sample; if the window is shorter than the
    // margin, the last two extended values continue linearly.
    std::vector<double> ext(kSwtMargin + len);
    for (std::size_t i = 0; i < len; ++i) ext[kSwtMargin + i] = window[i];
    for (std::size_t j = 1; j <= kSwtMargin; ++j) {
        const std::size_t pos = kSwtMargin - j;
        if (j <= len - 1) {
            ext[pos] = 2.0 * window[0] - window[j];
        } else {
            ext[pos] = 2.0 * ext[pos + 1] - ext[pos + 2];
        }
    }

    const auto& h = db2_dec_lo();
    const auto& g = db2_dec_hi();

    // level 1 approximation on signal indices [-18, len); a1[n] <-> n - 18
    std::vector<double> a1(len + 18);
    for (std::size_t n = 0; n < a1.size(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k < 4; ++k) acc += h[k] * ext[n + 3 - k];
        a1[n] = acc;
    }

    // level 2 approximation on [-12, len), filter upsampled by 2
    std::vector<double> a2(len + 12);
    for (std::size_t n = 0; n < a2.size(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k < 4; ++k) acc += h[k] * a1[n + 6 - 2 * k];
        a2[n] = acc;
    }

    // level 3 detail on [0, len), filter upsampled by 4
    std::vector<double> d3(len);
    for (std::size_t n = 0; n < len; ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k < 4; ++k) acc += g[k] * a2[n + 12 - 4 * k];
        d3[n] = acc;
    }
    return d3;
}

double swt_cd3(std::span<const double> window, std::span<const double> sample_weights) {
    if (!sample_weights.empty() && sample_weights.size() != window.size()) {
        throw std::invalid_argument("swt_cd3: weight count must match window length");
    }
    const std::vector<double> d3 = swt_cd3_sequence(window);
    double s = 0.0;
    for (std::size_t i = 0; i < d3.size(); ++i) {
        const double w = sample_weights.empty() ? 1.0 : sample_weights[i];
        s += w * std::abs(d3[i]);
    }
    return s / static_cast<double>(d3.size());
}

} // namespace emgswn
