#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace emgswn {

/// Mean absolute value: (1/L) * sum |x|.
double mav(std::span<const double> window);

/// Mean waveform length: (1/(L-1)) * sum |x_i - x_{i-1}|. Needs L >= 2.
double mwl(std::span<const double> window);

/// Difference RMS: sqrt((1/(L-1)) * sum (x_i - x_{i-1})^2). Needs L >= 2.
double drms(std::span<const double> window);

struct BandTriple {
    double low = 0.0;
    double mid = 0.0;
    double hig = 0.0;
};

/// STFT segment length (Hanning) and hop used throughout.
inline constexpr std::size_t kStftSegment = 64;
inline constexpr std::size_t kStftHop = 32;

std::size_t stft_segment_count(std::size_t window_length);

/// Magnitude spectrogram with 64-sample Hanning segments at 50% overlap,
/// averaged over time, then averaged over bins inside the inclusive bands
/// 1-70 Hz (low), 60-100 Hz (mid) and 100-250 Hz (hig). The band edges
/// overlap; bins in 60-70 Hz count toward both low and mid.
/// `segment_weights`, when given, must have one entry per segment and is
/// applied to the per-segment magnitudes before the time average.
BandTriple stft_bands(std::span<const double> window, double sample_rate_hz,
                      std::span<const double> segment_weights = {});

/// Level-3 detail coefficients of an undecimated (a-trous) db2 wavelet
/// transform, one value per original sample. The signal is extended on the
/// left by odd reflection so globally linear inputs vanish everywhere.
std::vector<double> swt_cd3_sequence(std::span<const double> window);

/// Mean |cD3| over the original-length region; `sample_weights`, when
/// given, is applied to the |cD3| sequence before the mean. Needs L >= 8.
double swt_cd3(std::span<const double> window, std::span<const double> sample_weights = {});

/// db2 decomposition filters (lowpass, highpass).
const std::array<double, 4>& db2_dec_lo();
const std::array<double, 4>& db2_dec_hi();

std::vector<double> hann_window(std::size_t n);

/// In-place iterative radix-2 FFT; size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a);

} // namespace emgswn
