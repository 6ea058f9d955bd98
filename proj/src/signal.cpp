#include "emgswn/signal.hpp"

#include <stdexcept>

namespace emgswn {

void MultiChannelSignal::validate() const {
    if (sample_rate_hz <= 0.0) {
        throw std::invalid_argument("signal: sample_rate_hz must be > 0");
    }
    const std::size_t n = length();
    for (const auto& ch : channels) {
        if (ch.size() != n) {
            throw std::invalid_argument("signal: all channels must have equal length");
        }
    }
}

MultiChannelSignal MultiChannelSignal::zeros(std::size_t n_channels, std::size_t n_samples,
                                             double rate_hz) {
    MultiChannelSignal s;
    s.sample_rate_hz = rate_hz;
    s.channels.assign(n_channels, std::vector<double>(n_samples, 0.0));
    return s;
}

} // namespace emgswn
