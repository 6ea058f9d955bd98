#include "emgswn/window_functions.hpp"

#include <algorithm>
#include <stdexcept>

#include "emgswn/errors.hpp"

namespace emgswn {

namespace {

// ramp lo -> hi over n samples (inclusive, exact endpoints); n == 1 yields
// hi, treating a single sample as the most recent one
void fill_ramp(std::vector<double>& w, std::size_t begin, std::size_t n, double lo, double hi) {
    if (n == 0) return;
    if (n == 1) {
        w[begin] = hi;
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = static_cast<double>(i) / static_cast<double>(n - 1);
        w[begin + i] = lo + (hi - lo) * tau;
    }
}

std::vector<double> up_weights(WeightingWindowKind kind, std::size_t n) {
    std::vector<double> w(n, 1.0);
    const std::size_t h = n / 2;
    switch (kind) {
    case WeightingWindowKind::UpLinear:
        fill_ramp(w, 0, n, 0.0, 1.0);
        break;
    case WeightingWindowKind::UpLinearCut:
        std::fill(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(h), 0.0);
        fill_ramp(w, h, n - h, 0.0, 1.0);
        break;
    case WeightingWindowKind::UpLinearStep:
        std::fill(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(h), 0.5);
        fill_ramp(w, h, n - h, 0.5, 1.0);
        break;
    default:
        throw std::invalid_argument("up_weights: not an Up* kind");
    }
    return w;
}

} // namespace

bool weighting_is_paired(WeightingWindowKind kind) {
    return kind == WeightingWindowKind::UpDownLinear ||
           kind == WeightingWindowKind::UpDownLinearCut ||
           kind == WeightingWindowKind::UpDownLinearStep;
}

std::vector<WeightingWindowKind> weighting_members(WeightingWindowKind kind) {
    switch (kind) {
    case WeightingWindowKind::UpDownLinear:
        return {WeightingWindowKind::UpLinear, WeightingWindowKind::DownLinear};
    case WeightingWindowKind::UpDownLinearCut:
        return {WeightingWindowKind::UpLinearCut, WeightingWindowKind::DownLinearCut};
    case WeightingWindowKind::UpDownLinearStep:
        return {WeightingWindowKind::UpLinearStep, WeightingWindowKind::DownLinearStep};
    default:
        return {kind};
    }
}

std::vector<double> weight_vector(WeightingWindowKind kind, std::size_t length) {
    if (length == 0) {
        throw std::invalid_argument("weight_vector: empty window");
    }
    switch (kind) {
    case WeightingWindowKind::Flat:
        return std::vector<double>(length, 1.0);
    case WeightingWindowKind::UpLinear:
    case WeightingWindowKind::UpLinearCut:
    case WeightingWindowKind::UpLinearStep:
        return up_weights(kind, length);
    case WeightingWindowKind::DownLinear:
    case WeightingWindowKind::DownLinearCut:
    case WeightingWindowKind::DownLinearStep: {
        WeightingWindowKind up;
        if (kind == WeightingWindowKind::DownLinear) up = WeightingWindowKind::UpLinear;
        else if (kind == WeightingWindowKind::DownLinearCut) up = WeightingWindowKind::UpLinearCut;
        else up = WeightingWindowKind::UpLinearStep;
        std::vector<double> w = up_weights(up, length);
        std::reverse(w.begin(), w.end());
        return w;
    }
    default:
        throw std::invalid_argument("weight_vector: paired kinds expand via weighting_members");
    }
}

std::vector<std::vector<double>> apply_weighting(std::span<const double> window,
                                                 WeightingWindowKind kind) {
    if (window.empty()) {
        throw std::invalid_argument("apply_weighting: empty window");
    }
    std::vector<std::vector<double>> out;
    for (WeightingWindowKind member : weighting_members(kind)) {
        const std::vector<double> w = weight_vector(member, window.size());
        std::vector<double> y(window.size());
        for (std::size_t i = 0; i < window.size(); ++i) y[i] = window[i] * w[i];
        out.push_back(std::move(y));
    }
    return out;
}

std::string weighting_name(WeightingWindowKind kind) {
    switch (kind) {
    case WeightingWindowKind::Flat: return "flat";
    case WeightingWindowKind::UpLinear: return "up_linear";
    case WeightingWindowKind::DownLinear: return "down_linear";
    case WeightingWindowKind::UpLinearCut: return "up_linear_cut";
    case WeightingWindowKind::DownLinearCut: return "down_linear_cut";
    case WeightingWindowKind::UpLinearStep: return "up_linear_step";
    case WeightingWindowKind::DownLinearStep: return "down_linear_step";
    case WeightingWindowKind::UpDownLinear: return "up_down_linear";
    case WeightingWindowKind::UpDownLinearCut: return "up_down_linear_cut";
    case WeightingWindowKind::UpDownLinearStep: return "up_down_linear_step";
    }
    return "flat";
}

const std::vector<WeightingWindowKind>& all_weighting_kinds() {
    static const std::vector<WeightingWindowKind> kinds = {
        WeightingWindowKind::Flat,
        WeightingWindowKind::UpLinear,
        WeightingWindowKind::DownLinear,
        WeightingWindowKind::UpLinearCut,
        WeightingWindowKind::DownLinearCut,
        WeightingWindowKind::UpLinearStep,
        WeightingWindowKind::DownLinearStep,
        WeightingWindowKind::UpDownLinear,
        WeightingWindowKind::UpDownLinearCut,
        WeightingWindowKind::UpDownLinearStep,
    };
    return kinds;
}

WeightingWindowKind weighting_from_name(const std::string& name) {
    for (WeightingWindowKind k : all_weighting_kinds()) {
        if (weighting_name(k) == name) return k;
    }
    throw ConfigError("unknown weighting window kind: " + name);
}

std::vector<BlockSpan> dividing_blocks(const DividingWindowScheme& scheme,
                                       std::size_t window_length) {
    if (scheme.kind == DividingKind::None) {
        return {BlockSpan{0, window_length}};
    }
    if (scheme.divisions < 2 || scheme.divisions > 4) {
        throw ConfigError("dividing window: divisions must be in {2, 3, 4}");
    }
    const std::size_t n = static_cast<std::size_t>(scheme.divisions);
    std::size_t dl = 0;
    std::size_t hop = 0;
    if (scheme.kind == DividingKind::Equal) {
        dl = window_length / n;
        hop = dl;
    } else {
        dl = 2 * window_length / (n + 1);
        hop = dl / 2;
    }
    if (dl < 2) {
        throw ConfigError("dividing window: divided length below 2 samples");
    }
    std::vector<BlockSpan> blocks;
    blocks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t start = i * hop;
        if (start + dl > window_length) {
            throw ConfigError("dividing window: block exceeds window length");
        }
        blocks.push_back(BlockSpan{start, dl});
    }
    return blocks;
}

std::string dividing_name(const DividingWindowScheme& scheme) {
    if (scheme.kind == DividingKind::None) return "none";
    const std::string prefix = scheme.kind == DividingKind::Equal ? "ed" : "od";
    return prefix + std::to_string(scheme.divisions);
}

DividingWindowScheme dividing_from_name(const std::string& name) {
    if (name == "none" || name.empty()) return DividingWindowScheme{};
    if (name.size() == 3 && (name.substr(0, 2) == "ed" || name.substr(0, 2) == "od")) {
        const int n = name[2] - '0';
        if (n >= 2 && n <= 4) {
            return DividingWindowScheme{
                name[0] == 'e' ? DividingKind::Equal : DividingKind::Overlap, n};
        }
    }
    throw ConfigError("unknown dividing window scheme: " + name);
}

} // namespace emgswn
