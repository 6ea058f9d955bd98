#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace emgswn {

/// Time-direction weight profiles. The UpDown* kinds are pairs of the two
/// named members and double the feature component count.
enum class WeightingWindowKind {
    Flat,
    UpLinear,
    DownLinear,
    UpLinearCut,
    DownLinearCut,
    UpLinearStep,
    DownLinearStep,
    UpDownLinear,
    UpDownLinearCut,
    UpDownLinearStep,
};

bool weighting_is_paired(WeightingWindowKind kind);

/// Member kinds a weighting expands to: the kind itself, or the Up/Down
/// pair for UpDown* kinds.
std::vector<WeightingWindowKind> weighting_members(WeightingWindowKind kind);

/// Weight vector in [0, 1] for a non-paired kind.
/// Flat: ones. UpLinear: ramp 0->1; UpLinearCut: zeros on the first half,
/// then ramp 0->1; UpLinearStep: 0.5 on the first half, then ramp 0.5->1.
/// Each Down* shape is the time reversal of its Up* counterpart.
std::vector<double> weight_vector(WeightingWindowKind kind, std::size_t length);

/// Weighted copies of the window: one per member kind.
std::vector<std::vector<double>> apply_weighting(std::span<const double> window,
                                                 WeightingWindowKind kind);

std::string weighting_name(WeightingWindowKind kind);
WeightingWindowKind weighting_from_name(const std::string& name);
const std::vector<WeightingWindowKind>& all_weighting_kinds();

enum class DividingKind { None, Equal, Overlap };

/// Splits a feature window into n sub-windows. Equal division uses
/// dl = floor(L/N) contiguous blocks (trailing remainder dropped); overlap
/// division uses dl = floor(2L/(N+1)) blocks at hop floor(dl/2) so adjacent
/// blocks share half their samples.
struct DividingWindowScheme {
    DividingKind kind = DividingKind::None;
    int divisions = 1;
};

struct BlockSpan {
    std::size_t start = 0;
    std::size_t length = 0;
};

/// Block layout for a window of `window_length` samples.
/// Throws ConfigError when the divided length falls below 2.
std::vector<BlockSpan> dividing_blocks(const DividingWindowScheme& scheme,
                                       std::size_t window_length);

std::string dividing_name(const DividingWindowScheme& scheme);
DividingWindowScheme dividing_from_name(const std::string& name);

} // namespace emgswn
