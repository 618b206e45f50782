#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wristauth/signal.hpp"

namespace wristauth {

/// Per-dimension DTW distances, one entry per motion channel.
using DistanceVector = std::array<double, kNumChannels>;

struct DtwOptions {
    /// Sakoe-Chiba half-width. Performance knob only; alignment is
    /// unconstrained when unset. The band is widened to |m-n| when the
    /// series lengths differ so the end cell stays reachable.
    std::optional<int> band;
};

/// DTW distance between two series: sqrt of the minimal cumulative sum of
/// (a_i - b_j)^2 over monotone paths from (1,1) to (m,n) with steps
/// {(0,1),(1,0),(1,1)}. O(mn) time, O(min(m,n)) memory. Requires both
/// series non-empty with finite values.
double dtw_distance(std::span<const double> a, std::span<const double> b,
                    const DtwOptions& options = {});

struct DtwAlignment {
    double distance = 0.0;
    /// 0-based (i, j) index pairs from (0,0) to (m-1,n-1).
    std::vector<std::pair<std::size_t, std::size_t>> path;
};

/// Same cost model as dtw_distance but materializes the full matrix to
/// recover one optimal path. Diagonal steps are preferred on ties.
DtwAlignment dtw_align(std::span<const double> a, std::span<const double> b,
                       const DtwOptions& options = {});

/// Component k = dtw_distance(channel(a,k), channel(b,k)).
DistanceVector dtw_vector(const Trial& a, const Trial& b,
                          const DtwOptions& options = {});

} // namespace wristauth
