#include "wristauth/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace wristauth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(std::span<const double> a, std::span<const double> b,
                  const DtwOptions& options) {
    if (a.empty() || b.empty()) throw DomainError("cannot align an empty sequence");
    if (options.band && *options.band < 0)
        throw DomainError("band width must be non-negative");
}

// Effective half-width: wide open when unset, and never narrower than the
// length difference so the end cell stays reachable.
std::size_t effective_band(std::size_t m, std::size_t n, const DtwOptions& options) {
    const std::size_t spread = std::max(m, n);
    if (!options.band) return spread;
    const std::size_t diff = m > n ? m - n : n - m;
    return std::max(static_cast<std::size_t>(*options.band), diff);
}

inline double sq(double d) { return d * d; }

} // namespace

double dtw_distance(std::span<const double> a, std::span<const double> b,
                    const DtwOptions& options) {
    check_inputs(a, b, options);
    if (b.size() < a.size()) std::swap(a, b);  // rows over the longer side
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const std::size_t band = effective_band(m, n, options);

    std::vector<double> prev(m, kInf);
    std::vector<double> curr(m, kInf);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t lo = j > band ? j - band : 0;
        const std::size_t hi = std::min(m - 1, j + band);
        std::fill(curr.begin(), curr.end(), kInf);
        for (std::size_t i = lo; i <= hi; ++i) {
            double best;
            if (i == 0 && j == 0) {
                best = 0.0;
            } else {
                best = prev[i];                                    // (i, j-1)
                if (i > 0) best = std::min(best, curr[i - 1]);     // (i-1, j)
                if (i > 0) best = std::min(best, prev[i - 1]);     // (i-1, j-1)
            }
            curr[i] = sq(a[i] - b[j]) + best;
        }
        std::swap(prev, curr);
    }
    return std::sqrt(prev[m - 1]);
}

DtwAlignment dtw_align(std::span<const double> a, std::span<const double> b,
                       const DtwOptions& options) {
    check_inputs(a, b, options);
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const std::size_t band = effective_band(m, n, options);

    std::vector<double> s(m * n, kInf);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return s[i * n + j]; };
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t lo = i > band ? i - band : 0;
        const std::size_t hi = std::min(n - 1, i + band);
        for (std::size_t j = lo; j <= hi; ++j) {
            double best;
            if (i == 0 && j == 0) {
                best = 0.0;
            } else {
                best = kInf;
                if (i > 0 && j > 0) best = at(i - 1, j - 1);
                if (i > 0) best = std::min(best, at(i - 1, j));
                if (j > 0) best = std::min(best, at(i, j - 1));
            }
            at(i, j) = sq(a[i] - b[j]) + best;
        }
    }

    DtwAlignment result;
    result.distance = std::sqrt(at(m - 1, n - 1));
    std::size_t i = m - 1;
    std::size_t j = n - 1;
    std::vector<std::pair<std::size_t, std::size_t>> rev;
    rev.emplace_back(i, j);
    while (i > 0 || j > 0) {
        // ties go to the diagonal so warping stays as short as possible
        if (i > 0 && j > 0) {
            double diag = at(i - 1, j - 1);
            double up = at(i - 1, j);
            double left = at(i, j - 1);
            if (diag <= up && diag <= left) {
                --i; --j;
            } else if (up <= left) {
                --i;
            } else {
                --j;
            }
        } else if (i > 0) {
            --i;
        } else {
            --j;
        }
        rev.emplace_back(i, j);
    }
    result.path.assign(rev.rbegin(), rev.rend());
    return result;
}

DistanceVector dtw_vector(const Trial& a, const Trial& b, const DtwOptions& options) {
    DistanceVector distances{};
    for (int k = 1; k <= kNumChannels; ++k) {
        Channel ca = channel(a, k);
        Channel cb = channel(b, k);
        distances[static_cast<std::size_t>(k - 1)] = dtw_distance(ca, cb, options);
    }
    return distances;
}

} // namespace wristauth
