#pragma once

#include <vector>

#include "wristauth/signal.hpp"

namespace wristauth {

inline constexpr int kDefaultSgWindow = 9;
inline constexpr int kDefaultSgDegree = 2;

/// Savitzky-Golay smoothing weights evaluated at the window center.
/// weights are symmetric and sum to 1.
struct SgKernel {
    int window = 0;
    int degree = 0;
    std::vector<double> weights;
};

/// Least-squares polynomial smoothing kernel on integer abscissae
/// -(window-1)/2 .. (window-1)/2. Requires window odd and >= 3 and
/// 0 <= degree < window. Kernels are cached per (window, degree); the
/// cache is safe for concurrent readers.
const SgKernel& sg_coefficients(int window, int degree);

/// Smooths one channel. Interior points are convolved with the full
/// kernel; near the boundary the window shrinks to 2*min(i, n-1-i)+1
/// centered on i, with the degree capped at window-1 (the two outermost
/// points on each side therefore pass through unchanged). Output length
/// equals input length. Requires |values| >= window.
Channel sg_smooth(const Channel& values, int window = kDefaultSgWindow,
                  int degree = kDefaultSgDegree);

/// Smooths all six channels independently; timestamps and labels are
/// unchanged.
Trial filter_trial(const Trial& trial, int window = kDefaultSgWindow,
                   int degree = kDefaultSgDegree);

} // namespace wristauth
