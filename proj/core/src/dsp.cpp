#include "wristauth/dsp.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include <Eigen/Dense>

namespace wristauth {

namespace {

void check_params(int window, int degree) {
    if (window < 3 || window % 2 == 0)
        throw DomainError("smoothing window must be odd and >= 3, got " +
                          std::to_string(window));
    if (degree < 0)
        throw DomainError("polynomial degree must be non-negative, got " +
                          std::to_string(degree));
    if (degree >= window)
        throw DomainError("polynomial degree " + std::to_string(degree) +
                          " needs a window larger than " + std::to_string(window));
}

// Least-squares fit of a degree-d polynomial over symmetric offsets
// -h..h; the smoothed centre value is a fixed linear combination of the
// window, so we solve (AtA) z = e0 once and keep w = A z.
SgKernel compute_kernel(int window, int degree) {
    const int h = window / 2;
    const int terms = degree + 1;
    Eigen::MatrixXd a(window, terms);
    for (int i = 0; i < window; ++i) {
        double x = static_cast<double>(i - h);
        double p = 1.0;
        for (int j = 0; j < terms; ++j) {
            a(i, j) = p;
            p *= x;
        }
    }
    Eigen::MatrixXd ata = a.transpose() * a;
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(terms);
    e0(0) = 1.0;
    Eigen::VectorXd z = ata.ldlt().solve(e0);
    Eigen::VectorXd w = a * z;

    SgKernel kernel;
    kernel.window = window;
    kernel.degree = degree;
    kernel.weights.assign(w.data(), w.data() + window);
    return kernel;
}

} // namespace

const SgKernel& sg_coefficients(int window, int degree) {
    check_params(window, degree);
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<SgKernel>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{window, degree}];
    if (!slot) slot = std::make_unique<SgKernel>(compute_kernel(window, degree));
    return *slot;
}

Channel sg_smooth(const Channel& values, int window, int degree) {
    check_params(window, degree);
    const int n = static_cast<int>(values.size());
    if (n < window)
        throw ValidationError("channel of length " + std::to_string(n) +
                              " is shorter than the smoothing window " +
                              std::to_string(window));
    Channel out(values.size());
    for (int i = 0; i < n; ++i) {
        // Near the ends shrink to the largest centred window that fits,
        // so every point is smoothed symmetrically and no sample is padded.
        const int margin = std::min(i, n - 1 - i);
        const int w = std::min(window, 2 * margin + 1);
        const int d = std::min(degree, w - 1);
        if (w == 1) {
            out[i] = values[i];
            continue;
        }
        const SgKernel& kernel = sg_coefficients(w, d);
        const int h = w / 2;
        double acc = 0.0;
        for (int j = 0; j < w; ++j) acc += kernel.weights[j] * values[i - h + j];
        out[i] = acc;
    }
    return out;
}

Trial filter_trial(const Trial& trial, int window, int degree) {
    Trial out = trial;
    for (int k = 1; k <= kNumChannels; ++k) {
        Channel smoothed = sg_smooth(channel(trial, k), window, degree);
        for (std::size_t i = 0; i < out.samples.size(); ++i)
            out.samples[i].set_channel_value(k, smoothed[i]);
    }
    return out;
}

} // namespace wristauth
