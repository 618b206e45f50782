#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wristauth/profile.hpp"
#include "wristauth/signal.hpp"

namespace wristauth {

inline constexpr int kStatFeaturesPerChannel = 9;
inline constexpr int kCoreFeatures = kStatFeaturesPerChannel * kNumChannels;  // 54
inline constexpr int kDisBins = 20;
inline constexpr int kDisSamples = 1000;

/// Dense row-major matrix, just big enough for the regression and
/// classification plumbing in this module.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    static Matrix zeros(std::size_t r, std::size_t c) {
        return Matrix{r, c, std::vector<double>(r * c, 0.0)};
    }
    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * cols, cols};
    }

    bool operator==(const Matrix&) const = default;
};

/// Per-trial feature vector: 9 statistical/frequency features per channel
/// in fixed order (mean, min, max, range, variance, kurtosis, skewness,
/// energy, entropy), channel-major; plus a 20-bin point-difference
/// histogram and the peak absolute value per channel.
struct FeatureVector {
    std::array<double, kCoreFeatures> core{};
    std::array<std::array<double, kDisBins>, kNumChannels> dis{};
    std::array<double, kNumChannels> peak{};
};

/// Unnormalized discrete Fourier transform, X_k = sum_j x_j e^{-2 pi i jk/n}.
std::vector<std::complex<double>> dft(std::span<const double> series);

/// Extracts the feature vector of an (already filtered) trial. Kurtosis
/// and skewness use population moments and are defined as 0 on a
/// zero-variance channel. Energy = sum |v_i|^2 and
/// entropy = sum |v_i|^2 ln |v_i|^2 (0 ln 0 := 0) on the channel DFT.
/// The Dis histogram bins the differences of kDisSamples seeded random
/// sample pairs over [-r, r], r = the channel's max absolute difference;
/// the same pair indices are reused for every channel. Deterministic per
/// (trial, rng_seed).
FeatureVector extract_features(const Trial& trial, std::uint64_t rng_seed);

/// Stacks feature vectors into a design matrix: the 54 core features, and
/// with `extended` also the 6x20 Dis histograms and 6 peaks (180 columns).
Matrix feature_matrix(const std::vector<FeatureVector>& features,
                      bool extended = false);
std::vector<std::string> feature_column_names(bool extended = false);

/// Pearson correlation matrix of the columns (zero-variance columns
/// correlate as 0).
Matrix feature_correlation(const Matrix& x);

/// Exact solution of (X^T X + lambda I) beta = X^T y. Throws DomainError
/// when lambda = 0 and X^T X is singular.
std::vector<double> ridge_fit(const Matrix& x, const std::vector<double>& y,
                              double lambda);

/// Coordinate-descent minimizer of ||X beta - y||^2 + lambda ||beta||_1,
/// iterated until every KKT stationarity condition holds at 1e-8. Throws
/// ConvergenceError (with diagnostics) if the sweep limit is reached.
std::vector<double> lasso_fit(const Matrix& x, const std::vector<double>& y,
                              double lambda);

/// Indices of coordinates with |beta| above `tol` in the lasso solution.
std::vector<std::size_t> lasso_select(const Matrix& x,
                                      const std::vector<double>& y,
                                      double lambda, double tol = 1e-8);

struct SvmOptions {
    double lambda = 1e-3;  // L2 regularization
    int epochs = 300;
    std::uint64_t seed = 7;
};

/// One-vs-rest linear max-margin classifier (hinge loss, deterministic
/// seeded subgradient descent) over standardized features. Prediction is
/// the argmax decision value, so it always emits one of the training
/// classes; there is no reject path.
class ClosedSetClassifier {
public:
    ClosedSetClassifier() = default;

    const std::vector<std::string>& classes() const { return classes_; }

    /// Number of feature columns the classifier was trained on.
    std::size_t feature_width() const { return feature_mean_.size(); }

    /// Index into classes() of the argmax decision value.
    std::size_t predict_index(std::span<const double> features) const;
    const std::string& predict(std::span<const double> features) const;
    std::vector<double> decision_values(std::span<const double> features) const;

    void save(std::ostream& out) const;
    void save(const std::filesystem::path& path) const;
    static ClosedSetClassifier load(std::istream& in);
    static ClosedSetClassifier load(const std::filesystem::path& path);

    bool operator==(const ClosedSetClassifier&) const = default;

private:
    friend ClosedSetClassifier train_closed_set(const Matrix&,
                                                const std::vector<std::string>&,
                                                const SvmOptions&);
    std::vector<std::string> classes_;
    std::vector<double> feature_mean_;
    std::vector<double> feature_scale_;
    Matrix weights_;              // classes x features
    std::vector<double> bias_;    // per class

    friend struct ClassifierCodec;
};

/// Requires at least 2 classes with at least 2 samples each.
ClosedSetClassifier train_closed_set(const Matrix& x,
                                     const std::vector<std::string>& labels,
                                     const SvmOptions& options = {});

struct CvResult {
    std::vector<double> fold_accuracy;
    double mean_accuracy = 0.0;  // the MAP of the experiment
};

/// Seeded k-fold cross-validation; standardization happens inside each
/// fold (train_closed_set standardizes on its own training partition).
CvResult cross_validate(const Matrix& x, const std::vector<std::string>& labels,
                        int folds, const SvmOptions& options = {},
                        std::uint64_t shuffle_seed = 1);

/// Contrast between the closed-set classifier (which must label everything)
/// and the threshold verifier (which may deny) on trials of words that were
/// absent at training time.
struct FlawReport {
    struct Row {
        std::string assigned_class;  // forced label, always set
        double tss = 0.0;
        bool denied = false;
    };
    std::vector<Row> rows;
    double labeled_fraction = 0.0;  // 1.0 by construction
    double denial_rate = 0.0;       // fraction denied by the verifier
};

FlawReport open_set_flaw_demo(const ClosedSetClassifier& classifier,
                              const std::vector<Trial>& unseen_word_trials,
                              const Profile& profile,
                              std::uint64_t feature_seed);

} // namespace wristauth
