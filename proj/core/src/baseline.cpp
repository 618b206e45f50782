#include "wristauth/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <utility>

#include <Eigen/Dense>
#include <json.hpp>

#include "rng.hpp"
#include "wristauth/auth.hpp"
#include "wristauth/dsp.hpp"
#include "wristauth/synth.hpp"

namespace wristauth {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kClassifierFormat = "wristauth-classifier";
constexpr int kClassifierVersion = 1;

using RowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> as_eigen(const Matrix& x) {
    return {x.data.data(), static_cast<Eigen::Index>(x.rows),
            static_cast<Eigen::Index>(x.cols)};
}

void check_design(const Matrix& x, const std::vector<double>& y, double lambda) {
    if (x.rows == 0 || x.cols == 0)
        throw DomainError("regression needs a non-empty design matrix");
    if (x.data.size() != x.rows * x.cols)
        throw DomainError("design matrix storage does not match its shape");
    if (y.size() != x.rows)
        throw DomainError("target length " + std::to_string(y.size()) +
                          " does not match row count " + std::to_string(x.rows));
    if (!(lambda >= 0.0)) throw DomainError("regularization must be non-negative");
}

std::vector<std::complex<double>> fft_pow2(std::span<const double> series) {
    const std::size_t n = series.size();
    std::vector<std::complex<double>> x(n);
    // bit-reversal permutation
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rev = 0;
        for (std::size_t b = 0; b < bits; ++b)
            if (i & (std::size_t{1} << b)) rev |= std::size_t{1} << (bits - 1 - b);
        x[rev] = series[i];
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> step = std::polar(1.0, angle);
        for (std::size_t start = 0; start < n; start += len) {
            std::complex<double> w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto even = x[start + k];
                const auto odd = x[start + k + len / 2] * w;
                x[start + k] = even + odd;
                x[start + k + len / 2] = even - odd;
                w *= step;
            }
        }
    }
    return x;
}

double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

std::vector<std::string> sorted_classes(const std::vector<std::string>& labels) {
    std::vector<std::string> classes = labels;
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

const nlohmann::json& require_key(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string("classifier document is missing key '") + key +
                         "'");
    return *it;
}

} // namespace

std::vector<std::complex<double>> dft(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n == 0) throw DomainError("transform of an empty series");
    if ((n & (n - 1)) == 0) return fft_pow2(series);
    std::vector<std::complex<double>> x(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double angle =
                -2.0 * M_PI * static_cast<double>(j) * static_cast<double>(k) /
                static_cast<double>(n);
            acc += series[j] * std::polar(1.0, angle);
        }
        x[k] = acc;
    }
    return x;
}

FeatureVector extract_features(const Trial& trial, std::uint64_t rng_seed) {
    validate_trial(trial);
    const std::size_t n = trial.size();

    // One set of sampled index pairs shared by all channels, so permuting
    // channels permutes the feature blocks and nothing else.
    detail::Rng rng(rng_seed);
    std::vector<std::pair<std::size_t, std::size_t>> pairs(kDisSamples);
    for (auto& p : pairs) {
        p.first = rng.uniform_int(n);
        p.second = rng.uniform_int(n);
    }

    FeatureVector fv;
    for (int c = 0; c < kNumChannels; ++c) {
        const Channel v = channel(trial, c + 1);
        const double mean =
            std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
        const auto [min_it, max_it] = std::minmax_element(v.begin(), v.end());
        const double min = *min_it;
        const double max = *max_it;
        const double range = max - min;
        double m2 = 0.0, m3 = 0.0, m4 = 0.0;
        for (double value : v) {
            const double d = value - mean;
            m2 += d * d;
            m3 += d * d * d;
            m4 += d * d * d * d;
        }
        m2 /= static_cast<double>(n);
        m3 /= static_cast<double>(n);
        m4 /= static_cast<double>(n);
        const double kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
        const double skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;

        double energy = 0.0;
        double entropy = 0.0;
        for (const std::complex<double>& bin : dft(v)) {
            const double power = std::norm(bin);
            energy += power;
            if (power > 0.0) entropy += power * std::log(power);
        }

        double* out = fv.core.data() + c * kStatFeaturesPerChannel;
        out[0] = mean;
        out[1] = min;
        out[2] = max;
        out[3] = range;
        out[4] = m2;
        out[5] = kurtosis;
        out[6] = skewness;
        out[7] = energy;
        out[8] = entropy;

        auto& hist = fv.dis[static_cast<std::size_t>(c)];
        if (range == 0.0) {
            hist[kDisBins / 2] = 1.0;  // every difference is exactly 0
        } else {
            for (const auto& p : pairs) {
                const double d = v[p.first] - v[p.second];
                auto bin = static_cast<long>(
                    std::floor((d + range) / (2.0 * range) * kDisBins));
                bin = std::clamp(bin, 0L, static_cast<long>(kDisBins - 1));
                hist[static_cast<std::size_t>(bin)] += 1.0 / kDisSamples;
            }
        }

        double peak = 0.0;
        for (double value : v) peak = std::max(peak, std::abs(value));
        fv.peak[static_cast<std::size_t>(c)] = peak;
    }
    return fv;
}

Matrix feature_matrix(const std::vector<FeatureVector>& features, bool extended) {
    const std::size_t cols =
        extended ? kCoreFeatures + kNumChannels * (kDisBins + 1) : kCoreFeatures;
    Matrix x = Matrix::zeros(features.size(), cols);
    for (std::size_t i = 0; i < features.size(); ++i) {
        const FeatureVector& fv = features[i];
        std::size_t j = 0;
        for (double value : fv.core) x.at(i, j++) = value;
        if (extended) {
            for (const auto& hist : fv.dis)
                for (double value : hist) x.at(i, j++) = value;
            for (double value : fv.peak) x.at(i, j++) = value;
        }
    }
    return x;
}

std::vector<std::string> feature_column_names(bool extended) {
    static const char* channels[] = {"ax", "ay", "az", "gx", "gy", "gz"};
    static const char* stats[] = {"mean",     "min",      "max",
                                  "range",    "variance", "kurtosis",
                                  "skewness", "energy",   "entropy"};
    std::vector<std::string> names;
    for (const char* ch : channels)
        for (const char* stat : stats) names.push_back(std::string(ch) + "_" + stat);
    if (extended) {
        for (const char* ch : channels)
            for (int b = 1; b <= kDisBins; ++b) {
                char buf[16];
                std::snprintf(buf, sizeof buf, "_dis%02d", b);
                names.push_back(std::string(ch) + buf);
            }
        for (const char* ch : channels) names.push_back(std::string(ch) + "_peak");
    }
    return names;
}

Matrix feature_correlation(const Matrix& x) {
    if (x.rows == 0 || x.cols == 0)
        throw DomainError("correlation of an empty matrix");
    const std::size_t p = x.cols;
    std::vector<double> mean(p, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < p; ++j) mean[j] += x.at(i, j);
    for (double& m : mean) m /= static_cast<double>(x.rows);

    std::vector<double> sd(p, 0.0);
    Matrix corr = Matrix::zeros(p, p);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a; b < p; ++b) {
            double cov = 0.0;
            for (std::size_t i = 0; i < x.rows; ++i)
                cov += (x.at(i, a) - mean[a]) * (x.at(i, b) - mean[b]);
            cov /= static_cast<double>(x.rows);
            if (a == b) sd[a] = std::sqrt(cov);
            corr.at(a, b) = cov;
            corr.at(b, a) = cov;
        }
    }
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b) {
            const double denom = sd[a] * sd[b];
            corr.at(a, b) = denom > 0.0 ? corr.at(a, b) / denom : 0.0;
        }
    return corr;
}

std::vector<double> ridge_fit(const Matrix& x, const std::vector<double>& y,
                              double lambda) {
    check_design(x, y, lambda);
    const auto xm = as_eigen(x);
    const Eigen::Map<const Eigen::VectorXd> yv(y.data(),
                                               static_cast<Eigen::Index>(y.size()));
    Eigen::MatrixXd a = xm.transpose() * xm;
    a.diagonal().array() += lambda;
    const Eigen::VectorXd b = xm.transpose() * yv;

    Eigen::VectorXd beta;
    if (lambda == 0.0) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        if (!lu.isInvertible())
            throw DomainError("normal equations are singular; the design is "
                              "rank-deficient and lambda is 0");
        beta = lu.solve(b);
    } else {
        beta = a.ldlt().solve(b);
    }
    return {beta.data(), beta.data() + beta.size()};
}

std::vector<double> lasso_fit(const Matrix& x, const std::vector<double>& y,
                              double lambda) {
    check_design(x, y, lambda);
    const std::size_t rows = x.rows;
    const std::size_t cols = x.cols;
    const double threshold = lambda / 2.0;

    std::vector<double> colsq(cols, 0.0);
    double bmax = 0.0;  // ||X^T y||_inf, used to scale the tolerance
    for (std::size_t j = 0; j < cols; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            colsq[j] += x.at(i, j) * x.at(i, j);
            dot += x.at(i, j) * y[i];
        }
        bmax = std::max(bmax, std::abs(dot));
    }
    const double tol = 1e-8 * std::max(1.0, bmax);

    std::vector<double> beta(cols, 0.0);
    std::vector<double> residual = y;  // y - X beta
    constexpr int kMaxSweeps = 50000;
    double violation = 0.0;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (colsq[j] == 0.0) continue;
            double partial = 0.0;  // x_j . (y - X beta_{-j})
            for (std::size_t i = 0; i < rows; ++i)
                partial += x.at(i, j) * residual[i];
            partial += colsq[j] * beta[j];
            const double next = soft_threshold(partial, threshold) / colsq[j];
            const double delta = next - beta[j];
            if (delta != 0.0) {
                for (std::size_t i = 0; i < rows; ++i)
                    residual[i] -= delta * x.at(i, j);
                beta[j] = next;
            }
        }
        if (sweep % 32 == 31) {  // shed accumulated drift
            residual = y;
            for (std::size_t j = 0; j < cols; ++j) {
                if (beta[j] == 0.0) continue;
                for (std::size_t i = 0; i < rows; ++i)
                    residual[i] -= beta[j] * x.at(i, j);
            }
        }
        // KKT stationarity of 0.5*d/dbeta_j: x_j . r = threshold * sign(beta_j)
        // on the active set, |x_j . r| <= threshold elsewhere.
        violation = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            if (colsq[j] == 0.0) continue;
            double grad = 0.0;
            for (std::size_t i = 0; i < rows; ++i) grad += x.at(i, j) * residual[i];
            if (beta[j] > 0.0)
                violation = std::max(violation, std::abs(grad - threshold));
            else if (beta[j] < 0.0)
                violation = std::max(violation, std::abs(grad + threshold));
            else
                violation = std::max(violation, std::abs(grad) - threshold);
        }
        if (violation <= tol) return beta;
    }
    throw ConvergenceError("lasso did not reach stationarity after " +
                           std::to_string(kMaxSweeps) +
                           " sweeps (violation " + format_double(violation) +
                           ", tolerance " + format_double(tol) + ", lambda " +
                           format_double(lambda) + ")");
}

std::vector<std::size_t> lasso_select(const Matrix& x, const std::vector<double>& y,
                                      double lambda, double tol) {
    const std::vector<double> beta = lasso_fit(x, y, lambda);
    std::vector<std::size_t> selected;
    for (std::size_t j = 0; j < beta.size(); ++j)
        if (std::abs(beta[j]) > tol) selected.push_back(j);
    return selected;
}

std::size_t ClosedSetClassifier::predict_index(std::span<const double> features) const {
    if (classes_.empty()) throw DomainError("classifier is untrained");
    if (features.size() != feature_mean_.size())
        throw DomainError("feature width " + std::to_string(features.size()) +
                          " does not match the trained width " +
                          std::to_string(feature_mean_.size()));
    const std::vector<double> values = decision_values(features);
    return static_cast<std::size_t>(
        std::max_element(values.begin(), values.end()) - values.begin());
}

const std::string& ClosedSetClassifier::predict(
    std::span<const double> features) const {
    return classes_[predict_index(features)];
}

std::vector<double> ClosedSetClassifier::decision_values(
    std::span<const double> features) const {
    if (classes_.empty()) throw DomainError("classifier is untrained");
    if (features.size() != feature_mean_.size())
        throw DomainError("feature width " + std::to_string(features.size()) +
                          " does not match the trained width " +
                          std::to_string(feature_mean_.size()));
    std::vector<double> standardized(features.size());
    for (std::size_t j = 0; j < features.size(); ++j)
        standardized[j] = (features[j] - feature_mean_[j]) / feature_scale_[j];
    std::vector<double> values(classes_.size(), 0.0);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        double v = bias_[c];
        for (std::size_t j = 0; j < standardized.size(); ++j)
            v += weights_.at(c, j) * standardized[j];
        values[c] = v;
    }
    return values;
}

ClosedSetClassifier train_closed_set(const Matrix& x,
                                     const std::vector<std::string>& labels,
                                     const SvmOptions& options) {
    if (labels.size() != x.rows)
        throw DomainError("label count does not match row count");
    if (x.rows == 0 || x.cols == 0)
        throw DomainError("training needs a non-empty design matrix");
    if (!(options.lambda > 0.0))
        throw DomainError("hinge-loss training needs lambda > 0");
    if (options.epochs < 1) throw DomainError("training needs at least one epoch");

    ClosedSetClassifier model;
    model.classes_ = sorted_classes(labels);
    if (model.classes_.size() < 2)
        throw DomainError("closed-set training needs at least 2 classes");
    for (const std::string& cls : model.classes_) {
        const auto count = std::count(labels.begin(), labels.end(), cls);
        if (count < 2)
            throw DomainError("class '" + cls + "' has only " +
                              std::to_string(count) + " sample(s), need 2");
    }

    const std::size_t n = x.rows;
    const std::size_t p = x.cols;
    model.feature_mean_.assign(p, 0.0);
    model.feature_scale_.assign(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) model.feature_mean_[j] += x.at(i, j);
    for (double& m : model.feature_mean_) m /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            const double d = x.at(i, j) - model.feature_mean_[j];
            model.feature_scale_[j] += d * d;
        }
    for (double& s : model.feature_scale_) {
        s = std::sqrt(s / static_cast<double>(n));
        if (s == 0.0) s = 1.0;  // constant feature: center only
    }

    Matrix xs = Matrix::zeros(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j)
            xs.at(i, j) =
                (x.at(i, j) - model.feature_mean_[j]) / model.feature_scale_[j];

    // Epoch sample orders are shared across the per-class problems so the
    // whole fit is one deterministic function of (x, labels, options).
    std::vector<std::vector<std::size_t>> orders(
        static_cast<std::size_t>(options.epochs));
    for (int e = 0; e < options.epochs; ++e) {
        auto& order = orders[static_cast<std::size_t>(e)];
        order.resize(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        detail::Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(e)));
        for (std::size_t i = n; i > 1; --i)
            std::swap(order[i - 1], order[rng.uniform_int(i)]);
    }

    model.weights_ = Matrix::zeros(model.classes_.size(), p);
    model.bias_.assign(model.classes_.size(), 0.0);
    for (std::size_t c = 0; c < model.classes_.size(); ++c) {
        std::vector<double> target(n);
        for (std::size_t i = 0; i < n; ++i)
            target[i] = labels[i] == model.classes_[c] ? 1.0 : -1.0;

        std::vector<double> w(p, 0.0);
        double bias = 0.0;
        std::size_t t = 0;
        for (const auto& order : orders) {
            for (std::size_t i : order) {
                ++t;
                const double eta = 1.0 / (options.lambda * static_cast<double>(t));
                double margin = bias;
                for (std::size_t j = 0; j < p; ++j) margin += w[j] * xs.at(i, j);
                margin *= target[i];
                const double decay = 1.0 - eta * options.lambda;
                for (double& wj : w) wj *= decay;
                if (margin < 1.0) {
                    const double step = eta * target[i];
                    for (std::size_t j = 0; j < p; ++j) w[j] += step * xs.at(i, j);
                    bias += step;
                }
            }
        }
        for (std::size_t j = 0; j < p; ++j) model.weights_.at(c, j) = w[j];
        model.bias_[c] = bias;
    }
    return model;
}

struct ClassifierCodec {
    static void save(const ClosedSetClassifier& model, std::ostream& out) {
        ordered_json doc;
        doc["format"] = kClassifierFormat;
        doc["version"] = kClassifierVersion;
        doc["classes"] = model.classes_;
        doc["feature_mean"] = model.feature_mean_;
        doc["feature_scale"] = model.feature_scale_;
        doc["bias"] = model.bias_;
        auto& weights = doc["weights"] = ordered_json::array();
        for (std::size_t c = 0; c < model.classes_.size(); ++c) {
            const auto row = model.weights_.row(c);
            weights.push_back(std::vector<double>(row.begin(), row.end()));
        }
        out << doc.dump(2) << '\n';
    }

    static ClosedSetClassifier load(std::istream& in) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid classifier JSON: ") + e.what());
        }
        if (!doc.is_object() || require_key(doc, "format") != kClassifierFormat)
            throw ParseError("not a classifier document");
        if (require_key(doc, "version").get<int>() != kClassifierVersion)
            throw ParseError("unsupported classifier version");
        ClosedSetClassifier model;
        try {
            model.classes_ =
                require_key(doc, "classes").get<std::vector<std::string>>();
            model.feature_mean_ =
                require_key(doc, "feature_mean").get<std::vector<double>>();
            model.feature_scale_ =
                require_key(doc, "feature_scale").get<std::vector<double>>();
            model.bias_ = require_key(doc, "bias").get<std::vector<double>>();
            const auto& weights = require_key(doc, "weights");
            model.weights_ =
                Matrix::zeros(model.classes_.size(), model.feature_mean_.size());
            if (weights.size() != model.classes_.size())
                throw ParseError("weight row count does not match class count");
            for (std::size_t c = 0; c < model.classes_.size(); ++c) {
                const auto row = weights[c].get<std::vector<double>>();
                if (row.size() != model.feature_mean_.size())
                    throw ParseError("weight row width does not match feature width");
                for (std::size_t j = 0; j < row.size(); ++j)
                    model.weights_.at(c, j) = row[j];
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed classifier document: ") + e.what());
        }
        if (model.classes_.size() < 2 || model.bias_.size() != model.classes_.size() ||
            model.feature_scale_.size() != model.feature_mean_.size())
            throw ParseError("classifier document fields are inconsistent");
        return model;
    }
};

void ClosedSetClassifier::save(std::ostream& out) const {
    ClassifierCodec::save(*this, out);
}

void ClosedSetClassifier::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write classifier file " + path.string());
    save(out);
    if (!out) throw IoError("failed writing classifier file " + path.string());
}

ClosedSetClassifier ClosedSetClassifier::load(std::istream& in) {
    return ClassifierCodec::load(in);
}

ClosedSetClassifier ClosedSetClassifier::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open classifier file " + path.string());
    return load(in);
}

CvResult cross_validate(const Matrix& x, const std::vector<std::string>& labels,
                        int folds, const SvmOptions& options,
                        std::uint64_t shuffle_seed) {
    if (labels.size() != x.rows)
        throw DomainError("label count does not match row count");
    if (folds < 2) throw DomainError("cross-validation needs at least 2 folds");
    if (static_cast<std::size_t>(folds) > x.rows)
        throw DomainError("more folds than samples");

    std::vector<std::size_t> order(x.rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    detail::Rng rng(shuffle_seed);
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.uniform_int(i)]);

    CvResult result;
    for (int f = 0; f < folds; ++f) {
        std::vector<std::size_t> test_rows;
        std::vector<std::size_t> train_rows;
        for (std::size_t i = 0; i < order.size(); ++i)
            (static_cast<int>(i % static_cast<std::size_t>(folds)) == f ? test_rows
                                                                        : train_rows)
                .push_back(order[i]);

        Matrix train = Matrix::zeros(train_rows.size(), x.cols);
        std::vector<std::string> train_labels(train_rows.size());
        for (std::size_t i = 0; i < train_rows.size(); ++i) {
            const auto row = x.row(train_rows[i]);
            std::copy(row.begin(), row.end(), train.data.begin() +
                                                  static_cast<std::ptrdiff_t>(
                                                      i * x.cols));
            train_labels[i] = labels[train_rows[i]];
        }
        const ClosedSetClassifier model =
            train_closed_set(train, train_labels, options);

        std::size_t correct = 0;
        for (std::size_t row : test_rows)
            if (model.predict(x.row(row)) == labels[row]) ++correct;
        result.fold_accuracy.push_back(static_cast<double>(correct) /
                                       static_cast<double>(test_rows.size()));
    }
    result.mean_accuracy =
        std::accumulate(result.fold_accuracy.begin(), result.fold_accuracy.end(),
                        0.0) /
        static_cast<double>(result.fold_accuracy.size());
    return result;
}

FlawReport open_set_flaw_demo(const ClosedSetClassifier& classifier,
                              const std::vector<Trial>& unseen_word_trials,
                              const Profile& profile, std::uint64_t feature_seed) {
    if (unseen_word_trials.empty())
        throw DomainError("flaw demonstration needs unseen-word trials");
    const bool extended =
        classifier.feature_width() ==
        static_cast<std::size_t>(kCoreFeatures + kNumChannels * (kDisBins + 1));

    FlawReport report;
    std::size_t denied = 0;
    for (const Trial& trial : unseen_word_trials) {
        const Trial filtered = filter_trial(trial, profile.sg_window,
                                            profile.sg_degree);
        const FeatureVector fv = extract_features(filtered, feature_seed);
        const Matrix row = feature_matrix({fv}, extended);
        FlawReport::Row out;
        out.assigned_class = classifier.predict(row.row(0));
        const ScoreReport score = authenticate(trial, profile);
        out.tss = score.tss;
        out.denied = !score.accepted;
        if (out.denied) ++denied;
        report.rows.push_back(std::move(out));
    }
    report.labeled_fraction = 1.0;  // predict() always returns a class
    report.denial_rate =
        static_cast<double>(denied) / static_cast<double>(report.rows.size());
    return report;
}

} // namespace wristauth
