#include "wristauth/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace wristauth {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kProfileFormat = "wristauth-profile";
constexpr int kProfileVersion = 1;

void check_weight_sum(const char* what, double sum, double tol) {
    if (std::abs(sum - 1.0) > tol)
        throw ValidationError(std::string(what) + " sum to " + format_double(sum) +
                              ", expected 1");
}

const nlohmann::json& require_key(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string("profile document is missing key '") + key + "'");
    return *it;
}

} // namespace

void validate_profile(const Profile& profile) {
    if (profile.n() < 2)
        throw ValidationError("profile needs at least 2 enrollment trials, has " +
                              std::to_string(profile.n()));
    if (profile.rank_weights_rho.size() != profile.n())
        throw ValidationError("rank weight count " +
                              std::to_string(profile.rank_weights_rho.size()) +
                              " does not match trial count " +
                              std::to_string(profile.n()));
    for (const Trial& trial : profile.trials) validate_trial(trial);

    double mu_sum = 0.0;
    for (double mu : profile.weights_mu) {
        if (!(mu >= 0.0))
            throw ValidationError("dimension weights must be non-negative");
        mu_sum += mu;
    }
    check_weight_sum("dimension weights", mu_sum, 1e-12);

    double rho_sum = 0.0;
    for (double rho : profile.rank_weights_rho) {
        if (!(rho >= 0.0))
            throw ValidationError("rank weights must be non-negative");
        rho_sum += rho;
    }
    check_weight_sum("rank weights", rho_sum, 1e-12);

    for (double e : profile.ideal) {
        if (!std::isfinite(e) || e < 0.0)
            throw ValidationError("ideal distance components must be finite and >= 0");
    }
    if (!(profile.threshold_delta > 0.0 && profile.threshold_delta <= 1.0))
        throw ValidationError("threshold must lie in (0, 1]");
    if (profile.sg_window < 3 || profile.sg_window % 2 == 0 || profile.sg_degree < 0 ||
        profile.sg_degree >= profile.sg_window)
        throw ValidationError("invalid filter settings in profile");
}

PairwiseDistances pairwise_distances(const std::vector<Trial>& trials) {
    if (trials.size() < 2)
        throw DomainError("need at least 2 trials for pairwise distances, got " +
                          std::to_string(trials.size()));
    PairwiseDistances pd;
    const std::size_t pairs = trials.size() * (trials.size() - 1) / 2;
    for (auto& dim : pd.per_dim) dim.reserve(pairs);
    for (std::size_t i = 0; i + 1 < trials.size(); ++i) {
        for (std::size_t j = i + 1; j < trials.size(); ++j) {
            DistanceVector d = dtw_vector(trials[i], trials[j]);
            for (int k = 0; k < kNumChannels; ++k) pd.per_dim[k].push_back(d[k]);
        }
    }
    return pd;
}

double upper_quartile(std::vector<double> values) {
    if (values.empty()) throw DomainError("upper quartile of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size();
    const std::size_t rank = (3 * m + 3) / 4;  // ceil(0.75*m), 1-based
    return values[rank - 1];
}

DistanceVector ideal_distance(const PairwiseDistances& pd) {
    DistanceVector e{};
    for (int k = 0; k < kNumChannels; ++k) e[k] = upper_quartile(pd.per_dim[k]);
    return e;
}

std::vector<double> poisson_rank_weights(int n) {
    if (n < 2)
        throw DomainError("rank weights need n >= 2, got " + std::to_string(n));
    const int lambda = std::max(1, n / 5);
    std::vector<double> beta(static_cast<std::size_t>(n));
    double term = lambda * std::exp(-static_cast<double>(lambda));  // i = 1
    for (int i = 1; i <= n; ++i) {
        beta[static_cast<std::size_t>(i - 1)] = term;
        term *= static_cast<double>(lambda) / (i + 1);
    }
    const double sum = std::accumulate(beta.begin(), beta.end(), 0.0);
    for (double& b : beta) b /= sum;
    return beta;
}

DistanceVector distance_to_group(const Trial& filtered_probe, const Profile& profile) {
    validate_profile(profile);
    std::array<std::vector<double>, kNumChannels> dists;
    for (auto& d : dists) d.reserve(profile.n());
    for (const Trial& enrolled : profile.trials) {
        DistanceVector d = dtw_vector(filtered_probe, enrolled);
        for (int k = 0; k < kNumChannels; ++k) dists[k].push_back(d[k]);
    }
    DistanceVector s{};
    for (int k = 0; k < kNumChannels; ++k) {
        std::sort(dists[k].begin(), dists[k].end());
        double acc = 0.0;
        for (std::size_t i = 0; i < dists[k].size(); ++i)
            acc += profile.rank_weights_rho[i] * dists[k][i];
        s[k] = acc;
    }
    return s;
}

Profile train(const std::vector<Trial>& raw_trials, const TrainOptions& options) {
    if (raw_trials.size() < 2)
        throw DomainError("enrollment needs at least 2 trials, got " +
                          std::to_string(raw_trials.size()));

    Profile profile;
    profile.trials.reserve(raw_trials.size());
    for (const Trial& raw : raw_trials) {
        validate_trial(raw);
        profile.trials.push_back(
            filter_trial(raw, options.sg_window, options.sg_degree));
        if (profile.user_label.empty())
            profile.user_label = raw.user_label;
        else if (!raw.user_label.empty() && raw.user_label != profile.user_label)
            throw ValidationError("enrollment trials carry conflicting user labels '" +
                                  profile.user_label + "' and '" + raw.user_label + "'");
        if (profile.word_label.empty())
            profile.word_label = raw.word_label;
        else if (!raw.word_label.empty() && raw.word_label != profile.word_label)
            throw ValidationError("enrollment trials carry conflicting word labels '" +
                                  profile.word_label + "' and '" + raw.word_label + "'");
    }

    profile.ideal = ideal_distance(pairwise_distances(profile.trials));
    profile.rank_weights_rho =
        poisson_rank_weights(static_cast<int>(profile.trials.size()));

    double mu_sum = 0.0;
    for (double mu : options.weights_mu) {
        if (!(mu >= 0.0)) throw DomainError("dimension weights must be non-negative");
        mu_sum += mu;
    }
    if (std::abs(mu_sum - 1.0) > 1e-9)
        throw DomainError("dimension weights sum to " + format_double(mu_sum) +
                          ", expected 1");
    profile.weights_mu = options.weights_mu;
    for (double& mu : profile.weights_mu) mu /= mu_sum;

    profile.threshold_delta = options.threshold_delta;
    profile.sg_window = options.sg_window;
    profile.sg_degree = options.sg_degree;
    validate_profile(profile);
    return profile;
}

void save_profile(const Profile& profile, std::ostream& out) {
    ordered_json doc;
    doc["format"] = kProfileFormat;
    doc["version"] = kProfileVersion;
    doc["user"] = profile.user_label;
    doc["word"] = profile.word_label;
    doc["n"] = profile.n();
    doc["ideal"] = profile.ideal;
    doc["weights_mu"] = profile.weights_mu;
    doc["threshold_delta"] = profile.threshold_delta;
    doc["rank_weights_rho"] = profile.rank_weights_rho;
    doc["filter"] = {{"window", profile.sg_window}, {"degree", profile.sg_degree}};
    auto& trials = doc["trials"] = ordered_json::array();
    for (const Trial& trial : profile.trials)
        trials.push_back(write_trial(trial, TrialFormat::csv));
    out << doc.dump(2) << '\n';
}

void save_profile(const Profile& profile, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write profile file " + path.string());
    save_profile(profile, out);
    if (!out) throw IoError("failed writing profile file " + path.string());
}

std::string profile_to_string(const Profile& profile) {
    std::ostringstream out;
    save_profile(profile, out);
    return out.str();
}

Profile load_profile(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid profile JSON: ") + e.what());
    }
    if (!doc.is_object() || require_key(doc, "format") != kProfileFormat)
        throw ParseError("not a profile document");
    if (require_key(doc, "version").get<int>() != kProfileVersion)
        throw ParseError("unsupported profile version");

    Profile profile;
    try {
        profile.user_label = require_key(doc, "user").get<std::string>();
        profile.word_label = require_key(doc, "word").get<std::string>();
        const auto& ideal = require_key(doc, "ideal");
        const auto& mu = require_key(doc, "weights_mu");
        if (ideal.size() != kNumChannels || mu.size() != kNumChannels)
            throw ParseError("profile vectors must have 6 components");
        for (int k = 0; k < kNumChannels; ++k) {
            profile.ideal[k] = ideal[k].get<double>();
            profile.weights_mu[k] = mu[k].get<double>();
        }
        profile.threshold_delta = require_key(doc, "threshold_delta").get<double>();
        profile.rank_weights_rho =
            require_key(doc, "rank_weights_rho").get<std::vector<double>>();
        const auto& filter = require_key(doc, "filter");
        profile.sg_window = require_key(filter, "window").get<int>();
        profile.sg_degree = require_key(filter, "degree").get<int>();
        for (const auto& text : require_key(doc, "trials"))
            profile.trials.push_back(
                parse_trial(text.get<std::string>(), TrialFormat::csv));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed profile document: ") + e.what());
    }
    if (require_key(doc, "n").get<std::size_t>() != profile.n())
        throw ParseError("profile trial count does not match its 'n' field");
    validate_profile(profile);
    return profile;
}

Profile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile file " + path.string());
    return load_profile(in);
}

} // namespace wristauth
