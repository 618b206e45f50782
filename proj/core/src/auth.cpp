#include "wristauth/auth.hpp"

#include <cmath>

#include <json.hpp>

#include "wristauth/dsp.hpp"
#include "wristauth/eval.hpp"

namespace wristauth {

std::array<double, kNumChannels> similarity_scores(const DistanceVector& e,
                                                   const DistanceVector& s) {
    std::array<double, kNumChannels> ss{};
    for (int k = 0; k < kNumChannels; ++k) {
        if (!std::isfinite(e[k]) || e[k] < 0.0 || !std::isfinite(s[k]) || s[k] < 0.0)
            throw DomainError("distances must be finite and non-negative");
        // A probe no farther from the group than the enrollment trials are
        // from each other scores 1; beyond that the score decays as e/s.
        ss[k] = s[k] == 0.0 ? 1.0 : std::min(e[k] / s[k], 1.0);
    }
    return ss;
}

double total_similarity(const std::array<double, kNumChannels>& ss,
                        const std::array<double, kNumChannels>& mu) {
    double mu_sum = 0.0;
    for (double m : mu) {
        if (!(m >= 0.0)) throw DomainError("dimension weights must be non-negative");
        mu_sum += m;
    }
    if (std::abs(mu_sum - 1.0) > 1e-9)
        throw DomainError("dimension weights sum to " + format_double(mu_sum) +
                          ", expected 1");
    double tss = 0.0;
    for (int k = 0; k < kNumChannels; ++k) {
        if (!(ss[k] >= 0.0 && ss[k] <= 1.0))
            throw DomainError("similarity scores must lie in [0, 1]");
        tss += mu[k] * ss[k];
    }
    return tss;
}

ScoreReport authenticate(const Trial& probe, const Profile& profile) {
    validate_trial(probe);
    return authenticate_filtered(
        filter_trial(probe, profile.sg_window, profile.sg_degree), profile);
}

ScoreReport authenticate_filtered(const Trial& filtered_probe, const Profile& profile) {
    DistanceVector s = distance_to_group(filtered_probe, profile);
    ScoreReport report;
    report.ss = similarity_scores(profile.ideal, s);
    report.tss = total_similarity(report.ss, profile.weights_mu);
    report.threshold = profile.threshold_delta;
    report.accepted = report.tss >= profile.threshold_delta;
    return report;
}

std::array<double, kNumChannels> weights_from_auc(
    const std::array<double, kNumChannels>& auc_per_dim) {
    std::array<double, kNumChannels> b{};
    double sum = 0.0;
    for (int k = 0; k < kNumChannels; ++k) {
        const double a = auc_per_dim[k];
        if (!std::isfinite(a) || a < 0.0 || a > 1.0)
            throw DomainError("AUC values must lie in [0, 1]");
        b[k] = std::max(a - kAucFloor, 0.0);
        sum += b[k];
    }
    if (sum == 0.0) return kUniformMu;  // no dimension clears the floor
    for (double& v : b) v /= sum;
    return b;
}

CalibrationResult calibrate_weights(const DimensionScores& genuine,
                                    const DimensionScores& impostor) {
    CalibrationResult result;
    for (int k = 0; k < kNumChannels; ++k) {
        if (genuine[k].empty() || impostor[k].empty())
            throw DomainError("calibration needs genuine and impostor scores for "
                              "every dimension");
        result.auc_per_dim[k] = auc(genuine[k], impostor[k]);
    }
    result.weights_mu = weights_from_auc(result.auc_per_dim);
    result.uniform_fallback = true;
    for (double a : result.auc_per_dim)
        if (a > kAucFloor) result.uniform_fallback = false;
    return result;
}

std::string score_report_json(const ScoreReport& report) {
    nlohmann::ordered_json doc;
    doc["tss"] = report.tss;
    doc["ss"] = report.ss;
    doc["threshold"] = report.threshold;
    doc["decision"] = report.accepted ? "accept" : "deny";
    return doc.dump(2);
}

} // namespace wristauth
