#pragma once

#include <array>
#include <string>
#include <vector>

#include "wristauth/dtw.hpp"
#include "wristauth/profile.hpp"

namespace wristauth {

/// Operating points exposed as named CLI presets.
inline constexpr double kDeltaDefault = kDefaultDelta;
inline constexpr double kDeltaHardened = 0.65;
inline constexpr double kDeltaBalanced = 0.62;

/// AUC floor used by the weight calibration.
inline constexpr double kAucFloor = 0.85;

struct ScoreReport {
    std::array<double, kNumChannels> ss{};  // each in [0, 1]
    double tss = 0.0;                       // sum(mu_k * ss_k)
    double threshold = kDeltaDefault;
    bool accepted = false;

    bool operator==(const ScoreReport&) const = default;
};

/// Per-dimension similarity: ss_k = min(e_k / s_k, 1) when s_k > 0, and 1
/// when s_k = 0 (the probe is at least as close as the ideal). Requires
/// both vectors componentwise finite and >= 0.
std::array<double, kNumChannels> similarity_scores(const DistanceVector& e,
                                                   const DistanceVector& s);

/// Weighted total score in [0, 1]. Requires mu >= 0 with sum(mu) = 1
/// within 1e-9.
double total_similarity(const std::array<double, kNumChannels>& ss,
                        const std::array<double, kNumChannels>& mu);

/// Full verification of a raw probe: filter with the profile's settings,
/// compute the group distance, score, and decide. Accepts iff
/// tss >= threshold_delta (inclusive).
ScoreReport authenticate(const Trial& probe, const Profile& profile);

/// Scores an already filtered probe (skips the filter stage).
ScoreReport authenticate_filtered(const Trial& filtered_probe,
                                  const Profile& profile);

/// mu_k = max(auc_k - 0.85, 0), normalized to sum 1. Falls back to uniform
/// weights when every dimension is at or below the floor.
std::array<double, kNumChannels> weights_from_auc(
    const std::array<double, kNumChannels>& auc_per_dim);

/// Per-dimension score sets, genuine as positive class.
using DimensionScores = std::array<std::vector<double>, kNumChannels>;

struct CalibrationResult {
    std::array<double, kNumChannels> auc_per_dim{};
    std::array<double, kNumChannels> weights_mu{};
    bool uniform_fallback = false;
};

/// Computes the per-dimension AUC of genuine vs impostor similarity scores
/// and derives weights via weights_from_auc. Requires at least one genuine
/// and one impostor score per dimension.
CalibrationResult calibrate_weights(const DimensionScores& genuine,
                                    const DimensionScores& impostor);

/// {tss, ss[6], threshold, decision} as a JSON object.
std::string score_report_json(const ScoreReport& report);

} // namespace wristauth
