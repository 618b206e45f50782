#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wristauth/dsp.hpp"
#include "wristauth/dtw.hpp"
#include "wristauth/signal.hpp"

namespace wristauth {

inline constexpr double kDefaultDelta = 0.55;
inline constexpr std::array<double, kNumChannels> kUniformMu = {
    1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6};

/// Trained user template. Enrollment trials are stored post-filtering so
/// verification never re-filters them; the filter settings used at
/// enrollment are carried along so probes get the same treatment.
struct Profile {
    std::vector<Trial> trials;
    DistanceVector ideal{};                                  // e
    std::array<double, kNumChannels> weights_mu = kUniformMu;
    double threshold_delta = kDefaultDelta;
    std::vector<double> rank_weights_rho;                    // size n, sums to 1
    int sg_window = kDefaultSgWindow;
    int sg_degree = kDefaultSgDegree;
    std::string user_label;
    std::string word_label;

    std::size_t n() const noexcept { return trials.size(); }

    bool operator==(const Profile&) const = default;
};

/// Throws ValidationError unless the profile invariants hold:
/// n >= 2, sum(mu) == 1 and sum(rho) == 1 within 1e-12, every ideal
/// component finite and >= 0, delta in (0, 1].
void validate_profile(const Profile& profile);

/// Per-dimension multiset of the n(n-1)/2 unordered pairwise distances.
struct PairwiseDistances {
    std::array<std::vector<double>, kNumChannels> per_dim;
};

/// DTW distances between all unordered pairs of (already filtered) trials.
/// Requires n >= 2.
PairwiseDistances pairwise_distances(const std::vector<Trial>& trials);

/// Nearest-rank upper quartile: sort ascending, take the element at
/// 1-based index ceil(0.75*m). Requires a non-empty input.
double upper_quartile(std::vector<double> values);

/// Component k = upper_quartile of the dimension-k pairwise multiset.
DistanceVector ideal_distance(const PairwiseDistances& pd);

/// Poisson-pmf rank weights: lambda = max(1, floor(n/5)),
/// beta_i = lambda^i e^-lambda / i! for i = 1..n, rho = beta / sum(beta).
/// Front-loads the smallest-ranked (most similar) trials. Requires n >= 2.
std::vector<double> poisson_rank_weights(int n);

/// Per dimension k: DTW distances from the (already filtered) probe to each
/// enrollment trial, sorted ascending and combined with the rank weights.
DistanceVector distance_to_group(const Trial& filtered_probe,
                                 const Profile& profile);

struct TrainOptions {
    std::array<double, kNumChannels> weights_mu = kUniformMu;
    double threshold_delta = kDefaultDelta;
    int sg_window = kDefaultSgWindow;
    int sg_degree = kDefaultSgDegree;
};

/// Filters the raw enrollment trials, computes the group ideal distance
/// and the rank weights, and assembles the template. Requires n >= 2 valid
/// trials. Deterministic: identical inputs produce identical profiles.
Profile train(const std::vector<Trial>& raw_trials,
              const TrainOptions& options = {});

/// Profile document I/O (JSON, schema documented in the README).
/// Round-trips are lossless: load_profile(save_profile(p)) == p.
void save_profile(const Profile& profile, std::ostream& out);
void save_profile(const Profile& profile, const std::filesystem::path& path);
std::string profile_to_string(const Profile& profile);
Profile load_profile(std::istream& in);
Profile load_profile(const std::filesystem::path& path);

} // namespace wristauth
