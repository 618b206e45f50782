#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wristauth/auth.hpp"
#include "wristauth/dataset.hpp"
#include "wristauth/profile.hpp"

namespace wristauth {

/// Mann-Whitney AUC: the fraction of (genuine, impostor) pairs with
/// genuine > impostor, ties counted 0.5. Requires both sets non-empty.
double auc(const std::vector<double>& genuine_scores,
           const std::vector<double>& impostor_scores);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double threshold = 0.0;
};

/// ROC of the inclusive rule "accept iff score >= threshold", swept over
/// the union of observed scores plus +/-infinity sentinels. Consecutive
/// duplicate points are dropped; the endpoints (0,0) and (1,1) are always
/// present and the trapezoidal area equals auc().
struct RocCurve {
    std::vector<RocPoint> points;
};

RocCurve roc_curve(const std::vector<double>& genuine_scores,
                   const std::vector<double>& impostor_scores);

/// Trapezoidal area under a curve.
double roc_area(const RocCurve& curve);

/// Flat CSV with header `fpr,tpr,threshold`, one point per row.
void write_roc_csv(const RocCurve& curve, std::ostream& out);

struct Rates {
    double fnr = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

/// fnr = fraction of genuine < delta, fpr = fraction of impostor >= delta,
/// tpr = 1 - fnr. Matches the inclusive acceptance rule of authenticate().
Rates rates_at(const std::vector<double>& genuine_scores,
               const std::vector<double>& impostor_scores, double delta);

double median(std::vector<double> values);

/// Attack-scenario scoring against one profile.
struct ScenarioReport {
    std::string name;
    std::vector<double> tss;       // one score per trial, in input order
    double median_tss = 0.0;
    double max_tss = 0.0;
    double margin_to_delta = 0.0;  // profile delta minus max_tss
    double accept_rate = 0.0;      // fraction with tss >= profile delta
};

/// Scores every scenario's trials against the profile. Requires a
/// non-empty scenario list with non-empty trial sets.
std::vector<ScenarioReport> attack_eval(
    const Profile& profile,
    const std::vector<std::pair<std::string, std::vector<Trial>>>& scenarios);

struct FaultTolerancePoint {
    double bad_fraction = 0.0;
    double tpr = 0.0;         // accept rate on genuine probes
    double fnr_on_bad = 0.0;  // deny rate on corrupted probes
};

/// For each fraction f in [0, 1): retrains on a mixture of
/// round(f*n) corrupted and n - round(f*n) clean enrollment trials
/// (n = |clean_trials|) and measures the decision rates on the probe sets.
std::vector<FaultTolerancePoint> fault_tolerance_sweep(
    const std::vector<Trial>& clean_trials, const std::vector<Trial>& bad_trials,
    const std::vector<Trial>& test_genuine, const std::vector<Trial>& test_bad,
    const std::vector<double>& fractions, const TrainOptions& options = {});

/// Self / non-self discrimination harness: per user, train on the
/// enrollment trials and probe with the user's own genuine trials and with
/// every other user's genuine trials.
struct EvalOptions {
    TrainOptions train;
};

struct UserRates {
    std::string user;
    Rates rates;
};

struct DiscriminationResult {
    std::vector<UserRates> per_user;
    double mean_fnr = 0.0;
    double mean_fpr = 0.0;
    double mean_tpr = 0.0;
    std::array<double, kNumChannels> auc_per_dim{};
    double auc_total = 0.0;           // AUC of pooled genuine vs impostor TSS
    std::vector<double> genuine_tss;  // pooled
    std::vector<double> impostor_tss; // pooled
};

DiscriminationResult evaluate_discrimination(
    const std::vector<UserDataset>& users, const EvalOptions& options = {});

} // namespace wristauth
