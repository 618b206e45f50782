#include "wristauth/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "wristauth/dsp.hpp"

namespace wristauth {

namespace {

void check_scores(const std::vector<double>& genuine,
                  const std::vector<double>& impostor) {
    if (genuine.empty() || impostor.empty())
        throw DomainError("score comparison needs non-empty genuine and impostor sets");
}

} // namespace

double auc(const std::vector<double>& genuine_scores,
           const std::vector<double>& impostor_scores) {
    check_scores(genuine_scores, impostor_scores);
    std::vector<double> imp = impostor_scores;
    std::sort(imp.begin(), imp.end());
    // Integer win/tie counts keep the statistic exact; the only rounding
    // happens in the final division.
    std::size_t wins = 0;
    std::size_t ties = 0;
    for (double g : genuine_scores) {
        wins += static_cast<std::size_t>(
            std::lower_bound(imp.begin(), imp.end(), g) - imp.begin());
        ties += static_cast<std::size_t>(std::upper_bound(imp.begin(), imp.end(), g) -
                                         std::lower_bound(imp.begin(), imp.end(), g));
    }
    const double pairs =
        static_cast<double>(genuine_scores.size()) * impostor_scores.size();
    return (static_cast<double>(wins) + 0.5 * static_cast<double>(ties)) / pairs;
}

RocCurve roc_curve(const std::vector<double>& genuine_scores,
                   const std::vector<double>& impostor_scores) {
    check_scores(genuine_scores, impostor_scores);
    std::vector<double> gen = genuine_scores;
    std::vector<double> imp = impostor_scores;
    std::sort(gen.begin(), gen.end(), std::greater<>());
    std::sort(imp.begin(), imp.end(), std::greater<>());

    std::vector<double> thresholds;
    thresholds.reserve(gen.size() + imp.size());
    thresholds.insert(thresholds.end(), gen.begin(), gen.end());
    thresholds.insert(thresholds.end(), imp.begin(), imp.end());
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                     thresholds.end());

    RocCurve curve;
    curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
    std::size_t gi = 0;
    std::size_t ii = 0;
    for (double t : thresholds) {
        while (gi < gen.size() && gen[gi] >= t) ++gi;
        while (ii < imp.size() && imp[ii] >= t) ++ii;
        RocPoint point{static_cast<double>(ii) / imp.size(),
                       static_cast<double>(gi) / gen.size(), t};
        const RocPoint& last = curve.points.back();
        if (point.fpr != last.fpr || point.tpr != last.tpr)
            curve.points.push_back(point);
    }
    if (curve.points.back().fpr != 1.0 || curve.points.back().tpr != 1.0)
        curve.points.push_back({1.0, 1.0, -std::numeric_limits<double>::infinity()});
    return curve;
}

double roc_area(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const RocPoint& a = curve.points[i - 1];
        const RocPoint& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
    }
    return area;
}

void write_roc_csv(const RocCurve& curve, std::ostream& out) {
    out << "fpr,tpr,threshold\n";
    for (const RocPoint& p : curve.points)
        out << format_double(p.fpr) << ',' << format_double(p.tpr) << ','
            << format_double(p.threshold) << '\n';
}

Rates rates_at(const std::vector<double>& genuine_scores,
               const std::vector<double>& impostor_scores, double delta) {
    check_scores(genuine_scores, impostor_scores);
    std::size_t denied = 0;
    for (double g : genuine_scores)
        if (g < delta) ++denied;
    std::size_t passed = 0;
    for (double i : impostor_scores)
        if (i >= delta) ++passed;
    Rates rates;
    rates.fnr = static_cast<double>(denied) / genuine_scores.size();
    rates.fpr = static_cast<double>(passed) / impostor_scores.size();
    rates.tpr = 1.0 - rates.fnr;
    return rates;
}

double median(std::vector<double> values) {
    if (values.empty()) throw DomainError("median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size();
    return m % 2 == 1 ? values[m / 2]
                      : (values[m / 2 - 1] + values[m / 2]) / 2.0;
}

std::vector<ScenarioReport> attack_eval(
    const Profile& profile,
    const std::vector<std::pair<std::string, std::vector<Trial>>>& scenarios) {
    if (scenarios.empty()) throw DomainError("attack evaluation needs scenarios");
    validate_profile(profile);
    std::vector<ScenarioReport> reports;
    reports.reserve(scenarios.size());
    for (const auto& [name, trials] : scenarios) {
        if (trials.empty())
            throw DomainError("attack scenario '" + name + "' has no trials");
        ScenarioReport report;
        report.name = name;
        report.tss.reserve(trials.size());
        std::size_t accepted = 0;
        for (const Trial& trial : trials) {
            const ScoreReport score = authenticate(trial, profile);
            report.tss.push_back(score.tss);
            if (score.accepted) ++accepted;
        }
        report.median_tss = median(report.tss);
        report.max_tss = *std::max_element(report.tss.begin(), report.tss.end());
        report.margin_to_delta = profile.threshold_delta - report.max_tss;
        report.accept_rate = static_cast<double>(accepted) / trials.size();
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<FaultTolerancePoint> fault_tolerance_sweep(
    const std::vector<Trial>& clean_trials, const std::vector<Trial>& bad_trials,
    const std::vector<Trial>& test_genuine, const std::vector<Trial>& test_bad,
    const std::vector<double>& fractions, const TrainOptions& options) {
    const std::size_t n = clean_trials.size();
    if (n < 2) throw DomainError("fault-tolerance sweep needs >= 2 clean trials");
    if (test_genuine.empty() || test_bad.empty())
        throw DomainError("fault-tolerance sweep needs genuine and bad probes");

    std::vector<FaultTolerancePoint> curve;
    curve.reserve(fractions.size());
    for (double f : fractions) {
        if (!(f >= 0.0 && f < 1.0))
            throw DomainError("bad-trial fraction must lie in [0, 1)");
        const std::size_t k =
            static_cast<std::size_t>(std::lround(f * static_cast<double>(n)));
        if (k > bad_trials.size())
            throw DomainError("fraction " + format_double(f) + " needs " +
                              std::to_string(k) + " bad trials, only " +
                              std::to_string(bad_trials.size()) + " available");

        std::vector<Trial> mixture(clean_trials.begin(),
                                   clean_trials.begin() +
                                       static_cast<std::ptrdiff_t>(n - k));
        mixture.insert(mixture.end(), bad_trials.begin(),
                       bad_trials.begin() + static_cast<std::ptrdiff_t>(k));
        const Profile profile = train(mixture, options);

        FaultTolerancePoint point;
        point.bad_fraction = f;
        std::size_t accepted = 0;
        for (const Trial& probe : test_genuine)
            if (authenticate(probe, profile).accepted) ++accepted;
        point.tpr = static_cast<double>(accepted) / test_genuine.size();
        std::size_t denied = 0;
        for (const Trial& probe : test_bad)
            if (!authenticate(probe, profile).accepted) ++denied;
        point.fnr_on_bad = static_cast<double>(denied) / test_bad.size();
        curve.push_back(point);
    }
    return curve;
}

DiscriminationResult evaluate_discrimination(const std::vector<UserDataset>& users,
                                             const EvalOptions& options) {
    if (users.size() < 2)
        throw DomainError("discrimination evaluation needs at least 2 users");
    for (const UserDataset& user : users) {
        if (user.enroll.size() < 2)
            throw DomainError("user " + user.id + " has fewer than 2 enrollment trials");
        if (user.genuine.empty())
            throw DomainError("user " + user.id + " has no genuine probes");
    }

    // Probes are filtered once up front; every profile uses the same filter
    // settings, so the per-profile re-filtering in authenticate() would only
    // repeat work.
    std::vector<std::vector<Trial>> filtered(users.size());
    for (std::size_t u = 0; u < users.size(); ++u) {
        filtered[u].reserve(users[u].genuine.size());
        for (const Trial& probe : users[u].genuine)
            filtered[u].push_back(
                filter_trial(probe, options.train.sg_window, options.train.sg_degree));
    }

    DiscriminationResult result;
    DimensionScores genuine_ss{};
    DimensionScores impostor_ss{};
    for (std::size_t u = 0; u < users.size(); ++u) {
        const Profile profile = train(users[u].enroll, options.train);
        std::vector<double> genuine_tss;
        std::vector<double> impostor_tss;
        for (std::size_t v = 0; v < users.size(); ++v) {
            for (const Trial& probe : filtered[v]) {
                const ScoreReport score = authenticate_filtered(probe, profile);
                if (v == u) {
                    genuine_tss.push_back(score.tss);
                    for (int k = 0; k < kNumChannels; ++k)
                        genuine_ss[k].push_back(score.ss[k]);
                } else {
                    impostor_tss.push_back(score.tss);
                    for (int k = 0; k < kNumChannels; ++k)
                        impostor_ss[k].push_back(score.ss[k]);
                }
            }
        }
        UserRates per_user;
        per_user.user = users[u].id;
        per_user.rates =
            rates_at(genuine_tss, impostor_tss, options.train.threshold_delta);
        result.per_user.push_back(std::move(per_user));
        result.genuine_tss.insert(result.genuine_tss.end(), genuine_tss.begin(),
                                  genuine_tss.end());
        result.impostor_tss.insert(result.impostor_tss.end(), impostor_tss.begin(),
                                   impostor_tss.end());
    }

    for (const UserRates& ur : result.per_user) {
        result.mean_fnr += ur.rates.fnr;
        result.mean_fpr += ur.rates.fpr;
        result.mean_tpr += ur.rates.tpr;
    }
    result.mean_fnr /= static_cast<double>(result.per_user.size());
    result.mean_fpr /= static_cast<double>(result.per_user.size());
    result.mean_tpr /= static_cast<double>(result.per_user.size());
    for (int k = 0; k < kNumChannels; ++k)
        result.auc_per_dim[k] = auc(genuine_ss[k], impostor_ss[k]);
    result.auc_total = auc(result.genuine_tss, result.impostor_tss);
    return result;
}

} // namespace wristauth
