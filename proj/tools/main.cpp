// wristauth: enroll profiles, verify probes, calibrate weights, and run the
// evaluation/baseline experiments from the command line.
//
// Exit codes: 0 = success (verify: accept), 1 = verify: deny, 2 = any error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wristauth/auth.hpp"
#include "wristauth/baseline.hpp"
#include "wristauth/dataset.hpp"
#include "wristauth/dsp.hpp"
#include "wristauth/eval.hpp"
#include "wristauth/profile.hpp"
#include "wristauth/signal.hpp"
#include "wristauth/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace wristauth;

namespace {

constexpr int kExitDeny = 1;
constexpr int kExitError = 2;

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        const char* begin = item.data();
        const char* end = begin + item.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end)
            throw DomainError(std::string("malformed ") + what + " value '" + item +
                              "'");
        values.push_back(v);
    }
    if (values.empty()) throw DomainError(std::string(what) + " list is empty");
    return values;
}

std::array<double, kNumChannels> parse_mu(const std::string& text) {
    const std::vector<double> values = parse_double_list(text, "weight");
    if (values.size() != kNumChannels)
        throw DomainError("expected 6 comma-separated weights, got " +
                          std::to_string(values.size()));
    std::array<double, kNumChannels> mu{};
    std::copy(values.begin(), values.end(), mu.begin());
    return mu;
}

/// Top-level flags shared by every subcommand (reachable from a subcommand
/// via fallthrough). An explicit --delta beats --preset beats the fallback.
struct GlobalFlags {
    std::uint64_t seed = 42;
    double delta = kDefaultDelta;
    std::string preset;
    CLI::Option* delta_opt = nullptr;
    CLI::Option* preset_opt = nullptr;

    void attach(CLI::App& app) {
        app.add_option("--seed", seed, "Master seed for synthetic data")
            ->capture_default_str();
        delta_opt =
            app.add_option("--delta", delta, "Acceptance threshold in (0, 1]");
        preset_opt =
            app.add_option("--preset", preset,
                           "Named threshold: paper-default (0.55), hardened "
                           "(0.65), balanced (0.62)")
                ->check(CLI::IsMember(
                    {"paper-default", "default", "hardened", "balanced"}));
    }

    double resolve_delta(double fallback) const {
        if (delta_opt->count() > 0) return delta;
        if (preset_opt->count() > 0) {
            if (preset == "hardened") return kDeltaHardened;
            if (preset == "balanced") return kDeltaBalanced;
            return kDeltaDefault;  // paper-default / default
        }
        return fallback;
    }

    bool threshold_given() const {
        return delta_opt->count() > 0 || preset_opt->count() > 0;
    }
};

/// Smoothing flags for the subcommands that train or filter.
struct FilterFlags {
    int window = kDefaultSgWindow;
    int degree = kDefaultSgDegree;
    std::string mu_text;

    void attach(CLI::App& cmd, bool with_mu = true) {
        cmd.add_option("--window", window, "Smoothing window (odd, >= 3)")
            ->capture_default_str();
        cmd.add_option("--degree", degree, "Smoothing polynomial degree")
            ->capture_default_str();
        if (with_mu)
            cmd.add_option("--mu", mu_text,
                           "Six comma-separated dimension weights (default "
                           "uniform)");
    }

    TrainOptions train_options(const GlobalFlags& global,
                               double fallback_delta = kDefaultDelta) const {
        TrainOptions options;
        options.threshold_delta = global.resolve_delta(fallback_delta);
        options.sg_window = window;
        options.sg_degree = degree;
        if (!mu_text.empty()) options.weights_mu = parse_mu(mu_text);
        return options;
    }
};

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

/// Per-dimension similarity score CSV: header ss1,..,ss6, one probe per row.
DimensionScores load_score_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open score file " + path.string());
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    DimensionScores scores{};
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "ss1,ss2,ss3,ss4,ss5,ss6")
                throw ParseError(path.string() +
                                     ": expected header 'ss1,ss2,ss3,ss4,ss5,ss6'",
                                 line_no);
            header_seen = true;
            continue;
        }
        const std::vector<double> row = parse_double_list(line, "score");
        if (row.size() != kNumChannels)
            throw ParseError(path.string() + ": expected 6 scores per row", line_no);
        for (int k = 0; k < kNumChannels; ++k) scores[k].push_back(row[k]);
    }
    if (!header_seen) throw ParseError(path.string() + ": missing header");
    return scores;
}

std::vector<fs::path> trial_files_in(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension();
        if (ext == ".csv" || ext == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

/// Scores every trial in a directory against a profile and collects the
/// per-dimension similarity scores.
DimensionScores score_directory(const fs::path& dir, const Profile& profile) {
    DimensionScores scores{};
    for (const fs::path& file : trial_files_in(dir)) {
        const ScoreReport report = authenticate(load_trial(file), profile);
        for (int k = 0; k < kNumChannels; ++k) scores[k].push_back(report.ss[k]);
    }
    return scores;
}

// ---------------------------------------------------------------------------
// enroll

struct EnrollArgs {
    std::vector<std::string> trial_paths;
    std::string out;
    std::string user, word;
    FilterFlags filter;
};

int cmd_enroll(const EnrollArgs& args, const GlobalFlags& global) {
    std::vector<Trial> trials;
    for (const std::string& path : args.trial_paths) {
        Trial trial = load_trial(path);
        if (!args.user.empty()) trial.user_label = args.user;
        if (!args.word.empty()) trial.word_label = args.word;
        trials.push_back(std::move(trial));
    }
    const Profile profile = train(trials, args.filter.train_options(global));
    save_profile(profile, fs::path(args.out));

    ordered_json summary;
    summary["profile"] = args.out;
    summary["user"] = profile.user_label;
    summary["word"] = profile.word_label;
    summary["n"] = profile.n();
    summary["ideal"] = profile.ideal;
    summary["weights_mu"] = profile.weights_mu;
    summary["threshold_delta"] = profile.threshold_delta;
    std::cout << summary.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string profile_path;
    std::string probe_path;
};

int cmd_verify(const VerifyArgs& args, const GlobalFlags& global) {
    Profile profile = load_profile(fs::path(args.profile_path));
    if (global.threshold_given())
        profile.threshold_delta = global.resolve_delta(profile.threshold_delta);
    const ScoreReport report = authenticate(load_trial(args.probe_path), profile);
    std::cout << score_report_json(report) << '\n';
    return report.accepted ? 0 : kExitDeny;
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateArgs {
    std::string profile_path;
    std::string genuine_path;
    std::string impostor_path;
    std::string out;
};

DimensionScores load_calibration_side(const fs::path& path, const Profile* profile,
                                      const char* side) {
    if (fs::is_directory(path)) {
        if (!profile)
            throw DomainError(std::string("scoring the ") + side +
                              " directory needs --profile");
        return score_directory(path, *profile);
    }
    return load_score_csv(path);
}

int cmd_calibrate(const CalibrateArgs& args) {
    std::optional<Profile> profile;
    if (!args.profile_path.empty())
        profile = load_profile(fs::path(args.profile_path));

    const DimensionScores genuine = load_calibration_side(
        args.genuine_path, profile ? &*profile : nullptr, "genuine");
    const DimensionScores impostor = load_calibration_side(
        args.impostor_path, profile ? &*profile : nullptr, "impostor");
    const CalibrationResult result = calibrate_weights(genuine, impostor);

    if (result.uniform_fallback)
        std::cerr << "warning: no dimension separates genuine from impostor "
                     "scores beyond the AUC floor; falling back to uniform "
                     "weights\n";

    ordered_json doc;
    doc["auc_per_dim"] = result.auc_per_dim;
    doc["weights_mu"] = result.weights_mu;
    doc["uniform_fallback"] = result.uniform_fallback;

    std::string out_path = args.out;
    if (out_path.empty()) out_path = args.profile_path;  // rewrite in place
    if (profile && !out_path.empty()) {
        profile->weights_mu = result.weights_mu;
        save_profile(*profile, fs::path(out_path));
        doc["profile"] = out_path;
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
    std::string data;
    std::string roc_path;
    std::string report_path;
    FilterFlags filter;
};

int cmd_evaluate(const EvaluateArgs& args, const GlobalFlags& global) {
    const Dataset dataset = load_dataset(args.data);
    EvalOptions options;
    options.train = args.filter.train_options(global);
    const double delta = options.train.threshold_delta;

    ordered_json config;
    config["data"] = args.data;
    config["seed"] = dataset.config.seed;
    config["delta"] = delta;
    config["window"] = options.train.sg_window;
    config["degree"] = options.train.sg_degree;
    config["mu"] = options.train.weights_mu;

    ordered_json report;
    report["tool"] = "wristauth evaluate";
    report["config"] = config;
    report["config_hash"] = hex64(fnv1a(config.dump()));

    const DiscriminationResult disc =
        evaluate_discrimination(dataset.users, options);
    ordered_json disc_doc;
    disc_doc["mean_fnr"] = disc.mean_fnr;
    disc_doc["mean_fpr"] = disc.mean_fpr;
    disc_doc["mean_tpr"] = disc.mean_tpr;
    disc_doc["auc_per_dim"] = disc.auc_per_dim;
    disc_doc["auc_total"] = disc.auc_total;
    auto& per_user = disc_doc["per_user"] = ordered_json::array();
    for (const UserRates& ur : disc.per_user) {
        ordered_json u;
        u["user"] = ur.user;
        u["fnr"] = ur.rates.fnr;
        u["fpr"] = ur.rates.fpr;
        u["tpr"] = ur.rates.tpr;
        per_user.push_back(std::move(u));
    }
    report["discrimination"] = disc_doc;

    if (!dataset.attacks.empty()) {
        const auto target_it =
            std::find_if(dataset.users.begin(), dataset.users.end(),
                         [&](const UserDataset& u) {
                             return u.id == dataset.attacks.front().target;
                         });
        if (target_it == dataset.users.end())
            throw ValidationError("attack target '" +
                                  dataset.attacks.front().target +
                                  "' is not a dataset user");
        const Profile profile = train(target_it->enroll, options.train);
        std::vector<std::pair<std::string, std::vector<Trial>>> scenarios;
        scenarios.emplace_back("genuine", target_it->genuine);
        for (const AttackSet& set : dataset.attacks)
            scenarios.emplace_back("mimic_" + format_double(set.strength),
                                   set.trials);
        auto& attacks_doc = report["attacks"] = ordered_json::array();
        for (const ScenarioReport& sr : attack_eval(profile, scenarios)) {
            ordered_json s;
            s["scenario"] = sr.name;
            s["trials"] = sr.tss.size();
            s["median_tss"] = sr.median_tss;
            s["max_tss"] = sr.max_tss;
            s["margin_to_delta"] = sr.margin_to_delta;
            s["accept_rate"] = sr.accept_rate;
            attacks_doc.push_back(std::move(s));
        }
    }

    {
        // Fault tolerance on the first user with enough corrupted trials:
        // half the bad set corrupts the training mixture, half is probed.
        const auto user_it = std::find_if(
            dataset.users.begin(), dataset.users.end(),
            [](const UserDataset& u) { return u.bad.size() >= 2; });
        if (user_it != dataset.users.end()) {
            const auto pool = static_cast<std::ptrdiff_t>(
                (user_it->bad.size() + 1) / 2);
            const std::vector<Trial> bad_pool(user_it->bad.begin(),
                                              user_it->bad.begin() + pool);
            const std::vector<Trial> bad_probe(user_it->bad.begin() + pool,
                                               user_it->bad.end());
            std::vector<double> fractions;
            const auto n = static_cast<double>(user_it->enroll.size());
            for (double f : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5})
                if (std::lround(f * n) <= pool) fractions.push_back(f);
            auto& ft_doc = report["fault_tolerance"] = ordered_json::array();
            for (const FaultTolerancePoint& point : fault_tolerance_sweep(
                     user_it->enroll, bad_pool, user_it->genuine, bad_probe,
                     fractions, options.train)) {
                ordered_json p;
                p["bad_fraction"] = point.bad_fraction;
                p["tpr"] = point.tpr;
                p["fnr_on_bad"] = point.fnr_on_bad;
                ft_doc.push_back(std::move(p));
            }
            report["fault_tolerance_user"] = user_it->id;
        }
    }

    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!args.report_path.empty()) write_text_file(args.report_path, text);

    if (!args.roc_path.empty()) {
        std::ostringstream csv;
        write_roc_csv(roc_curve(disc.genuine_tss, disc.impostor_tss), csv);
        write_text_file(args.roc_path, csv.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
    std::string out;
    SynthConfig config;
    std::string strengths_text;
    bool force = false;
};

int cmd_synth(SynthArgs args, const GlobalFlags& global) {
    args.config.seed = global.seed;
    if (!args.strengths_text.empty())
        args.config.attack_strengths =
            parse_double_list(args.strengths_text, "strength");
    const Dataset dataset = generate_dataset(args.config);
    const DatasetManifest manifest = write_dataset(dataset, args.out, args.force);

    ordered_json summary;
    summary["out"] = args.out;
    summary["manifest"] = (fs::path(args.out) / "manifest.json").string();
    summary["seed"] = manifest.config.seed;
    summary["users"] = manifest.users.size();
    summary["attack_sets"] = manifest.attacks.size();
    summary["files"] = manifest.files.size();
    std::cout << summary.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// baseline

struct BaselineArgs {
    std::string data;
    int folds = 5;
    bool extended = false;
    double svm_lambda = 1e-3;
    int epochs = 300;
    std::uint64_t svm_seed = 7;
    std::uint64_t shuffle_seed = 1;
    std::uint64_t feature_seed = 99;
    double l1_lambda = 50.0;
    std::string features_path;
    std::string model_path;
    std::string report_path;
    FilterFlags filter;
};

int cmd_baseline(const BaselineArgs& args, const GlobalFlags& global) {
    const Dataset dataset = load_dataset(args.data);
    if (dataset.users.size() < 2)
        throw DomainError("baseline needs a dataset with at least 2 word classes");

    // Word classes: each user's enrollment + genuine trials, features on the
    // filtered signals.
    std::vector<FeatureVector> features;
    std::vector<std::string> labels;
    for (const UserDataset& user : dataset.users) {
        auto add = [&](const std::vector<Trial>& trials) {
            for (const Trial& trial : trials) {
                const Trial filtered =
                    filter_trial(trial, args.filter.window, args.filter.degree);
                features.push_back(extract_features(filtered, args.feature_seed));
                labels.push_back(trial.word_label.empty() ? user.id
                                                          : trial.word_label);
            }
        };
        add(user.enroll);
        add(user.genuine);
    }
    const Matrix x = feature_matrix(features, args.extended);
    const std::vector<std::string> column_names =
        feature_column_names(args.extended);

    if (!args.features_path.empty()) {
        std::ostringstream csv;
        for (const std::string& name : column_names) csv << name << ',';
        csv << "label\n";
        for (std::size_t i = 0; i < x.rows; ++i) {
            for (double v : x.row(i)) csv << format_double(v) << ',';
            csv << labels[i] << '\n';
        }
        write_text_file(args.features_path, csv.str());
    }

    SvmOptions svm;
    svm.lambda = args.svm_lambda;
    svm.epochs = args.epochs;
    svm.seed = args.svm_seed;

    ordered_json config;
    config["data"] = args.data;
    config["seed"] = dataset.config.seed;
    config["folds"] = args.folds;
    config["extended"] = args.extended;
    config["svm_lambda"] = svm.lambda;
    config["epochs"] = svm.epochs;
    config["svm_seed"] = svm.seed;
    config["shuffle_seed"] = args.shuffle_seed;
    config["feature_seed"] = args.feature_seed;
    config["l1_lambda"] = args.l1_lambda;
    config["delta"] = global.resolve_delta(kDefaultDelta);

    ordered_json report;
    report["tool"] = "wristauth baseline";
    report["config"] = config;
    report["config_hash"] = hex64(fnv1a(config.dump()));

    const CvResult cv =
        cross_validate(x, labels, args.folds, svm, args.shuffle_seed);
    report["cross_validation"] = {{"fold_accuracy", cv.fold_accuracy},
                                  {"mean_accuracy", cv.mean_accuracy}};

    // l1 feature selection, one-vs-rest per class on standardized columns.
    {
        Matrix xs = x;
        for (std::size_t j = 0; j < x.cols; ++j) {
            double mean = 0.0;
            for (std::size_t i = 0; i < x.rows; ++i) mean += x.at(i, j);
            mean /= static_cast<double>(x.rows);
            double var = 0.0;
            for (std::size_t i = 0; i < x.rows; ++i) {
                const double d = x.at(i, j) - mean;
                var += d * d;
            }
            const double sd = std::sqrt(var / static_cast<double>(x.rows));
            for (std::size_t i = 0; i < x.rows; ++i)
                xs.at(i, j) = sd > 0.0 ? (x.at(i, j) - mean) / sd : 0.0;
        }
        std::vector<std::string> classes = labels;
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        auto& selection = report["feature_selection"] = ordered_json::array();
        std::vector<std::size_t> union_mask(x.cols, 0);
        for (const std::string& cls : classes) {
            std::vector<double> y(x.rows);
            for (std::size_t i = 0; i < x.rows; ++i)
                y[i] = labels[i] == cls ? 1.0 : -1.0;
            const std::vector<std::size_t> picked =
                lasso_select(xs, y, args.l1_lambda);
            ordered_json entry;
            entry["class"] = cls;
            entry["selected"] = picked.size();
            std::vector<std::string> names;
            for (std::size_t j : picked) {
                names.push_back(column_names[j]);
                union_mask[j] = 1;
            }
            entry["features"] = names;
            selection.push_back(std::move(entry));
        }
        report["feature_selection_union"] = std::accumulate(
            union_mask.begin(), union_mask.end(), std::size_t{0});
    }

    // Open-set contrast: hold the last user's word out of the classifier,
    // verify the same trials against the first user's profile.
    {
        const UserDataset& held_out = dataset.users.back();
        const std::string held_word = labels.back();
        std::vector<FeatureVector> train_features;
        std::vector<std::string> train_labels;
        for (std::size_t i = 0; i < features.size(); ++i) {
            if (labels[i] == held_word) continue;
            train_features.push_back(features[i]);
            train_labels.push_back(labels[i]);
        }
        const ClosedSetClassifier classifier = train_closed_set(
            feature_matrix(train_features, args.extended), train_labels, svm);
        if (!args.model_path.empty()) classifier.save(fs::path(args.model_path));

        const Profile profile = train(dataset.users.front().enroll,
                                      args.filter.train_options(global));
        const FlawReport flaw = open_set_flaw_demo(classifier, held_out.genuine,
                                                   profile, args.feature_seed);
        ordered_json flaw_doc;
        flaw_doc["unseen_word"] = held_word;
        flaw_doc["profile_user"] = profile.user_label;
        flaw_doc["profile_word"] = profile.word_label;
        flaw_doc["labeled_fraction"] = flaw.labeled_fraction;
        flaw_doc["denial_rate"] = flaw.denial_rate;
        std::size_t password_hits = 0;
        auto& rows = flaw_doc["trials"] = ordered_json::array();
        for (const FlawReport::Row& row : flaw.rows) {
            ordered_json r;
            r["assigned_class"] = row.assigned_class;
            r["tss"] = row.tss;
            r["denied"] = row.denied;
            rows.push_back(std::move(r));
            if (row.assigned_class == profile.word_label) ++password_hits;
        }
        flaw_doc["assigned_profile_word"] = password_hits;
        report["open_set_flaw"] = flaw_doc;
    }

    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!args.report_path.empty()) write_text_file(args.report_path, text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wrist-motion handwriting verification toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an ini-style key=value file");

    GlobalFlags global;
    global.attach(app);

    EnrollArgs enroll_args;
    CLI::App* enroll = app.add_subcommand(
        "enroll", "Train a profile from enrollment trial files");
    enroll->fallthrough();
    enroll->add_option("trials", enroll_args.trial_paths, "Trial files (2 or more)")
        ->required()
        ->expected(-1);
    enroll->add_option("-o,--out", enroll_args.out, "Profile file to write")
        ->required();
    enroll->add_option("--user", enroll_args.user, "Override the user label");
    enroll->add_option("--word", enroll_args.word, "Override the word label");
    enroll_args.filter.attach(*enroll);

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "Check a probe trial against a profile (exit 0 accept, 1 deny)");
    verify->fallthrough();
    verify->add_option("probe", verify_args.probe_path, "Probe trial file")
        ->required();
    verify->add_option("-p,--profile", verify_args.profile_path, "Profile file")
        ->required();

    CalibrateArgs calibrate_args;
    CLI::App* calibrate = app.add_subcommand(
        "calibrate",
        "Derive dimension weights from genuine/impostor scores. Each side is "
        "either a directory of trials (scored against --profile) or a CSV of "
        "per-dimension similarity scores with header ss1,..,ss6");
    calibrate->fallthrough();
    calibrate->add_option("-p,--profile", calibrate_args.profile_path,
                          "Profile to score trials against and to rewrite");
    calibrate->add_option("--genuine", calibrate_args.genuine_path,
                          "Genuine trials directory or score CSV")
        ->required();
    calibrate->add_option("--impostor", calibrate_args.impostor_path,
                          "Impostor trials directory or score CSV")
        ->required();
    calibrate->add_option("-o,--out", calibrate_args.out,
                          "Where to write the reweighted profile "
                          "(default: rewrite --profile)");

    EvaluateArgs evaluate_args;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Run the discrimination/attack/fault-tolerance harness "
                    "on a dataset directory");
    evaluate->fallthrough();
    evaluate->add_option("-d,--data", evaluate_args.data,
                         "Dataset directory or manifest.json")
        ->required();
    evaluate->add_option("--roc", evaluate_args.roc_path,
                         "Write the system ROC curve as CSV");
    evaluate->add_option("--report", evaluate_args.report_path,
                         "Write the report JSON to a file as well as stdout");
    evaluate_args.filter.attach(*evaluate);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand(
        "synth", "Generate a deterministic synthetic dataset");
    synth->fallthrough();
    synth->add_option("-o,--out", synth_args.out, "Output directory")->required();
    synth->add_option("--users", synth_args.config.users, "Number of users")
        ->capture_default_str();
    synth->add_option("--enroll", synth_args.config.enroll_per_user,
                      "Enrollment trials per user")
        ->capture_default_str();
    synth->add_option("--genuine", synth_args.config.genuine_per_user,
                      "Genuine probes per user")
        ->capture_default_str();
    synth->add_option("--bad", synth_args.config.bad_per_user,
                      "Corrupted trials per user")
        ->capture_default_str();
    synth->add_option("--attackers", synth_args.config.attackers,
                      "Number of mimic attackers")
        ->capture_default_str();
    synth->add_option("--attack-trials", synth_args.config.attack_trials,
                      "Trials per attacker and strength")
        ->capture_default_str();
    synth->add_option("--strengths", synth_args.strengths_text,
                      "Comma-separated mimic strengths in [0, 1]");
    synth->add_option("--target", synth_args.config.attack_target,
                      "Index of the attacked user")
        ->capture_default_str();
    synth->add_flag("--force", synth_args.force,
                    "Write into a non-empty output directory");

    BaselineArgs baseline_args;
    CLI::App* baseline = app.add_subcommand(
        "baseline", "Closed-set word classifier contrast: cross-validation, "
                    "l1 feature selection, open-set flaw demonstration");
    baseline->fallthrough();
    baseline->add_option("-d,--data", baseline_args.data,
                         "Dataset directory or manifest.json")
        ->required();
    baseline->add_option("--folds", baseline_args.folds, "Cross-validation folds")
        ->capture_default_str();
    baseline->add_flag("--extended", baseline_args.extended,
                       "Use the 180-column feature set (core + histograms + peaks)");
    baseline->add_option("--svm-lambda", baseline_args.svm_lambda,
                         "Hinge-loss regularization")
        ->capture_default_str();
    baseline->add_option("--epochs", baseline_args.epochs, "Training epochs")
        ->capture_default_str();
    baseline->add_option("--svm-seed", baseline_args.svm_seed,
                         "Classifier shuffle seed")
        ->capture_default_str();
    baseline->add_option("--shuffle-seed", baseline_args.shuffle_seed,
                         "Cross-validation shuffle seed")
        ->capture_default_str();
    baseline->add_option("--feature-seed", baseline_args.feature_seed,
                         "Histogram sampling seed")
        ->capture_default_str();
    baseline->add_option("--l1-lambda", baseline_args.l1_lambda,
                         "Feature-selection regularization")
        ->capture_default_str();
    baseline->add_option("--features", baseline_args.features_path,
                         "Export the feature matrix as CSV");
    baseline->add_option("--model", baseline_args.model_path,
                         "Save the trained classifier");
    baseline->add_option("--report", baseline_args.report_path,
                         "Write the report JSON to a file as well as stdout");
    baseline_args.filter.attach(*baseline, /*with_mu=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (enroll->parsed()) return cmd_enroll(enroll_args, global);
        if (verify->parsed()) return cmd_verify(verify_args, global);
        if (calibrate->parsed()) return cmd_calibrate(calibrate_args);
        if (evaluate->parsed()) return cmd_evaluate(evaluate_args, global);
        if (synth->parsed()) return cmd_synth(synth_args, global);
        if (baseline->parsed()) return cmd_baseline(baseline_args, global);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;  // unreachable: a subcommand is required
}
