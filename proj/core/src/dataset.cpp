#include "wristauth/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "wristauth/errors.hpp"

namespace wristauth {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kManifestFormat = "wristauth-dataset";
constexpr int kManifestVersion = 1;

// Independent seed streams per trial kind.
constexpr std::uint64_t kSaltStyle = 1;
constexpr std::uint64_t kSaltEnroll = 2;
constexpr std::uint64_t kSaltGenuine = 3;
constexpr std::uint64_t kSaltBad = 4;
constexpr std::uint64_t kSaltAttackerStyle = 5;
constexpr std::uint64_t kSaltAttackTrial = 6;

std::string padded(const char* prefix, int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%02d", prefix, index + 1);
    return buf;
}

void check_config(const SynthConfig& c) {
    if (c.users < 1) throw DomainError("dataset needs at least 1 user");
    if (c.enroll_per_user < 2)
        throw DomainError("dataset needs at least 2 enrollment trials per user");
    if (c.genuine_per_user < 1)
        throw DomainError("dataset needs at least 1 genuine probe per user");
    if (c.bad_per_user < 0 || c.attackers < 0 || c.attack_trials < 0)
        throw DomainError("trial counts must be non-negative");
    if (c.attack_target < 0 || c.attack_target >= c.users)
        throw DomainError("attack target must name one of the users");
    double prev = -1.0;
    for (double m : c.attack_strengths) {
        if (!(m >= 0.0 && m <= 1.0))
            throw DomainError("attack strengths must lie in [0, 1]");
        if (m <= prev)
            throw DomainError("attack strengths must be strictly increasing");
        prev = m;
    }
}

std::string strength_tag(double strength) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "s%04d",
                  static_cast<int>(std::lround(strength * 1000.0)));
    return buf;
}

const nlohmann::json& require_key(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string("dataset manifest is missing key '") + key + "'");
    return *it;
}

} // namespace

Dataset generate_dataset(const SynthConfig& config) {
    check_config(config);
    Dataset dataset;
    dataset.config = config;

    dataset.users.reserve(static_cast<std::size_t>(config.users));
    for (int i = 0; i < config.users; ++i) {
        UserDataset user;
        user.id = padded("u", i);
        user.style_seed =
            mix_seed(mix_seed(config.seed, kSaltStyle), static_cast<std::uint64_t>(i));
        const UserStyle style = gen_user(user.style_seed);
        const std::string word = padded("w", i);

        auto emit = [&](std::vector<Trial>& into, std::uint64_t kind_salt, int count,
                        bool corrupted) {
            into.reserve(static_cast<std::size_t>(count));
            const std::uint64_t stream =
                mix_seed(mix_seed(config.seed, kind_salt), static_cast<std::uint64_t>(i));
            for (int j = 0; j < count; ++j) {
                const std::uint64_t trial_seed =
                    mix_seed(stream, static_cast<std::uint64_t>(j));
                Trial trial = corrupted ? gen_bad_trial(style, trial_seed)
                                        : gen_trial(style, trial_seed);
                trial.user_label = user.id;
                trial.word_label = word;
                into.push_back(std::move(trial));
            }
        };
        emit(user.enroll, kSaltEnroll, config.enroll_per_user, false);
        emit(user.genuine, kSaltGenuine, config.genuine_per_user, false);
        emit(user.bad, kSaltBad, config.bad_per_user, true);
        dataset.users.push_back(std::move(user));
    }

    if (config.attackers > 0 && config.attack_trials > 0) {
        const UserDataset& target =
            dataset.users[static_cast<std::size_t>(config.attack_target)];
        const UserStyle target_style = gen_user(target.style_seed);
        const std::string target_word = padded("w", config.attack_target);
        for (std::size_t si = 0; si < config.attack_strengths.size(); ++si) {
            AttackSet set;
            set.target = target.id;
            set.strength = config.attack_strengths[si];
            for (int a = 0; a < config.attackers; ++a) {
                const UserStyle attacker = gen_user(mix_seed(
                    mix_seed(config.seed, kSaltAttackerStyle),
                    static_cast<std::uint64_t>(a)));
                const MimicSpec spec{attacker, target_style, set.strength};
                for (int j = 0; j < config.attack_trials; ++j) {
                    const std::uint64_t trial_seed = mix_seed(
                        mix_seed(mix_seed(mix_seed(config.seed, kSaltAttackTrial), si),
                                 static_cast<std::uint64_t>(a)),
                        static_cast<std::uint64_t>(j));
                    Trial trial = gen_mimic(spec, trial_seed);
                    trial.user_label = padded("a", a);
                    trial.word_label = target_word;
                    set.trials.push_back(std::move(trial));
                }
            }
            dataset.attacks.push_back(std::move(set));
        }
    }
    return dataset;
}

DatasetManifest write_dataset(const Dataset& dataset,
                              const std::filesystem::path& out_dir, bool force) {
    namespace fs = std::filesystem;
    if (fs::exists(out_dir)) {
        if (!fs::is_directory(out_dir))
            throw IoError(out_dir.string() + " exists and is not a directory");
        if (!fs::is_empty(out_dir) && !force)
            throw IoError("output directory " + out_dir.string() +
                          " is not empty (pass force to overwrite)");
    }
    fs::create_directories(out_dir);

    DatasetManifest manifest;
    manifest.config = dataset.config;

    auto emit_trial = [&](const Trial& trial, const std::string& rel) {
        const fs::path path = out_dir / rel;
        fs::create_directories(path.parent_path());
        save_trial(trial, path);
        manifest.files.push_back(rel);
    };

    for (const UserDataset& user : dataset.users) {
        DatasetManifest::UserEntry entry;
        entry.id = user.id;
        entry.style_seed = user.style_seed;
        auto emit_set = [&](const std::vector<Trial>& trials, const char* kind,
                            const char* stem, std::vector<std::string>& rels) {
            for (std::size_t j = 0; j < trials.size(); ++j) {
                const std::string rel = "users/" + user.id + "/" + kind + "/" +
                                        padded(stem, static_cast<int>(j)) + ".csv";
                emit_trial(trials[j], rel);
                rels.push_back(rel);
            }
        };
        emit_set(user.enroll, "enroll", "e", entry.enroll);
        emit_set(user.genuine, "genuine", "g", entry.genuine);
        emit_set(user.bad, "bad", "b", entry.bad);
        manifest.users.push_back(std::move(entry));
    }

    for (const AttackSet& set : dataset.attacks) {
        DatasetManifest::AttackEntry entry;
        entry.target = set.target;
        entry.strength = set.strength;
        const std::string tag = strength_tag(set.strength);
        for (std::size_t j = 0; j < set.trials.size(); ++j) {
            const std::string rel = "attacks/" + tag + "/" +
                                    padded("m", static_cast<int>(j)) + ".csv";
            emit_trial(set.trials[j], rel);
            entry.trials.push_back(rel);
        }
        manifest.attacks.push_back(std::move(entry));
    }

    ordered_json doc;
    doc["format"] = kManifestFormat;
    doc["version"] = kManifestVersion;
    ordered_json config;
    config["seed"] = manifest.config.seed;
    config["users"] = manifest.config.users;
    config["enroll_per_user"] = manifest.config.enroll_per_user;
    config["genuine_per_user"] = manifest.config.genuine_per_user;
    config["bad_per_user"] = manifest.config.bad_per_user;
    config["attackers"] = manifest.config.attackers;
    config["attack_trials"] = manifest.config.attack_trials;
    config["attack_strengths"] = manifest.config.attack_strengths;
    config["attack_target"] = manifest.config.attack_target;
    doc["config"] = config;
    auto& users = doc["users"] = ordered_json::array();
    for (const auto& entry : manifest.users) {
        ordered_json u;
        u["id"] = entry.id;
        u["style_seed"] = entry.style_seed;
        u["enroll"] = entry.enroll;
        u["genuine"] = entry.genuine;
        u["bad"] = entry.bad;
        users.push_back(std::move(u));
    }
    auto& attacks = doc["attacks"] = ordered_json::array();
    for (const auto& entry : manifest.attacks) {
        ordered_json a;
        a["target"] = entry.target;
        a["strength"] = entry.strength;
        a["trials"] = entry.trials;
        attacks.push_back(std::move(a));
    }
    doc["files"] = manifest.files;

    std::ofstream out(out_dir / "manifest.json");
    if (!out) throw IoError("cannot write manifest in " + out_dir.string());
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing manifest in " + out_dir.string());
    return manifest;
}

DatasetManifest load_manifest(const std::filesystem::path& manifest_path) {
    namespace fs = std::filesystem;
    const fs::path path = fs::is_directory(manifest_path)
                              ? manifest_path / "manifest.json"
                              : manifest_path;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset manifest " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid manifest JSON: ") + e.what());
    }
    if (!doc.is_object() || require_key(doc, "format") != kManifestFormat)
        throw ParseError(path.string() + " is not a dataset manifest");
    if (require_key(doc, "version").get<int>() != kManifestVersion)
        throw ParseError("unsupported manifest version");

    DatasetManifest manifest;
    try {
        const auto& config = require_key(doc, "config");
        manifest.config.seed = require_key(config, "seed").get<std::uint64_t>();
        manifest.config.users = require_key(config, "users").get<int>();
        manifest.config.enroll_per_user =
            require_key(config, "enroll_per_user").get<int>();
        manifest.config.genuine_per_user =
            require_key(config, "genuine_per_user").get<int>();
        manifest.config.bad_per_user = require_key(config, "bad_per_user").get<int>();
        manifest.config.attackers = require_key(config, "attackers").get<int>();
        manifest.config.attack_trials = require_key(config, "attack_trials").get<int>();
        manifest.config.attack_strengths =
            require_key(config, "attack_strengths").get<std::vector<double>>();
        manifest.config.attack_target = require_key(config, "attack_target").get<int>();
        for (const auto& u : require_key(doc, "users")) {
            DatasetManifest::UserEntry entry;
            entry.id = require_key(u, "id").get<std::string>();
            entry.style_seed = require_key(u, "style_seed").get<std::uint64_t>();
            entry.enroll = require_key(u, "enroll").get<std::vector<std::string>>();
            entry.genuine = require_key(u, "genuine").get<std::vector<std::string>>();
            entry.bad = require_key(u, "bad").get<std::vector<std::string>>();
            manifest.users.push_back(std::move(entry));
        }
        for (const auto& a : require_key(doc, "attacks")) {
            DatasetManifest::AttackEntry entry;
            entry.target = require_key(a, "target").get<std::string>();
            entry.strength = require_key(a, "strength").get<double>();
            entry.trials = require_key(a, "trials").get<std::vector<std::string>>();
            manifest.attacks.push_back(std::move(entry));
        }
        manifest.files = require_key(doc, "files").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed dataset manifest: ") + e.what());
    }
    return manifest;
}

Dataset load_dataset(const std::filesystem::path& manifest_path) {
    namespace fs = std::filesystem;
    const fs::path path = fs::is_directory(manifest_path)
                              ? manifest_path / "manifest.json"
                              : manifest_path;
    const DatasetManifest manifest = load_manifest(path);
    const fs::path base = path.parent_path();

    auto load_set = [&](const std::vector<std::string>& rels) {
        std::vector<Trial> trials;
        trials.reserve(rels.size());
        for (const std::string& rel : rels) trials.push_back(load_trial(base / rel));
        return trials;
    };

    Dataset dataset;
    dataset.config = manifest.config;
    for (const auto& entry : manifest.users) {
        UserDataset user;
        user.id = entry.id;
        user.style_seed = entry.style_seed;
        user.enroll = load_set(entry.enroll);
        user.genuine = load_set(entry.genuine);
        user.bad = load_set(entry.bad);
        dataset.users.push_back(std::move(user));
    }
    for (const auto& entry : manifest.attacks) {
        AttackSet set;
        set.target = entry.target;
        set.strength = entry.strength;
        set.trials = load_set(entry.trials);
        dataset.attacks.push_back(std::move(set));
    }
    return dataset;
}

} // namespace wristauth
