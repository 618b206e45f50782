#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wristauth/signal.hpp"
#include "wristauth/synth.hpp"

namespace wristauth {

/// All trials belonging to one synthetic user (or one word class, when a
/// dataset is reused for the closed-set baseline).
struct UserDataset {
    std::string id;
    std::uint64_t style_seed = 0;
    std::vector<Trial> enroll;
    std::vector<Trial> genuine;
    std::vector<Trial> bad;
};

/// One mimic-attack scenario: trials of a given strength aimed at a target
/// user.
struct AttackSet {
    std::string target;
    double strength = 0.0;
    std::vector<Trial> trials;
};

struct SynthConfig {
    std::uint64_t seed = 42;
    int users = 15;
    int enroll_per_user = 5;
    int genuine_per_user = 10;
    int bad_per_user = 6;
    int attackers = 5;
    int attack_trials = 4;               // per attacker and strength
    std::vector<double> attack_strengths = {0.0, 0.5, 0.8};
    int attack_target = 0;               // index of the attacked user
};

/// Fully generated dataset, independent of any on-disk layout.
struct Dataset {
    SynthConfig config;
    std::vector<UserDataset> users;
    std::vector<AttackSet> attacks;
};

/// Deterministic function of the config: dataset = f(config). Regenerating
/// with the same config yields byte-identical trials.
Dataset generate_dataset(const SynthConfig& config);

/// On-disk manifest: relative trial paths per user and attack set plus the
/// generating config.
struct DatasetManifest {
    SynthConfig config;
    struct UserEntry {
        std::string id;
        std::uint64_t style_seed = 0;
        std::vector<std::string> enroll;
        std::vector<std::string> genuine;
        std::vector<std::string> bad;
    };
    struct AttackEntry {
        std::string target;
        double strength = 0.0;
        std::vector<std::string> trials;
    };
    std::vector<UserEntry> users;
    std::vector<AttackEntry> attacks;
    std::vector<std::string> files;  // every trial file, in emit order
};

/// Writes the dataset as a directory tree of trial CSVs plus
/// `manifest.json`. Refuses a non-empty output directory unless
/// `force` is set. Returns the manifest it wrote.
DatasetManifest write_dataset(const Dataset& dataset,
                              const std::filesystem::path& out_dir,
                              bool force = false);

DatasetManifest load_manifest(const std::filesystem::path& manifest_path);

/// Loads every trial referenced by a manifest back into memory.
Dataset load_dataset(const std::filesystem::path& manifest_path);

} // namespace wristauth
