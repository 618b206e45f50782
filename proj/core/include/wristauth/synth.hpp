#pragma once

#include <array>
#include <cstdint>

#include "wristauth/signal.hpp"

namespace wristauth {

inline constexpr int kStyleComponents = 8;

struct SinComponent {
    double amplitude = 0.0;
    double freq_hz = 0.0;  // 0.5 .. 6 Hz
    double phase = 0.0;

    bool operator==(const SinComponent&) const = default;
};

/// Seeded per-user writing template: a sum of sinusoidal components per
/// channel plus a nominal tempo and size. The same seed always yields the
/// same style.
struct UserStyle {
    std::uint64_t seed = 0;
    std::array<std::array<SinComponent, kStyleComponents>, kNumChannels> components{};
    double tempo_s = 2.0;     // nominal duration, 1.5 .. 2.5 s
    double size_scale = 1.0;  // word-size amplitude multiplier

    bool operator==(const UserStyle&) const = default;
};

/// Mimic attack: the attacker writes a blend of their own template and the
/// target's, with blend strength m in [0, 1] (0 = the attacker only knows
/// the word, 1 = perfect template knowledge with residual attacker jitter).
struct MimicSpec {
    UserStyle attacker;
    UserStyle target;
    double strength = 0.0;
};

UserStyle gen_user(std::uint64_t seed);

/// Renders one trial of a style at 62 Hz: jittered duration (x uniform
/// [0.9, 1.1]), amplitude jitter uniform [0.95, 1.05], a smooth strictly
/// monotone random time warp with at most 10% local deviation, and additive
/// noise with sigma = 5% of each channel's RMS. Deterministic per
/// (style, trial_seed).
Trial gen_trial(const UserStyle& style, std::uint64_t trial_seed);

/// Mimic trial: the two templates are blended in signal space before
/// jitter and noise, all of which follow the attacker's generator path.
/// gen_mimic with strength 0 is byte-identical to gen_trial(attacker, ...).
Trial gen_mimic(const MimicSpec& spec, std::uint64_t trial_seed);

/// Corrupted genuine trial: a random segment is reversed and a random 20%
/// window gets a 3x amplitude burst. Still a structurally valid Trial.
Trial gen_bad_trial(const UserStyle& style, std::uint64_t trial_seed);

/// Splittable seed chain used everywhere synthetic data is derived from a
/// master seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

} // namespace wristauth
