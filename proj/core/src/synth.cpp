#include "wristauth/synth.hpp"

#include <algorithm>
#include <cmath>

#include "rng.hpp"

namespace wristauth {

namespace {

// Stream salts so styles, trials and corruptions never share a sequence.
constexpr std::uint64_t kStyleSalt = 0x5354594C45ULL;    // style parameters
constexpr std::uint64_t kCorruptSalt = 0xC0552F7ULL;     // bad-trial mutations

// Acceleration channels live around +-1 g; gyro channels around tens of
// deg/s. Only the within-channel shape matters to the scored pipeline
// (similarity is ratio-based), the scales just keep the CSVs plausible.
constexpr double kAccAmplitude = 0.35;
constexpr double kGyroAmplitude = 21.0;

double eval_style(const UserStyle& style, int channel, double progress) {
    // The template is a function of progress through the word; frequencies
    // are physical Hz at the style's nominal tempo.
    const double t = progress * style.tempo_s;
    double v = 0.0;
    for (const SinComponent& c : style.components[static_cast<std::size_t>(channel)])
        v += c.amplitude * std::sin(2.0 * M_PI * c.freq_hz * t + c.phase);
    return style.size_scale * v;
}

Trial render(const UserStyle& primary, const UserStyle& target, double blend,
             std::uint64_t trial_seed) {
    detail::Rng rng(detail::mix_seed_impl(primary.seed, trial_seed));

    const double tempo = (1.0 - blend) * primary.tempo_s + blend * target.tempo_s;
    const double dur = tempo * rng.uniform(0.9, 1.1);
    // phi(u) = u + a1 sin(pi u) + a2 sin(2 pi u) stays strictly monotone:
    // phi'(u) >= 1 - pi|a1| - 2 pi|a2| >= 0.9.
    const double a1 = rng.uniform(-1.0, 1.0) * (0.05 / M_PI);
    const double a2 = rng.uniform(-1.0, 1.0) * (0.025 / M_PI);
    std::array<double, kNumChannels> amp_jitter{};
    for (double& j : amp_jitter) j = rng.uniform(0.95, 1.05);

    const int count = static_cast<int>(std::floor(dur * kDefaultSampleRate)) + 1;
    Trial trial;
    trial.nominal_rate = kDefaultSampleRate;
    trial.samples.resize(static_cast<std::size_t>(count));

    double prev_progress = -1.0;
    std::vector<double> progress(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = i / kDefaultSampleRate;
        const double u = t / dur;
        const double p = u + a1 * std::sin(M_PI * u) + a2 * std::sin(2.0 * M_PI * u);
        if (p <= prev_progress)
            throw Error("time warp lost monotonicity");  // unreachable by design
        prev_progress = p;
        progress[static_cast<std::size_t>(i)] = p;
        trial.samples[static_cast<std::size_t>(i)].t = t;
    }

    for (int c = 0; c < kNumChannels; ++c) {
        std::vector<double> values(static_cast<std::size_t>(count));
        double sumsq = 0.0;
        for (int i = 0; i < count; ++i) {
            const double p = progress[static_cast<std::size_t>(i)];
            double v = (1.0 - blend) * eval_style(primary, c, p) +
                       blend * eval_style(target, c, p);
            v *= amp_jitter[static_cast<std::size_t>(c)];
            values[static_cast<std::size_t>(i)] = v;
            sumsq += v * v;
        }
        const double sigma = 0.05 * std::sqrt(sumsq / count);
        for (int i = 0; i < count; ++i) {
            const double v = values[static_cast<std::size_t>(i)] + sigma * rng.normal();
            trial.samples[static_cast<std::size_t>(i)].set_channel_value(c + 1, v);
        }
    }
    return trial;
}

} // namespace

UserStyle gen_user(std::uint64_t seed) {
    detail::Rng rng(detail::mix_seed_impl(seed, kStyleSalt));
    UserStyle style;
    style.seed = seed;
    for (int c = 0; c < kNumChannels; ++c) {
        const double scale = c < 3 ? kAccAmplitude : kGyroAmplitude;
        for (int j = 0; j < kStyleComponents; ++j) {
            SinComponent& comp =
                style.components[static_cast<std::size_t>(c)]
                                [static_cast<std::size_t>(j)];
            comp.amplitude = scale * rng.uniform(0.25, 1.0) / (1.0 + 0.6 * j);
            comp.freq_hz = rng.uniform(0.5, 6.0);
            comp.phase = rng.uniform(0.0, 2.0 * M_PI);
        }
    }
    style.tempo_s = rng.uniform(1.5, 2.5);
    style.size_scale = rng.uniform(0.85, 1.2);
    return style;
}

Trial gen_trial(const UserStyle& style, std::uint64_t trial_seed) {
    return render(style, style, 0.0, trial_seed);
}

Trial gen_mimic(const MimicSpec& spec, std::uint64_t trial_seed) {
    if (!(spec.strength >= 0.0 && spec.strength <= 1.0))
        throw DomainError("mimic strength must lie in [0, 1]");
    return render(spec.attacker, spec.target, spec.strength, trial_seed);
}

Trial gen_bad_trial(const UserStyle& style, std::uint64_t trial_seed) {
    Trial trial = gen_trial(style, trial_seed);
    detail::Rng rng(detail::mix_seed_impl(detail::mix_seed_impl(style.seed, trial_seed),
                                          kCorruptSalt));
    const std::size_t n = trial.size();

    // Reverse the channel values (not the timestamps) of a 30% segment.
    const std::size_t seg = std::max<std::size_t>(2, 3 * n / 10);
    const std::size_t seg_start = rng.uniform_int(n - seg + 1);
    for (std::size_t lo = seg_start, hi = seg_start + seg - 1; lo < hi; ++lo, --hi) {
        for (int k = 1; k <= kNumChannels; ++k) {
            const double a = trial.samples[lo].channel_value(k);
            trial.samples[lo].set_channel_value(k, trial.samples[hi].channel_value(k));
            trial.samples[hi].set_channel_value(k, a);
        }
    }

    // 3x amplitude burst over a 20% window.
    const std::size_t win = std::max<std::size_t>(1, n / 5);
    const std::size_t win_start = rng.uniform_int(n - win + 1);
    for (std::size_t i = win_start; i < win_start + win; ++i)
        for (int k = 1; k <= kNumChannels; ++k)
            trial.samples[i].set_channel_value(
                k, 3.0 * trial.samples[i].channel_value(k));
    return trial;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    return detail::mix_seed_impl(base, salt);
}

} // namespace wristauth
