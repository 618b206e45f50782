#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wristauth/errors.hpp"

namespace wristauth {

inline constexpr int kNumChannels = 6;
inline constexpr double kDefaultSampleRate = 62.0;
inline constexpr std::size_t kMinTrialLength = 9;

/// One sensor tuple: acceleration in g, angular velocity in deg/s.
struct MotionSample {
    double t = 0.0;
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
    double gx = 0.0;
    double gy = 0.0;
    double gz = 0.0;

    /// Channel k in 1..6, fixed order (ax, ay, az, gx, gy, gz).
    double channel_value(int k) const;
    void set_channel_value(int k, double value);

    bool operator==(const MotionSample&) const = default;
};

/// One motion dimension of a trial, in sample order.
using Channel = std::vector<double>;

/// One recording of one handwritten word.
struct Trial {
    std::vector<MotionSample> samples;
    std::string user_label;  // empty = unset
    std::string word_label;  // empty = unset
    double nominal_rate = kDefaultSampleRate;

    std::size_t size() const noexcept { return samples.size(); }

    bool operator==(const Trial&) const = default;
};

enum class TrialFormat { csv, jsonl };

/// Throws ValidationError unless all Trial invariants hold: at least
/// kMinTrialLength samples, finite channel values, finite non-negative and
/// strictly increasing timestamps.
void validate_trial(const Trial& trial);

/// Parses a trial recording. CSV: optional `# user=` / `# word=` comment
/// lines, a `t,ax,ay,az,gx,gy,gz` header, one sample per row. JSONL: an
/// optional leading metadata object, then one object per sample.
/// Throws ParseError (with line number) on malformed input and
/// ValidationError when the parsed trial violates an invariant.
Trial parse_trial(std::istream& in, TrialFormat format);
Trial parse_trial(const std::string& text, TrialFormat format);

/// Reads a trial file, picking the format from the extension
/// (".jsonl" -> jsonl, anything else -> csv).
Trial load_trial(const std::filesystem::path& path);

/// Projects motion dimension k in 1..6 out of a trial.
Channel channel(const Trial& trial, int k);

/// Writes a trial so that parse_trial(write_trial(t)) == t exactly
/// (floating-point values are emitted in shortest round-trip form).
void write_trial(const Trial& trial, std::ostream& out, TrialFormat format);
std::string write_trial(const Trial& trial, TrialFormat format);
void save_trial(const Trial& trial, const std::filesystem::path& path);

/// Shortest decimal representation that parses back to exactly `value`.
std::string format_double(double value);

} // namespace wristauth
