#include "wristauth/signal.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include <json.hpp>

namespace wristauth {

namespace {

constexpr std::string_view kCsvHeader = "t,ax,ay,az,gx,gy,gz";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_field(std::string_view field, std::size_t line, int column) {
    field = trim(field);
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("malformed value '" + std::string(field) + "' in column " +
                             std::to_string(column),
                         line);
    }
    if (!std::isfinite(value)) {
        throw ParseError("non-finite value '" + std::string(field) + "' in column " +
                             std::to_string(column),
                         line);
    }
    return value;
}

void apply_metadata_comment(Trial& trial, std::string_view comment) {
    comment.remove_prefix(1);  // '#'
    comment = trim(comment);
    if (comment.starts_with("user=")) {
        trial.user_label = std::string(comment.substr(5));
    } else if (comment.starts_with("word=")) {
        trial.word_label = std::string(comment.substr(5));
    }
    // other comments are ignored
}

Trial parse_csv(std::istream& in) {
    Trial trial;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty()) continue;
        if (view.front() == '#') {
            apply_metadata_comment(trial, view);
            continue;
        }
        if (!header_seen) {
            if (view != kCsvHeader) {
                throw ParseError("expected header '" + std::string(kCsvHeader) +
                                     "', got '" + std::string(view) + "'",
                                 line_no);
            }
            header_seen = true;
            continue;
        }
        MotionSample sample;
        double* fields[7] = {&sample.t,  &sample.ax, &sample.ay, &sample.az,
                             &sample.gx, &sample.gy, &sample.gz};
        std::size_t pos = 0;
        for (int col = 0; col < 7; ++col) {
            std::size_t comma = view.find(',', pos);
            bool last = col == 6;
            if (!last && comma == std::string_view::npos)
                throw ParseError("expected 7 comma-separated values", line_no);
            if (last && comma != std::string_view::npos)
                throw ParseError("expected 7 comma-separated values", line_no);
            std::string_view field =
                last ? view.substr(pos) : view.substr(pos, comma - pos);
            *fields[col] = parse_field(field, line_no, col + 1);
            pos = comma + 1;
        }
        trial.samples.push_back(sample);
    }
    if (!header_seen) throw ParseError("missing CSV header", line_no);
    validate_trial(trial);
    return trial;
}

Trial parse_jsonl(std::istream& in) {
    using nlohmann::json;
    Trial trial;
    std::string line;
    std::size_t line_no = 0;
    bool first_object = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty()) continue;
        json obj;
        try {
            obj = json::parse(view);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
        }
        if (!obj.is_object()) throw ParseError("expected a JSON object", line_no);
        if (first_object && !obj.contains("t")) {
            // leading metadata object
            if (obj.contains("user")) trial.user_label = obj["user"].get<std::string>();
            if (obj.contains("word")) trial.word_label = obj["word"].get<std::string>();
            first_object = false;
            continue;
        }
        first_object = false;
        MotionSample sample;
        struct Key { const char* name; double* slot; };
        const Key keys[7] = {{"t", &sample.t},   {"ax", &sample.ax}, {"ay", &sample.ay},
                             {"az", &sample.az}, {"gx", &sample.gx}, {"gy", &sample.gy},
                             {"gz", &sample.gz}};
        for (const auto& key : keys) {
            auto it = obj.find(key.name);
            if (it == obj.end() || !it->is_number())
                throw ParseError(std::string("missing numeric key '") + key.name + "'",
                                 line_no);
            *key.slot = it->get<double>();
        }
        trial.samples.push_back(sample);
    }
    validate_trial(trial);
    return trial;
}

void write_csv(const Trial& trial, std::ostream& out) {
    if (!trial.user_label.empty()) out << "# user=" << trial.user_label << '\n';
    if (!trial.word_label.empty()) out << "# word=" << trial.word_label << '\n';
    out << kCsvHeader << '\n';
    for (const auto& s : trial.samples) {
        out << format_double(s.t) << ',' << format_double(s.ax) << ','
            << format_double(s.ay) << ',' << format_double(s.az) << ','
            << format_double(s.gx) << ',' << format_double(s.gy) << ','
            << format_double(s.gz) << '\n';
    }
}

void write_jsonl(const Trial& trial, std::ostream& out) {
    using ordered = nlohmann::ordered_json;
    if (!trial.user_label.empty() || !trial.word_label.empty()) {
        ordered meta;
        meta["user"] = trial.user_label;
        meta["word"] = trial.word_label;
        out << meta.dump() << '\n';
    }
    for (const auto& s : trial.samples) {
        ordered obj;
        obj["t"] = s.t;
        obj["ax"] = s.ax;
        obj["ay"] = s.ay;
        obj["az"] = s.az;
        obj["gx"] = s.gx;
        obj["gy"] = s.gy;
        obj["gz"] = s.gz;
        out << obj.dump() << '\n';
    }
}

TrialFormat format_for(const std::filesystem::path& path) {
    return path.extension() == ".jsonl" ? TrialFormat::jsonl : TrialFormat::csv;
}

} // namespace

double MotionSample::channel_value(int k) const {
    switch (k) {
        case 1: return ax;
        case 2: return ay;
        case 3: return az;
        case 4: return gx;
        case 5: return gy;
        case 6: return gz;
        default: throw DomainError("channel index " + std::to_string(k) + " out of 1..6");
    }
}

void MotionSample::set_channel_value(int k, double value) {
    switch (k) {
        case 1: ax = value; return;
        case 2: ay = value; return;
        case 3: az = value; return;
        case 4: gx = value; return;
        case 5: gy = value; return;
        case 6: gz = value; return;
        default: throw DomainError("channel index " + std::to_string(k) + " out of 1..6");
    }
}

void validate_trial(const Trial& trial) {
    if (trial.size() < kMinTrialLength) {
        throw ValidationError("trial too short: " + std::to_string(trial.size()) +
                              " samples, need at least " +
                              std::to_string(kMinTrialLength));
    }
    double prev_t = -1.0;
    for (std::size_t i = 0; i < trial.samples.size(); ++i) {
        const auto& s = trial.samples[i];
        if (!std::isfinite(s.t) || s.t < 0.0) {
            throw ValidationError("invalid timestamp at sample " + std::to_string(i));
        }
        if (i > 0 && s.t <= prev_t) {
            throw ValidationError("timestamps not strictly increasing at sample " +
                                  std::to_string(i));
        }
        prev_t = s.t;
        for (int k = 1; k <= kNumChannels; ++k) {
            if (!std::isfinite(s.channel_value(k))) {
                throw ValidationError("non-finite value in channel " + std::to_string(k) +
                                      " at sample " + std::to_string(i));
            }
        }
    }
}

Trial parse_trial(std::istream& in, TrialFormat format) {
    return format == TrialFormat::csv ? parse_csv(in) : parse_jsonl(in);
}

Trial parse_trial(const std::string& text, TrialFormat format) {
    std::istringstream in(text);
    return parse_trial(in, format);
}

Trial load_trial(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trial file " + path.string());
    try {
        return parse_trial(in, format_for(path));
    } catch (const Error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

Channel channel(const Trial& trial, int k) {
    if (k < 1 || k > kNumChannels)
        throw DomainError("channel index " + std::to_string(k) + " out of 1..6");
    Channel values;
    values.reserve(trial.size());
    for (const auto& s : trial.samples) values.push_back(s.channel_value(k));
    return values;
}

void write_trial(const Trial& trial, std::ostream& out, TrialFormat format) {
    if (format == TrialFormat::csv) {
        write_csv(trial, out);
    } else {
        write_jsonl(trial, out);
    }
}

std::string write_trial(const Trial& trial, TrialFormat format) {
    std::ostringstream out;
    write_trial(trial, out, format);
    return out.str();
}

void save_trial(const Trial& trial, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write trial file " + path.string());
    write_trial(trial, out, format_for(path));
    if (!out) throw IoError("failed writing trial file " + path.string());
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

} // namespace wristauth
