#include "csc/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace csc {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
    return out;
}

// Collects every problem instead of stopping at the first one.
class Reader {
public:
    std::vector<std::string> problems;

    const json* section(const json& root, const std::string& name, const std::set<std::string>& allowed) {
        if (!root.contains(name)) return nullptr;
        const json& s = root.at(name);
        if (!s.is_object()) {
            problems.push_back(name + ": expected an object");
            return nullptr;
        }
        for (const auto& [key, _] : s.items())
            if (!allowed.count(key)) problems.push_back("unknown key '" + name + "." + key + "'");
        return &s;
    }

    template <class T>
    void integer(const json* s, const std::string& path, const char* key, T& out) {
        if (!s || !s->contains(key)) return;
        const json& v = s->at(key);
        if (!v.is_number_integer()) {
            problems.push_back(path + "." + key + ": expected an integer");
            return;
        }
        out = v.get<T>();
    }

    void number(const json* s, const std::string& path, const char* key, double& out) {
        if (!s || !s->contains(key)) return;
        const json& v = s->at(key);
        if (!v.is_number()) {
            problems.push_back(path + "." + key + ": expected a number");
            return;
        }
        out = v.get<double>();
    }

    void boolean(const json* s, const std::string& path, const char* key, bool& out) {
        if (!s || !s->contains(key)) return;
        const json& v = s->at(key);
        if (!v.is_boolean()) {
            problems.push_back(path + "." + key + ": expected true/false");
            return;
        }
        out = v.get<bool>();
    }

    void text(const json* s, const std::string& path, const char* key, std::string& out) {
        if (!s || !s->contains(key)) return;
        const json& v = s->at(key);
        if (!v.is_string()) {
            problems.push_back(path + "." + key + ": expected a string");
            return;
        }
        out = v.get<std::string>();
    }

    template <class T>
    void list(const json* s, const std::string& path, const char* key, std::vector<T>& out) {
        if (!s || !s->contains(key)) return;
        const json& v = s->at(key);
        bool ok = v.is_array();
        if (ok) {
            for (const auto& e : v) {
                if constexpr (std::is_integral_v<T>) ok = ok && e.is_number_integer();
                else ok = ok && e.is_number();
            }
        }
        if (!ok) {
            problems.push_back(path + "." + key + ": expected a list of " +
                               (std::is_integral_v<T> ? "integers" : "numbers"));
            return;
        }
        out = v.get<std::vector<T>>();
    }
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error("invalid configuration: " + join(problems)), problems_(std::move(problems)) {}

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    if (!root.is_object()) throw ConfigError({"top level must be an object"});

    Reader rd;
    const std::set<std::string> top{"frame", "waveform", "channel", "sweep", "analysis", "output_dir"};
    for (const auto& [key, _] : root.items())
        if (!top.count(key)) rd.problems.push_back("unknown key '" + key + "'");

    RunConfig rc;
    LinkConfig& link = rc.link;

    const json* frame = rd.section(root, "frame", {"subcarriers", "fft_size", "cp_len", "repetition", "constellation"});
    rd.integer(frame, "frame", "subcarriers", link.frame.subcarriers);
    rd.integer(frame, "frame", "fft_size", link.frame.fft_size);
    rd.integer(frame, "frame", "cp_len", link.frame.cp_len);
    rd.integer(frame, "frame", "repetition", link.frame.repetition);
    std::string constellation = "qpsk";
    rd.text(frame, "frame", "constellation", constellation);
    if (constellation != "qpsk") rd.problems.push_back("frame.constellation: only 'qpsk' is supported");

    const json* wave = rd.section(root, "waveform", {"type", "deviation", "harmonics", "down_first"});
    std::string wave_type = "plain";
    rd.text(wave, "waveform", "type", wave_type);
    if (auto w = parse_waveform(wave_type)) link.waveform.waveform = *w;
    else rd.problems.push_back("waveform.type: unknown waveform '" + wave_type + "'");
    rd.number(wave, "waveform", "deviation", link.waveform.deviation);
    rd.integer(wave, "waveform", "harmonics", link.waveform.harmonics);
    rd.boolean(wave, "waveform", "down_first", link.waveform.down_first);

    const json* chan = rd.section(root, "channel", {"type", "tap_powers_db", "rician_k", "tap_delays"});
    std::string chan_type = "awgn";
    rd.text(chan, "channel", "type", chan_type);
    if (chan_type == "awgn") link.channel = ChannelKind::awgn;
    else if (chan_type == "multipath") link.channel = ChannelKind::multipath;
    else rd.problems.push_back("channel.type: expected 'awgn' or 'multipath'");
    rd.list(chan, "channel", "tap_powers_db", link.profile.tap_powers_db);
    rd.number(chan, "channel", "rician_k", link.profile.rician_k);
    rd.list(chan, "channel", "tap_delays", link.profile.tap_delays);

    const json* sweep = rd.section(root, "sweep", {"ebn0_db", "min_bits", "max_frames", "min_errors", "seed", "threads"});
    rd.list(sweep, "sweep", "ebn0_db", link.ebn0_grid_db);
    rd.integer(sweep, "sweep", "min_bits", link.min_bits);
    rd.integer(sweep, "sweep", "max_frames", link.max_frames);
    rd.integer(sweep, "sweep", "min_errors", link.min_errors);
    rd.integer(sweep, "sweep", "seed", link.seed);
    rd.integer(sweep, "sweep", "threads", link.threads);

    const json* an = rd.section(root, "analysis", {"frames", "nfft", "snr_db", "win_len", "hop"});
    rd.integer(an, "analysis", "frames", rc.analysis.frames);
    rd.integer(an, "analysis", "nfft", rc.analysis.nfft);
    rd.list(an, "analysis", "snr_db", rc.analysis.snr_db);
    rd.integer(an, "analysis", "win_len", rc.analysis.win_len);
    rd.integer(an, "analysis", "hop", rc.analysis.hop);

    std::string out_dir = ".";
    rd.text(&root, "", "output_dir", out_dir);
    rc.output_dir = out_dir;

    // Semantic checks, reported with the same key paths.
    auto check = [&](const char* what, auto&& fn) {
        try {
            fn();
        } catch (const std::invalid_argument& e) {
            rd.problems.push_back(std::string(what) + ": " + e.what());
        }
    };
    check("frame", [&] { link.frame.validate(); });
    if (link.channel == ChannelKind::multipath) check("channel", [&] { link.profile.validate(link.frame.cp_len); });
    if (link.waveform.deviation < 0.0 || link.waveform.deviation > link.frame.subcarriers)
        rd.problems.push_back("waveform.deviation: must be in [0, M]");
    if (link.waveform.harmonics < 1) rd.problems.push_back("waveform.harmonics: must be >= 1");
    if (link.min_bits < 10000) rd.problems.push_back("sweep.min_bits: must be >= 10000");
    if (link.max_frames < 1) rd.problems.push_back("sweep.max_frames: must be >= 1");
    if (link.min_errors < 1) rd.problems.push_back("sweep.min_errors: must be >= 1");
    if (link.threads < 0) rd.problems.push_back("sweep.threads: must be >= 0");
    if (rc.analysis.frames < 1) rd.problems.push_back("analysis.frames: must be >= 1");
    if (rc.analysis.nfft < 1) rd.problems.push_back("analysis.nfft: must be >= 1");
    if (rc.analysis.win_len < 1 || rc.analysis.hop < 1) rd.problems.push_back("analysis.win_len/hop: must be >= 1");

    if (!rd.problems.empty()) throw ConfigError(rd.problems);
    rc.canonical = root.dump();
    return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError({"cannot open config file " + path.string()});
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_run_config(ss.str());
}

}  // namespace csc
