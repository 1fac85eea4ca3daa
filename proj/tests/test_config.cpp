#include "csc/config.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>

using namespace csc;

namespace {

bool mentions(const ConfigError& e, const std::string& needle) {
    return std::any_of(e.problems().begin(), e.problems().end(),
                       [&](const std::string& p) { return p.find(needle) != std::string::npos; });
}

ConfigError capture(const std::string& text) {
    try {
        parse_run_config(text);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected a ConfigError for: " << text);
    return ConfigError({});
}

}  // namespace

TEST_CASE("empty object gives defaults", "[config]") {
    const auto rc = parse_run_config("{}");
    CHECK(rc.link.frame.subcarriers == 336);
    CHECK(rc.link.frame.fft_size == 512);
    CHECK(rc.link.frame.cp_len == 96);
    CHECK(rc.link.waveform.waveform == Waveform::plain);
    CHECK(rc.link.channel == ChannelKind::awgn);
    CHECK(rc.analysis.win_len == 64);
    CHECK(rc.output_dir == ".");
}

TEST_CASE("full configuration", "[config]") {
    const auto rc = parse_run_config(R"({
        "frame": {"subcarriers": 336, "fft_size": 512, "cp_len": 96, "repetition": 4, "constellation": "qpsk"},
        "waveform": {"type": "triangular", "deviation": 300, "harmonics": 32, "down_first": false},
        "channel": {"type": "multipath", "tap_powers_db": [0, -3], "rician_k": 0, "tap_delays": [0, 5]},
        "sweep": {"ebn0_db": [1, 2.5], "min_bits": 20000, "max_frames": 50, "min_errors": 7, "seed": 99, "threads": 2},
        "analysis": {"frames": 12, "nfft": 256, "snr_db": [0], "win_len": 32, "hop": 4},
        "output_dir": "results"})");
    CHECK(rc.link.frame.repetition == 4);
    CHECK(rc.link.waveform.waveform == Waveform::triangular);
    CHECK(rc.link.waveform.deviation == 300.0);
    CHECK(rc.link.waveform.harmonics == 32);
    CHECK_FALSE(rc.link.waveform.down_first);
    CHECK(rc.link.channel == ChannelKind::multipath);
    CHECK(rc.link.profile.tap_delays == std::vector<int>{0, 5});
    CHECK(rc.link.ebn0_grid_db == std::vector<double>{1.0, 2.5});
    CHECK(rc.link.seed == 99u);
    CHECK(rc.link.threads == 2);
    CHECK(rc.analysis.nfft == 256);
    CHECK(rc.output_dir == "results");
    CHECK_FALSE(rc.canonical.empty());
}

TEST_CASE("every offending key is reported", "[config]") {
    const auto e = capture(R"({"frame": {"subcarriers": 336, "fftsize": 512}, "colour": 1,
                               "sweep": {"min_bits": "many", "seed": 1.5}, "waveform": {"type": "square"}})");
    CHECK(mentions(e, "frame.fftsize"));
    CHECK(mentions(e, "'colour'"));
    CHECK(mentions(e, "sweep.min_bits"));
    CHECK(mentions(e, "sweep.seed"));
    CHECK(mentions(e, "waveform.type"));
    CHECK(e.problems().size() == 5);
}

TEST_CASE("semantic checks", "[config]") {
    CHECK(mentions(capture(R"({"frame": {"repetition": 5}})"), "frame"));
    CHECK(mentions(capture(R"({"waveform": {"deviation": 400}})"), "waveform.deviation"));
    CHECK(mentions(capture(R"({"sweep": {"min_bits": 100}})"), "sweep.min_bits"));
    CHECK(mentions(capture(R"({"channel": {"type": "multipath", "tap_delays": [0, 1, 200]}})"), "channel"));
    CHECK(mentions(capture(R"({"frame": {"constellation": "16qam"}})"), "frame.constellation"));
    CHECK(mentions(capture("{not json"), "malformed"));
    CHECK(mentions(capture("[1, 2]"), "top level"));
    CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("shipped configurations are valid", "[config]") {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(CSC_CONFIG_DIR)) {
        if (entry.path().extension() != ".json") continue;
        INFO(entry.path());
        CHECK_NOTHROW(load_run_config(entry.path()));
        ++count;
    }
    CHECK(count >= 12);
}
