// config.hpp - JSON run configuration for the command-line tool
//
// {
//   "frame":    {"subcarriers": 336, "fft_size": 512, "cp_len": 96, "repetition": 1, "constellation": "qpsk"},
//   "waveform": {"type": "sinusoidal", "deviation": 318, "harmonics": 64, "down_first": true},
//   "channel":  {"type": "multipath", "tap_powers_db": [0, -10, -20], "rician_k": 10, "tap_delays": [0, 1, 2]},
//   "sweep":    {"ebn0_db": [0, 2, 4], "min_bits": 100000, "max_frames": 1000000, "min_errors": 100,
//                "seed": 1, "threads": 0},
//   "analysis": {"frames": 1000, "nfft": 512, "snr_db": [-10, 0, 10], "win_len": 64, "hop": 8},
//   "output_dir": "out"
// }
//
// Every section and key is optional (defaults above, AWGN channel), but
// unknown keys and wrongly typed values are rejected.
#pragma once

#include "csc/simulation.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace csc {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

struct AnalysisSettings {
    int frames = 1000;
    int nfft = 512;
    std::vector<double> snr_db{-10, -5, 0, 5, 10, 15, 20, 25, 30};
    int win_len = 64;
    int hop = 8;
};

struct RunConfig {
    LinkConfig link;
    AnalysisSettings analysis;
    std::filesystem::path output_dir = ".";
    std::string canonical;  // normalized JSON echo, for CSV metadata
};

// Throws ConfigError listing every offending key.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace csc
