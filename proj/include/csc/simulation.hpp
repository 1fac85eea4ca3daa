// simulation.hpp - Monte Carlo BER sweeps over Eb/N0
#pragma once

#include "csc/channel.hpp"
#include "csc/fdss.hpp"
#include "csc/transceiver.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace csc {

enum class Waveform { plain, linear, sinusoidal, triangular };

std::string_view to_string(Waveform w);
std::optional<Waveform> parse_waveform(std::string_view name);

struct WaveformSpec {
    Waveform waveform = Waveform::plain;
    double deviation = 318.0;
    int harmonics = 64;       // triangular only
    bool down_first = true;   // triangular only
};

FdssFilter design_filter(const WaveformSpec& spec, int subcarriers);

enum class ChannelKind { awgn, multipath };

struct LinkConfig {
    FrameConfig frame;
    WaveformSpec waveform;
    ChannelKind channel = ChannelKind::awgn;
    ChannelProfile profile;  // used when channel == multipath
    std::vector<double> ebn0_grid_db;
    std::int64_t min_bits = 100000;
    std::int64_t max_frames = 1000000;
    std::int64_t min_errors = 100;
    std::uint64_t seed = 1;
    int threads = 0;  // 0: hardware concurrency. Results do not depend on it.

    void validate() const;
};

struct BerPoint {
    double ebn0_db = 0.0;
    double snr_db = 0.0;  // per-subcarrier rho
    double sim_ber = 0.0;
    double theory_ber = 0.0;
    std::int64_t bits = 0;
    std::int64_t errors = 0;
    std::int64_t frames = 0;
    bool converged = false;  // min_bits and min_errors reached before max_frames
};

struct BerCurve {
    std::vector<BerPoint> points;

    bool all_converged() const;
};

// rho = (2/R) 10^(Eb/N0 / 10): two bits per QPSK symbol, symbol energy spread
// over R unit-power subcarriers.
double ebn0_to_subcarrier_snr(double ebn0_db, const FrameConfig& cfg);

// Q(sqrt(snr_post)) for AWGN at the given Eb/N0 (symbol SNR R rho = 2 Eb/N0).
double theoretical_ber(const FdssFilter& filter, const FrameConfig& cfg, double ebn0_db);

// Frames are processed in fixed batches; frame f of grid point p draws from
// Rng(derive(seed, p, f)), so the curve is a function of the config alone.
BerCurve run_ber_sweep(const LinkConfig& cfg);

// Eb/N0 at which the curve crosses `target_ber`, by linear interpolation of
// log10(BER) between the bracketing grid points. Empty when not bracketed.
// Points with zero errors are ignored.
std::optional<double> simulated_crossing_db(const BerCurve& curve, double target_ber);
// Same for the theory column.
std::optional<double> theory_crossing_db(const BerCurve& curve, double target_ber);
// Exact crossing of the AWGN theoretical curve (bisection on Eb/N0).
double theoretical_crossing_db(const FdssFilter& filter, const FrameConfig& cfg, double target_ber);

// CSV: header "ebn0_db,snr_db,sim_ber,theory_ber,bits,frames,errors,converged"
// preceded by '#' metadata lines.
void write_ber_csv(std::ostream& os, const BerCurve& curve, const std::vector<std::string>& metadata);
std::vector<std::string> describe(const LinkConfig& cfg);

// Version string baked in at configure time.
std::string_view library_version();

}  // namespace csc
