// transceiver.hpp - DFT-s-OFDM transmitter with FDSS and single-tap MMSE-FDE receiver
//
// Transmit chain: data on every R-th input of an M-point DFT -> multiply by
// the FDSS coefficients -> map onto an N-point grid -> IDFT -> cyclic prefix.
// Receive chain: drop CP -> DFT -> combine the R frequency copies -> MMSE
// equalize -> M/R-point IDFT -> QPSK slicing.
//
// Subcarrier k (L_d <= k <= L_u) sits at index (k mod M) of the M-point DFT
// output and at index (k mod N) of the N-point grid (natural FFT order,
// negative k wrapped).
//
// Power convention: transmit samples have unit average power and the
// receiver rescales the occupied bins so that, for unit-energy symbols,
// subcarrier k carries power |c_k|^2. `noise_var` handed to the demodulator
// is the per-subcarrier noise on that scale, i.e. 1/rho with rho the
// per-subcarrier SNR. The per-sample time-domain variance that produces it is
// (N/M) * noise_var (see sample_noise_variance).

#pragma once

#include "csc/fdss.hpp"
#include "csc/numerics.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace csc {

enum class Constellation { qpsk };

struct FrameConfig {
    int subcarriers = 336;  // M
    int fft_size = 512;     // N
    int cp_len = 96;        // round(36.3 ns / (193.4 ns / 512))
    int repetition = 1;     // R, must divide M
    Constellation constellation = Constellation::qpsk;

    int data_symbols() const { return subcarriers / repetition; }
    int bits_per_frame() const { return 2 * data_symbols(); }
    int frame_length() const { return fft_size + cp_len; }

    // Throws std::invalid_argument when M > N, cp_len >= N, R does not divide M, ...
    void validate() const;
};

// Gray QPSK: (b0, b1) -> ((1 - 2 b0) + j (1 - 2 b1)) / sqrt(2).
ComplexVector qpsk_map(std::span<const std::uint8_t> bits);
// Hard decisions on the quadrant.
std::vector<std::uint8_t> qpsk_demap(std::span<const cplx> symbols);

struct DataFrame {
    ComplexVector symbols;           // M/R entries
    std::vector<std::uint8_t> bits;  // 2 per symbol

    static DataFrame from_bits(std::vector<std::uint8_t> bits);
};

struct TxSignal {
    ComplexVector samples;       // N + cp_len, CP first
    ComplexVector freq_symbols;  // shaped symbols X_k, k = L_d..L_u

    std::span<const cplx> body(int cp_len) const {
        return std::span<const cplx>(samples).subspan(static_cast<std::size_t>(cp_len));
    }
};

struct Demodulated {
    ComplexVector symbols;     // MMSE estimates, M/R entries
    std::vector<double> soft_bits;  // Re/Im per symbol; positive means bit 0
    std::vector<std::uint8_t> hard_bits;
};

// Time-domain per-sample noise variance that yields per-subcarrier noise
// `subcarrier_noise_var` after the receiver's scaling.
double sample_noise_variance(double subcarrier_noise_var, const FrameConfig& cfg);

// Holds the DFT plans for one (filter, config) pair. Stateless across calls,
// so one instance can serve concurrent workers.
class Modem {
public:
    Modem(FdssFilter filter, FrameConfig cfg);

    const FdssFilter& filter() const { return filter_; }
    const FrameConfig& config() const { return cfg_; }

    TxSignal modulate(std::span<const cplx> symbols) const;

    // `channel_freq` is the channel response on the N-point grid (natural
    // order, as produced by channel::freq_response) or empty for an ideal
    // channel.
    Demodulated demodulate(std::span<const cplx> rx, std::span<const cplx> channel_freq,
                           double noise_var) const;

private:
    FdssFilter filter_;
    FrameConfig cfg_;
    DftPlan plan_m_;
    DftPlan plan_n_;
    DftPlan plan_data_;  // M/R points
    double tx_scale_;    // N sqrt(R) / M
};

TxSignal modulate(const DataFrame& data, const FdssFilter& filter, const FrameConfig& cfg);
Demodulated demodulate(std::span<const cplx> rx, std::span<const cplx> channel_freq,
                       const FdssFilter& filter, const FrameConfig& cfg, double noise_var);

}  // namespace csc
