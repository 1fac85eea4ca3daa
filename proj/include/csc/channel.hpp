// channel.hpp - AWGN and tapped-delay-line Rician/Rayleigh block-fading channel
#pragma once

#include "csc/numerics.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace csc {

// Seeded source for all stochastic draws. Streams for concurrent workers are
// derived from (seed, stream ids) by hashing, never by sharing one engine.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

    // Circularly symmetric complex Gaussian with E|z|^2 = variance.
    cplx complex_gaussian(double variance);
    std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

struct ChannelProfile {
    std::vector<double> tap_powers_db{0.0, -10.0, -20.0};
    double rician_k = 10.0;  // linear, first tap only
    std::vector<int> tap_delays{0, 1, 2};  // samples

    // Delays strictly increasing and non-negative, sizes match, powers and K
    // finite, K >= 0, max delay < cp_len.
    void validate(int cp_len) const;
    // Tap powers scaled to sum to one.
    std::vector<double> linear_powers() const;

    static ChannelProfile awgn() { return {{0.0}, 0.0, {0}}; }
};

struct ChannelRealization {
    std::vector<cplx> taps;
    std::vector<int> delays;

    static ChannelRealization identity() { return {{cplx{1.0, 0.0}}, {0}}; }
};

// Tap 0: sqrt(p0 K/(K+1)) + CN(0, p0/(K+1)); other taps CN(0, p_i).
ChannelRealization draw(const ChannelProfile& profile, Rng& rng);

// y[n] = sum_i tap_i x[n - d_i] (zero history, truncated to len(x)) plus
// CN(0, noise_var) per sample.
ComplexVector apply(std::span<const cplx> signal, const ChannelRealization& ch, double noise_var, Rng& rng);

// H_k = sum_i tap_i e^{-j 2 pi k d_i / N}, k = 0..N-1 in natural order.
ComplexVector freq_response(const ChannelRealization& ch, int fft_size);

}  // namespace csc
