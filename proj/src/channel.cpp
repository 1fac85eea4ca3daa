#include "csc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace csc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xd6e8feb86659fd93ULL));
}

cplx Rng::complex_gaussian(double variance) {
    const double sigma = std::sqrt(0.5 * variance);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {sigma * re, sigma * im};
}

void ChannelProfile::validate(int cp_len) const {
    if (tap_powers_db.empty()) throw std::invalid_argument("channel profile needs at least one tap");
    if (tap_powers_db.size() != tap_delays.size())
        throw std::invalid_argument("tap_powers_db and tap_delays must have the same length");
    for (double p : tap_powers_db)
        if (!std::isfinite(p)) throw std::invalid_argument("tap powers must be finite");
    if (!std::isfinite(rician_k) || rician_k < 0.0) throw std::invalid_argument("rician_k must be finite and >= 0");
    for (std::size_t i = 0; i < tap_delays.size(); ++i) {
        if (tap_delays[i] < 0) throw std::invalid_argument("tap delays must be non-negative");
        if (i > 0 && tap_delays[i] <= tap_delays[i - 1])
            throw std::invalid_argument("tap delays must be strictly increasing");
    }
    if (tap_delays.back() >= cp_len && !(tap_delays.back() == 0 && cp_len == 0))
        throw std::invalid_argument("max tap delay " + std::to_string(tap_delays.back()) +
                                    " must be shorter than the CP (" + std::to_string(cp_len) + ")");
}

std::vector<double> ChannelProfile::linear_powers() const {
    std::vector<double> p(tap_powers_db.size());
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::pow(10.0, tap_powers_db[i] / 10.0);
        total += p[i];
    }
    for (auto& v : p) v /= total;
    return p;
}

ChannelRealization draw(const ChannelProfile& profile, Rng& rng) {
    const std::vector<double> p = profile.linear_powers();
    ChannelRealization ch;
    ch.delays = profile.tap_delays;
    ch.taps.resize(p.size());
    const double k = profile.rician_k;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i == 0) {
            const double los = std::sqrt(p[0] * k / (k + 1.0));
            ch.taps[0] = cplx{los, 0.0} + rng.complex_gaussian(p[0] / (k + 1.0));
        } else {
            ch.taps[i] = rng.complex_gaussian(p[i]);
        }
    }
    return ch;
}

ComplexVector apply(std::span<const cplx> signal, const ChannelRealization& ch, double noise_var, Rng& rng) {
    if (ch.taps.size() != ch.delays.size()) throw std::invalid_argument("channel taps/delays size mismatch");
    if (noise_var < 0.0) throw std::invalid_argument("noise_var must be >= 0");
    ComplexVector out(signal.size());
    for (std::size_t i = 0; i < ch.taps.size(); ++i) {
        const auto d = static_cast<std::size_t>(ch.delays[i]);
        for (std::size_t n = d; n < signal.size(); ++n) out[n] += ch.taps[i] * signal[n - d];
    }
    if (noise_var > 0.0)
        for (auto& v : out) v += rng.complex_gaussian(noise_var);
    return out;
}

ComplexVector freq_response(const ChannelRealization& ch, int fft_size) {
    if (fft_size < 1) throw std::invalid_argument("fft_size must be >= 1");
    ComplexVector h(static_cast<std::size_t>(fft_size));
    for (std::size_t i = 0; i < ch.taps.size(); ++i) {
        const long d = ch.delays[i];
        for (int k = 0; k < fft_size; ++k) {
            // reduce k*d modulo N before forming the angle
            const long e = (static_cast<long>(k) * d) % fft_size;
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(e) / fft_size;
            h[static_cast<std::size_t>(k)] += ch.taps[i] * cplx{std::cos(angle), std::sin(angle)};
        }
    }
    return h;
}

}  // namespace csc
