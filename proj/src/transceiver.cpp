#include "csc/transceiver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace csc {

namespace {

std::size_t wrap_index(int k, int size) {
    const int r = k % size;
    return static_cast<std::size_t>(r < 0 ? r + size : r);
}

}  // namespace

void FrameConfig::validate() const {
    if (subcarriers < 1) throw std::invalid_argument("M must be >= 1");
    if (fft_size < subcarriers) throw std::invalid_argument("M must not exceed N");
    if (cp_len < 0 || cp_len >= fft_size) throw std::invalid_argument("cp_len must be in [0, N)");
    if (repetition < 1 || subcarriers % repetition != 0)
        throw std::invalid_argument("repetition factor R = " + std::to_string(repetition) +
                                    " must divide M = " + std::to_string(subcarriers));
}

ComplexVector qpsk_map(std::span<const std::uint8_t> bits) {
    if (bits.size() % 2 != 0) throw std::invalid_argument("QPSK mapping needs an even number of bits");
    const double a = std::numbers::sqrt2 / 2.0;
    ComplexVector out(bits.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double re = bits[2 * i] ? -a : a;
        const double im = bits[2 * i + 1] ? -a : a;
        out[i] = {re, im};
    }
    return out;
}

std::vector<std::uint8_t> qpsk_demap(std::span<const cplx> symbols) {
    std::vector<std::uint8_t> bits(2 * symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        bits[2 * i] = symbols[i].real() < 0.0 ? 1 : 0;
        bits[2 * i + 1] = symbols[i].imag() < 0.0 ? 1 : 0;
    }
    return bits;
}

DataFrame DataFrame::from_bits(std::vector<std::uint8_t> bits) {
    DataFrame f;
    f.symbols = qpsk_map(bits);
    f.bits = std::move(bits);
    return f;
}

double sample_noise_variance(double subcarrier_noise_var, const FrameConfig& cfg) {
    return subcarrier_noise_var * static_cast<double>(cfg.fft_size) / cfg.subcarriers;
}

Modem::Modem(FdssFilter filter, FrameConfig cfg)
    : filter_(std::move(filter)),
      cfg_(cfg),
      plan_m_(static_cast<std::size_t>(cfg.subcarriers > 0 ? cfg.subcarriers : 1)),
      plan_n_(static_cast<std::size_t>(cfg.fft_size > 0 ? cfg.fft_size : 1)),
      plan_data_(static_cast<std::size_t>(
          cfg.repetition > 0 && cfg.subcarriers % cfg.repetition == 0 && cfg.subcarriers > 0
              ? cfg.subcarriers / cfg.repetition
              : 1)) {
    cfg_.validate();
    if (filter_.subcarriers() != cfg_.subcarriers)
        throw std::invalid_argument("filter has " + std::to_string(filter_.subcarriers()) +
                                    " coefficients, frame expects M = " + std::to_string(cfg_.subcarriers));
    tx_scale_ = static_cast<double>(cfg_.fft_size) * std::sqrt(static_cast<double>(cfg_.repetition)) /
                cfg_.subcarriers;
}

TxSignal Modem::modulate(std::span<const cplx> symbols) const {
    const int m = cfg_.subcarriers;
    const int n = cfg_.fft_size;
    const int r = cfg_.repetition;
    if (symbols.size() != static_cast<std::size_t>(m / r))
        throw std::invalid_argument("frame needs M/R = " + std::to_string(m / r) + " symbols, got " +
                                    std::to_string(symbols.size()));

    // Zero-stuffing by R in time tiles the M/R-point DFT R times in frequency.
    ComplexVector spread(static_cast<std::size_t>(m));
    if (r == 1) {
        plan_m_.forward(symbols, spread);
    } else {
        const std::size_t per_copy = symbols.size();
        plan_data_.forward(symbols, std::span<cplx>(spread).first(per_copy));
        for (std::size_t i = per_copy; i < spread.size(); ++i) spread[i] = spread[i - per_copy];
    }

    TxSignal tx;
    tx.freq_symbols.resize(static_cast<std::size_t>(m));
    ComplexVector grid(static_cast<std::size_t>(n));
    const int lo = filter_.lower();
    for (int k = lo; k <= filter_.upper(); ++k) {
        const cplx x = filter_.coeffs()[static_cast<std::size_t>(k - lo)] * spread[wrap_index(k, m)];
        tx.freq_symbols[static_cast<std::size_t>(k - lo)] = x;
        grid[wrap_index(k, n)] = x;
    }

    ComplexVector body(static_cast<std::size_t>(n));
    plan_n_.inverse(grid, body);
    tx.samples.resize(static_cast<std::size_t>(n + cfg_.cp_len));
    for (int i = 0; i < n; ++i) {
        const cplx v = body[static_cast<std::size_t>(i)] * tx_scale_;
        tx.samples[static_cast<std::size_t>(cfg_.cp_len + i)] = v;
        if (i >= n - cfg_.cp_len) tx.samples[static_cast<std::size_t>(i - (n - cfg_.cp_len))] = v;
    }
    return tx;
}

Demodulated Modem::demodulate(std::span<const cplx> rx, std::span<const cplx> channel_freq,
                              double noise_var) const {
    const int m = cfg_.subcarriers;
    const int n = cfg_.fft_size;
    const int r = cfg_.repetition;
    const int per_copy = m / r;
    if (rx.empty()) throw std::invalid_argument("demodulate: empty input");
    if (rx.size() != static_cast<std::size_t>(n + cfg_.cp_len))
        throw std::invalid_argument("demodulate: expected N + cp_len = " + std::to_string(n + cfg_.cp_len) +
                                    " samples, got " + std::to_string(rx.size()));
    if (!channel_freq.empty() && channel_freq.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("demodulate: channel response must cover the N-point grid");
    if (!(noise_var >= 0.0)) throw std::invalid_argument("demodulate: noise_var must be >= 0");

    ComplexVector spectrum(static_cast<std::size_t>(n));
    plan_n_.forward(rx.subspan(static_cast<std::size_t>(cfg_.cp_len)), spectrum);

    // Signal on subcarrier k becomes c_k H_k D~_k with E|D~_k|^2 = 1.
    const double rx_scale = 1.0 / (tx_scale_ * std::sqrt(static_cast<double>(per_copy)));
    const int lo = filter_.lower();

    ComplexVector equalized(static_cast<std::size_t>(per_copy));
    for (int kappa = lo; kappa < lo + per_copy; ++kappa) {
        cplx combined{};
        double gain = 0.0;
        for (int u = 0; u < r; ++u) {
            const int k = kappa + u * per_copy;
            const std::size_t bin = wrap_index(k, n);
            cplx g = filter_.coeffs()[static_cast<std::size_t>(k - lo)];
            if (!channel_freq.empty()) g *= channel_freq[bin];
            combined += std::conj(g) * spectrum[bin] * rx_scale;
            gain += std::norm(g);
        }
        const double denom = gain + noise_var;
        equalized[wrap_index(kappa, per_copy)] = denom > 0.0 ? combined / denom : cplx{};
    }

    Demodulated out;
    out.symbols.resize(static_cast<std::size_t>(per_copy));
    plan_data_.inverse(equalized, out.symbols);
    const double despread = std::sqrt(static_cast<double>(per_copy));
    for (auto& s : out.symbols) s *= despread;

    out.soft_bits.resize(2 * out.symbols.size());
    for (std::size_t i = 0; i < out.symbols.size(); ++i) {
        out.soft_bits[2 * i] = out.symbols[i].real();
        out.soft_bits[2 * i + 1] = out.symbols[i].imag();
    }
    out.hard_bits = qpsk_demap(out.symbols);
    return out;
}

TxSignal modulate(const DataFrame& data, const FdssFilter& filter, const FrameConfig& cfg) {
    return Modem(filter, cfg).modulate(data.symbols);
}

Demodulated demodulate(std::span<const cplx> rx, std::span<const cplx> channel_freq, const FdssFilter& filter,
                       const FrameConfig& cfg, double noise_var) {
    return Modem(filter, cfg).demodulate(rx, channel_freq, noise_var);
}

}  // namespace csc
