#include "csc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace csc {

SnrPostReport snr_post_from_gains(std::span<const double> gains, double snr, int repetition) {
    if (!(snr > 0.0)) throw std::invalid_argument("snr_post: snr must be > 0");
    const int m = static_cast<int>(gains.size());
    if (m < 1) throw std::invalid_argument("snr_post: no subcarriers");
    if (repetition < 1 || m % repetition != 0) throw std::invalid_argument("snr_post: R must divide M");

    const int per_copy = m / repetition;
    const double inv_snr = 1.0 / snr;
    // Accumulate 1 - mu directly; mu / (1 - mu) then stays accurate when mu -> 1.
    double mu = 0.0;
    double shortfall = 0.0;
    for (int kappa = 0; kappa < per_copy; ++kappa) {
        double combined = 0.0;
        for (int u = 0; u < repetition; ++u) combined += gains[static_cast<std::size_t>(kappa + u * per_copy)];
        // c'/(c' + R/snr): snr counts the energy of all R copies
        const double noise = repetition * inv_snr;
        if (combined + noise > 0.0) {
            mu += combined / (combined + noise);
            shortfall += noise / (combined + noise);
        } else {
            shortfall += 1.0;  // dead bin at infinite SNR
        }
    }
    mu /= per_copy;
    shortfall /= per_copy;

    SnrPostReport rep;
    rep.snr_in = snr;
    rep.repetition = repetition;
    rep.alpha_mmse = mu * mu;
    if (!(shortfall > 0.0)) {
        rep.unbounded = true;
        rep.snr_post = std::numeric_limits<double>::infinity();
    } else {
        // 1 / (sqrt(1/alpha) - 1) = mu / (1 - mu)
        rep.snr_post = mu / shortfall;
    }
    return rep;
}

SnrPostReport snr_post(const FdssFilter& filter, double snr, int repetition) {
    if (filter.normalization() != Normalization::unit_average_power)
        throw std::invalid_argument("snr_post expects a unit_average_power filter");
    std::vector<double> gains(filter.coeffs().size());
    for (std::size_t i = 0; i < gains.size(); ++i) gains[i] = std::norm(filter.coeffs()[i]);
    return snr_post_from_gains(gains, snr, repetition);
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double theoretical_ber_qpsk(double snr_post) {
    if (snr_post < 0.0 || std::isnan(snr_post)) throw std::invalid_argument("snr_post must be >= 0");
    if (std::isinf(snr_post)) return 0.0;
    return q_function(std::sqrt(snr_post));
}

std::vector<double> psd(std::span<const cplx> signal, int nfft, int n_avg, int occupied_bins) {
    if (nfft < 1 || n_avg < 1) throw std::invalid_argument("psd: nfft and n_avg must be >= 1");
    if (signal.size() < static_cast<std::size_t>(nfft) * static_cast<std::size_t>(n_avg))
        throw std::invalid_argument("psd: need nfft * n_avg samples");
    if (occupied_bins < 0 || occupied_bins > nfft) throw std::invalid_argument("psd: bad occupied band");

    const DftPlan plan(static_cast<std::size_t>(nfft));
    std::vector<double> acc(static_cast<std::size_t>(nfft), 0.0);
    ComplexVector spec(static_cast<std::size_t>(nfft));
    for (int s = 0; s < n_avg; ++s) {
        plan.forward(signal.subspan(static_cast<std::size_t>(s) * nfft, static_cast<std::size_t>(nfft)), spec);
        for (std::size_t k = 0; k < spec.size(); ++k) acc[k] += std::norm(spec[k]);
    }

    double ref = 0.0;
    if (occupied_bins > 0) {
        const int lo = occupied_bins / 2 - occupied_bins + 1;
        for (int k = lo; k <= occupied_bins / 2; ++k) ref += acc[static_cast<std::size_t>((k % nfft + nfft) % nfft)];
        ref /= occupied_bins;
    } else {
        for (double v : acc) ref += v;
        ref /= nfft;
    }
    if (!(ref > 0.0)) throw std::invalid_argument("psd: zero in-band power");

    std::vector<double> out(acc.size());
    constexpr double floor_db = -300.0;
    for (std::size_t k = 0; k < acc.size(); ++k)
        out[k] = acc[k] > 0.0 ? 10.0 * std::log10(acc[k] / ref) : floor_db;
    return out;
}

std::vector<double> Spectrogram::ridge() const {
    std::vector<double> out;
    out.reserve(power_db.size());
    for (const auto& slice : power_db) {
        double num = 0.0;
        double den = 0.0;
        for (int k = 0; k < win_len; ++k) {
            const double f = k <= win_len / 2 ? k : k - win_len;
            const double p = std::pow(10.0, slice[static_cast<std::size_t>(k)] / 10.0);
            num += f * p;
            den += p;
        }
        out.push_back(den > 0.0 ? num / den : 0.0);
    }
    return out;
}

Spectrogram spectrogram(std::span<const cplx> signal, int win_len, int hop, bool circular) {
    if (win_len < 1 || hop < 1) throw std::invalid_argument("spectrogram: win_len and hop must be >= 1");
    const auto len = static_cast<int>(signal.size());
    if (win_len > len) throw std::invalid_argument("spectrogram: window longer than signal");

    std::vector<double> window(static_cast<std::size_t>(win_len));
    for (int i = 0; i < win_len; ++i)
        window[static_cast<std::size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (i + 0.5) / win_len);

    Spectrogram sg;
    sg.win_len = win_len;
    sg.hop = hop;
    const DftPlan plan(static_cast<std::size_t>(win_len));
    ComplexVector seg(static_cast<std::size_t>(win_len)), spec(static_cast<std::size_t>(win_len));

    const int slices = circular ? len / hop : (len - win_len) / hop + 1;
    for (int t = 0; t < slices; ++t) {
        const int first = circular ? t * hop - win_len / 2 : t * hop;
        for (int i = 0; i < win_len; ++i) {
            const int idx = ((first + i) % len + len) % len;
            seg[static_cast<std::size_t>(i)] = signal[static_cast<std::size_t>(idx)] * window[static_cast<std::size_t>(i)];
        }
        plan.forward(seg, spec);
        std::vector<double> row(static_cast<std::size_t>(win_len));
        for (std::size_t k = 0; k < row.size(); ++k) {
            const double p = std::norm(spec[k]);
            row[k] = p > 0.0 ? 10.0 * std::log10(p) : -300.0;
        }
        sg.power_db.push_back(std::move(row));
    }
    return sg;
}

double papr_db(std::span<const cplx> signal) {
    if (signal.empty()) throw std::invalid_argument("papr: empty signal");
    double peak = 0.0;
    double mean = 0.0;
    for (const auto& v : signal) {
        peak = std::max(peak, std::norm(v));
        mean += std::norm(v);
    }
    mean /= static_cast<double>(signal.size());
    if (!(mean > 0.0)) throw std::invalid_argument("papr: zero-power signal");
    return 10.0 * std::log10(peak / mean);
}

double nmse_db(std::span<const cplx> signal, std::span<const cplx> reference) {
    if (signal.size() != reference.size() || signal.empty())
        throw std::invalid_argument("nmse: length mismatch");
    double es = 0.0, er = 0.0;
    for (std::size_t i = 0; i < signal.size(); ++i) {
        es += std::norm(signal[i]);
        er += std::norm(reference[i]);
    }
    if (!(es > 0.0) || !(er > 0.0)) throw std::invalid_argument("nmse: zero-energy input");
    const double ss = 1.0 / std::sqrt(es), sr = 1.0 / std::sqrt(er);
    double err = 0.0;
    for (std::size_t i = 0; i < signal.size(); ++i) err += std::norm(signal[i] * ss - reference[i] * sr);
    return 10.0 * std::log10(err);
}

}  // namespace csc
