// analysis.hpp - post-equalization SNR theory and signal diagnostics
#pragma once

#include "csc/fdss.hpp"
#include "csc/numerics.hpp"

#include <span>
#include <vector>

namespace csc {

struct SnrPostReport {
    double alpha_mmse = 0.0;  // in (0, 1]
    double snr_post = 0.0;    // linear
    double snr_in = 0.0;      // linear per-subcarrier SNR
    int repetition = 1;
    bool unbounded = false;   // alpha == 1: snr_post is +inf
};

// Effective SNR after single-tap MMSE-FDE and IDFT despreading:
//   mu    = (R/M) sum_kappa c'_kappa / (c'_kappa + R/snr),
//   c'_kappa = sum_u |c_{kappa + u M/R}|^2     (c' = |c|^2 when R = 1)
//   alpha = mu^2,  snr_post = 1 / (sqrt(1/alpha) - 1) = mu / (1 - mu).
// `snr` is the SNR of one data symbol with the energy of all R copies
// combined, i.e. R times the per-subcarrier SNR rho (they coincide for R = 1).
// With that reference a flat filter gives snr_post = snr for every R.
// The filter must be unit_average_power and R must divide M.
SnrPostReport snr_post(const FdssFilter& filter, double snr, int repetition = 1);

// Same formula on arbitrary per-subcarrier gains |g_k|^2 ordered k = L_d..L_u
// (e.g. |H_k c_k|^2 for one fading realization).
SnrPostReport snr_post_from_gains(std::span<const double> gains, double snr, int repetition = 1);

// Q(x) = erfc(x / sqrt 2) / 2.
double q_function(double x);

// Gray QPSK bit error probability at symbol SNR snr_post: Q(sqrt(snr_post)).
double theoretical_ber_qpsk(double snr_post);

// Welch average of n_avg consecutive, non-overlapping, rectangular-window
// periodograms of length nfft. Returned in natural FFT order, in dB, shifted
// so that the mean power over the occupied band is 0 dB. The occupied band
// is bins floor(B/2) - B + 1 .. floor(B/2) when occupied_bins = B > 0, the
// whole spectrum otherwise.
std::vector<double> psd(std::span<const cplx> signal, int nfft, int n_avg, int occupied_bins = 0);

struct Spectrogram {
    int win_len = 0;
    int hop = 0;
    // power[t][f] in dB; frequencies in natural FFT order of win_len bins
    std::vector<std::vector<double>> power_db;

    // Spectral centroid of each slice in bins, signed (-win_len/2, win_len/2].
    std::vector<double> ridge() const;
    // Bin offset converted to cycles per `period` samples.
    double bin_to_cycles(double bin, int period) const { return bin * period / win_len; }
};

// Hann-windowed short-time DFT. With circular = true the signal is treated
// as one period (the CP-stripped OFDM body) and slices wrap around; there
// are then len / hop slices, slice t centred on sample t * hop.
Spectrogram spectrogram(std::span<const cplx> signal, int win_len, int hop, bool circular = false);

// 10 log10(max |x|^2 / mean |x|^2) of the given samples (pass the body,
// without CP).
double papr_db(std::span<const cplx> signal);

// 10 log10( sum |x - ref|^2 / sum |ref|^2 ) after scaling both to unit energy.
double nmse_db(std::span<const cplx> signal, std::span<const cplx> reference);

}  // namespace csc
