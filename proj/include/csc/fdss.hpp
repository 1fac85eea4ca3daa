// fdss.hpp - frequency-domain spectral shaping filters for circularly-shifted chirps
//
// A chirp with period T_s and phase (D/2) f(2 pi t / T_s) has Fourier
// coefficients c_k. Placing those coefficients on the DFT-spread subcarriers
// turns each DFT-s-OFDM data symbol into a circularly shifted copy of the
// chirp. The designers below compute c_k for the occupied band
// k = floor(M/2) - M + 1 .. floor(M/2).

#pragma once

#include "csc/numerics.hpp"

#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

namespace csc {

enum class Normalization {
    raw_fourier,         // Fourier coefficients of the unit-modulus chirp, sum |c_k|^2 <= 1
    unit_average_power,  // sum |c_k|^2 = M
};

// Periodic phase trajectory f(x), x in [-pi, pi):
//   f(x) = a0/2 + sum_n a_n cos(n x) + b_n sin(n x),  n = 1..N_h
// normalized so that max |f'(x)| = 1; the instantaneous frequency then
// spans +/- D / (2 T_s).
class ChirpTrajectory {
public:
    // Throws std::invalid_argument on empty/mismatched coefficient lists,
    // non-finite values or deviation <= 0. With check_normalization, also
    // when max f' or -min f' (swept over a period) is outside 1 +/- 1%.
    ChirpTrajectory(double a0, std::vector<double> cosine_coeffs, std::vector<double> sine_coeffs,
                    double deviation, bool check_normalization = true);

    double a0() const { return a0_; }
    const std::vector<double>& cosine_coeffs() const { return a_; }
    const std::vector<double>& sine_coeffs() const { return b_; }
    double deviation() const { return deviation_; }
    int harmonics() const { return static_cast<int>(a_.size()); }

    ChirpTrajectory with_deviation(double deviation) const;

    double value(double x) const;       // f(x)
    double derivative(double x) const;  // f'(x)

private:
    double a0_;
    std::vector<double> a_;
    std::vector<double> b_;
    double deviation_;
};

class FdssFilter {
public:
    // `coeffs` are ordered k = lower()..upper(); size must equal M.
    FdssFilter(int subcarriers, ComplexVector coeffs, Normalization normalization, double raw_power);

    int subcarriers() const { return m_; }
    int lower() const { return lower_edge(m_); }
    int upper() const { return upper_edge(m_); }
    Normalization normalization() const { return normalization_; }
    const ComplexVector& coeffs() const { return coeffs_; }
    cplx at(int k) const;  // k in [lower, upper]

    // Power of the raw Fourier coefficients captured inside the band.
    double raw_power() const { return raw_power_; }
    // 1 - raw_power: chirp energy that fell outside the M subcarriers.
    double truncation_loss() const { return 1.0 - raw_power_; }

    double power() const;               // sum |c_k|^2
    double magnitude_ratio() const;     // max |c_k| / min |c_k| (inf when a coefficient is 0)

    FdssFilter to_unit_average_power() const;

    static int lower_edge(int m) { return m / 2 - m + 1; }
    static int upper_edge(int m) { return m / 2; }

private:
    int m_;
    ComplexVector coeffs_;
    Normalization normalization_;
    double raw_power_;
};

// c_k = 1 on every subcarrier; plain DFT-s-OFDM.
FdssFilter design_plain(int subcarriers);

// c_k = J_k(D/2): instantaneous frequency (D/2T_s) cos(2 pi t/T_s).
// D = 0 is accepted (unmodulated carrier). Throws if D < 0 or D > M.
FdssFilter design_sinusoidal(double deviation, int subcarriers);

// Closed form via Fresnel integrals for the up-chirp sweeping -D/2T_s..D/2T_s,
// phase pi D (t^2/T_s - t)/T_s. Throws if D <= 0 or D > M.
FdssFilter design_linear(double deviation, int subcarriers);

struct ArbitraryDesignOptions {
    double tail_eps = 1e-12;       // Bessel tail truncation
    double harmonic_skip = 1e-8;   // |a_n| D/2 below this contributes a delta
};

// Product of Jacobi-Anger factors for every harmonic, evaluated as a chain
// of index-aware convolutions, then restricted to the band and normalized.
FdssFilter design_arbitrary(const ChirpTrajectory& trajectory, int subcarriers,
                            ArbitraryDesignOptions options = {});

// Fourier series of the triangular trajectory: down-chirp in the first half
// of the period when down_first, up-chirp first otherwise.
//   b_n = 4 (1 - cos(pi n)) / (pi^2 n^3)   (8 / (pi^2 n^3) for odd n)
// The truncated series is not renormalized, so the slope check is skipped:
// the exact trajectory has max|f'| = 1 and the shortfall is truncation.
ChirpTrajectory triangular_trajectory(int harmonics, bool down_first, double deviation = 318.0);

// Exact phase shapes f(x) for x in [0, 2 pi) (arguments are wrapped).
namespace shape {
double sinusoidal(double x);                   // sin x
double linear(double x);                       // x^2 / (2 pi) - x, slope -1 .. 1
double triangular(double x, bool down_first);  // piecewise quadratic, slope +/-1 at the turns
}  // namespace shape

// exp(j (D/2) f(2 pi n / samples)), n = 0..samples-1.
template <class Shape>
ComplexVector sample_chirp(Shape&& f, double deviation, int samples);
ComplexVector sample_chirp(const ChirpTrajectory& trajectory, int samples);

// ---------------------------------------------------------------------------
// CSV import/export: header "k,re,im", one row per subcarrier, 17 significant
// digits so that a round trip is bit exact. Lines starting with '#' are
// metadata comments.
// ---------------------------------------------------------------------------

void write_filter_csv(std::ostream& os, const FdssFilter& filter,
                      const std::vector<std::string>& metadata = {});
void save_filter_csv(const std::filesystem::path& path, const FdssFilter& filter,
                     const std::vector<std::string>& metadata = {});
// Imported filters are tagged unit_average_power when sum |c_k|^2 ~= M,
// raw_fourier otherwise.
FdssFilter read_filter_csv(std::istream& is);
FdssFilter load_filter_csv(const std::filesystem::path& path);

template <class Shape>
ComplexVector sample_chirp(Shape&& f, double deviation, int samples) {
    ComplexVector out(static_cast<std::size_t>(samples));
    for (int n = 0; n < samples; ++n) {
        const double x = 2.0 * std::numbers::pi * n / samples;
        out[static_cast<std::size_t>(n)] = std::polar(1.0, 0.5 * deviation * f(x));
    }
    return out;
}

}  // namespace csc
