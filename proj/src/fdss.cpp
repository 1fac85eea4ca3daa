#include "csc/fdss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace csc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSlopeSweepPoints = 8192;

void require_subcarriers(int m) {
    if (m < 1) throw std::invalid_argument("subcarrier count must be >= 1");
}

void require_deviation_fits(double deviation, int m) {
    if (!std::isfinite(deviation)) throw std::invalid_argument("deviation must be finite");
    if (deviation > m)
        throw std::invalid_argument("deviation D = " + std::to_string(deviation) +
                                    " exceeds subcarrier count M = " + std::to_string(m));
}

double wrap_period(double x) {
    double r = std::fmod(x, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    return r;
}

// Scale raw Fourier coefficients to sum |c_k|^2 = M.
FdssFilter normalized_from_raw(int m, ComplexVector raw) {
    double power = 0.0;
    for (const auto& c : raw) power += std::norm(c);
    if (!(power > 0.0)) throw std::runtime_error("FDSS design produced an all-zero band");
    const double scale = std::sqrt(static_cast<double>(m) / power);
    for (auto& c : raw) c *= scale;
    return FdssFilter(m, std::move(raw), Normalization::unit_average_power, power);
}

// Jacobi-Anger factor of exp(j z cos(n x)) (cosine) or exp(j z sin(n x)):
// j^m J_m(z) resp. J_m(z) placed at k = n m.
IndexedSequence harmonic_factor(double z, int harmonic, bool cosine, double tail_eps) {
    const int probe = static_cast<int>(std::abs(z)) + 64;
    std::vector<double> j = bessel_j_sequence(probe, z);
    int last = 0;
    for (int m = probe; m >= 0; --m) {
        if (std::abs(j[static_cast<std::size_t>(m)]) >= tail_eps) {
            last = m;
            break;
        }
    }

    IndexedSequence seq{-last * harmonic,
                        ComplexVector(static_cast<std::size_t>(2 * last * harmonic + 1))};
    static constexpr cplx kJPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int m = -last; m <= last; ++m) {
        const int am = std::abs(m);
        double value = j[static_cast<std::size_t>(am)];
        if (m < 0 && (am % 2 != 0)) value = -value;  // J_{-m} = (-1)^m J_m
        cplx c{value, 0.0};
        if (cosine) c *= kJPowers[((m % 4) + 4) % 4];
        seq.values[static_cast<std::size_t>((m + last) * harmonic)] = c;
    }
    return seq;
}

}  // namespace

// ---------------------------------------------------------------------------
// ChirpTrajectory
// ---------------------------------------------------------------------------

ChirpTrajectory::ChirpTrajectory(double a0, std::vector<double> cosine_coeffs,
                                 std::vector<double> sine_coeffs, double deviation,
                                 bool check_normalization)
    : a0_(a0), a_(std::move(cosine_coeffs)), b_(std::move(sine_coeffs)), deviation_(deviation) {
    if (a_.empty() || a_.size() != b_.size())
        throw std::invalid_argument("trajectory needs N_h >= 1 cosine and sine coefficients");
    if (!std::isfinite(a0_)) throw std::invalid_argument("trajectory a0 must be finite");
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (!std::isfinite(a_[i]) || !std::isfinite(b_[i]))
            throw std::invalid_argument("trajectory coefficients must be finite");
    }
    if (!(deviation_ > 0.0) || !std::isfinite(deviation_))
        throw std::invalid_argument("trajectory deviation must be positive");

    if (check_normalization) {
        double max_slope = -std::numeric_limits<double>::infinity();
        double min_slope = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kSlopeSweepPoints; ++i) {
            const double s = derivative(-kPi + 2.0 * kPi * i / kSlopeSweepPoints);
            max_slope = std::max(max_slope, s);
            min_slope = std::min(min_slope, s);
        }
        if (std::abs(max_slope - 1.0) > 0.01 || std::abs(-min_slope - 1.0) > 0.01)
            throw std::invalid_argument("trajectory slope must span [-1, 1] within 1% (got [" +
                                        std::to_string(min_slope) + ", " +
                                        std::to_string(max_slope) + "])");
    }
}

ChirpTrajectory ChirpTrajectory::with_deviation(double deviation) const {
    ChirpTrajectory copy = *this;
    if (!(deviation > 0.0) || !std::isfinite(deviation))
        throw std::invalid_argument("trajectory deviation must be positive");
    copy.deviation_ = deviation;
    return copy;
}

double ChirpTrajectory::value(double x) const {
    double f = 0.5 * a0_;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        f += a_[i] * std::cos(n * x) + b_[i] * std::sin(n * x);
    }
    return f;
}

double ChirpTrajectory::derivative(double x) const {
    double d = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        d += n * (b_[i] * std::cos(n * x) - a_[i] * std::sin(n * x));
    }
    return d;
}

// ---------------------------------------------------------------------------
// FdssFilter
// ---------------------------------------------------------------------------

FdssFilter::FdssFilter(int subcarriers, ComplexVector coeffs, Normalization normalization,
                       double raw_power)
    : m_(subcarriers), coeffs_(std::move(coeffs)), normalization_(normalization), raw_power_(raw_power) {
    require_subcarriers(m_);
    if (coeffs_.size() != static_cast<std::size_t>(m_))
        throw std::invalid_argument("FDSS filter needs exactly M coefficients");
    require_finite_sequence(coeffs_);
}

cplx FdssFilter::at(int k) const {
    if (k < lower() || k > upper()) throw std::out_of_range("subcarrier index outside the band");
    return coeffs_[static_cast<std::size_t>(k - lower())];
}

double FdssFilter::power() const {
    double p = 0.0;
    for (const auto& c : coeffs_) p += std::norm(c);
    return p;
}

double FdssFilter::magnitude_ratio() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& c : coeffs_) {
        lo = std::min(lo, std::abs(c));
        hi = std::max(hi, std::abs(c));
    }
    return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

FdssFilter FdssFilter::to_unit_average_power() const {
    if (normalization_ == Normalization::unit_average_power) return *this;
    FdssFilter out = normalized_from_raw(m_, coeffs_);
    out.raw_power_ = raw_power_;
    return out;
}

// ---------------------------------------------------------------------------
// Designs
// ---------------------------------------------------------------------------

FdssFilter design_plain(int subcarriers) {
    require_subcarriers(subcarriers);
    return FdssFilter(subcarriers, ComplexVector(static_cast<std::size_t>(subcarriers), cplx{1.0, 0.0}),
                      Normalization::unit_average_power, 1.0);
}

FdssFilter design_sinusoidal(double deviation, int subcarriers) {
    require_subcarriers(subcarriers);
    require_deviation_fits(deviation, subcarriers);
    if (deviation < 0.0) throw std::invalid_argument("deviation must be non-negative");

    const int lo = FdssFilter::lower_edge(subcarriers);
    const int hi = FdssFilter::upper_edge(subcarriers);
    const std::vector<double> j = bessel_j_sequence(std::max(-lo, hi), 0.5 * deviation);

    ComplexVector raw(static_cast<std::size_t>(subcarriers));
    for (int k = lo; k <= hi; ++k) {
        const int ak = std::abs(k);
        double v = j[static_cast<std::size_t>(ak)];
        if (k < 0 && (ak % 2 != 0)) v = -v;
        raw[static_cast<std::size_t>(k - lo)] = {v, 0.0};
    }
    return normalized_from_raw(subcarriers, std::move(raw));
}

// Fourier coefficient of exp(j pi D (u^2 - u)), u in [0, 1), by completing
// the square:
//   c_k = (1/sqrt(2D)) e^{-j pi D/4 - j pi k - j pi k^2/D} [F(w1) + F(w2)],
//   w1,2 = (D +/- 2k) / sqrt(2D),  F = C + jS.
// This is the classical radar-chirp closed form with its deviation taken in
// radians (2 pi D) plus the constant phase e^{-j pi D/4}.
FdssFilter design_linear(double deviation, int subcarriers) {
    require_subcarriers(subcarriers);
    require_deviation_fits(deviation, subcarriers);
    if (!(deviation > 0.0)) throw std::invalid_argument("linear chirp needs deviation > 0");

    const double angular = 2.0 * kPi * deviation;
    const double root = std::sqrt(kPi * angular);
    const double prefactor = std::sqrt(kPi / angular);
    const cplx global = std::polar(1.0, -kPi * deviation / 4.0);

    const int lo = FdssFilter::lower_edge(subcarriers);
    ComplexVector raw(static_cast<std::size_t>(subcarriers));
    for (int k = lo; k <= FdssFilter::upper_edge(subcarriers); ++k) {
        const double two_pi_k = 2.0 * kPi * k;
        const FresnelCS f1 = fresnel((angular / 2.0 + two_pi_k) / root);
        const FresnelCS f2 = fresnel((angular / 2.0 - two_pi_k) / root);
        // e^{-j pi k} = (-1)^k exactly for integer k
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const cplx quad = std::polar(prefactor * sign, -two_pi_k * two_pi_k / (2.0 * angular));
        raw[static_cast<std::size_t>(k - lo)] = global * quad * cplx{f1.c + f2.c, f1.s + f2.s};
    }
    return normalized_from_raw(subcarriers, std::move(raw));
}

FdssFilter design_arbitrary(const ChirpTrajectory& trajectory, int subcarriers,
                            ArbitraryDesignOptions options) {
    require_subcarriers(subcarriers);
    const double deviation = trajectory.deviation();
    require_deviation_fits(deviation, subcarriers);
    if (!(options.tail_eps > 0.0) || !(options.harmonic_skip > 0.0))
        throw std::invalid_argument("tail_eps and harmonic_skip must be positive");

    IndexedSequence acc{0, {cplx{1.0, 0.0}}};
    const auto& a = trajectory.cosine_coeffs();
    const auto& b = trajectory.sine_coeffs();
    for (int n = 1; n <= trajectory.harmonics(); ++n) {
        const double za = a[static_cast<std::size_t>(n - 1)] * deviation / 2.0;
        const double zb = b[static_cast<std::size_t>(n - 1)] * deviation / 2.0;
        if (std::abs(za) >= options.harmonic_skip)
            acc = convolve_full(acc, harmonic_factor(za, n, true, options.tail_eps));
        if (std::abs(zb) >= options.harmonic_skip)
            acc = convolve_full(acc, harmonic_factor(zb, n, false, options.tail_eps));
    }

    const cplx global = std::polar(1.0, deviation * trajectory.a0() / 4.0);
    const int lo = FdssFilter::lower_edge(subcarriers);
    ComplexVector raw(static_cast<std::size_t>(subcarriers));
    for (int k = lo; k <= FdssFilter::upper_edge(subcarriers); ++k)
        raw[static_cast<std::size_t>(k - lo)] = global * acc.at(k);
    return normalized_from_raw(subcarriers, std::move(raw));
}

ChirpTrajectory triangular_trajectory(int harmonics, bool down_first, double deviation) {
    if (harmonics < 1) throw std::invalid_argument("triangular trajectory needs N_h >= 1");
    std::vector<double> a(static_cast<std::size_t>(harmonics), 0.0);
    std::vector<double> b(static_cast<std::size_t>(harmonics), 0.0);
    for (int n = 1; n <= harmonics; ++n) {
        const double nn = n;
        // cos(pi n) = (-1)^n exactly at integer n
        const double cos_pi_n = (n % 2 == 0) ? 1.0 : -1.0;
        const double bn = 4.0 * (1.0 - cos_pi_n) / (kPi * kPi * nn * nn * nn);
        b[static_cast<std::size_t>(n - 1)] = down_first ? bn : -bn;
    }
    return ChirpTrajectory(0.0, std::move(a), std::move(b), deviation, false);
}

namespace shape {

double sinusoidal(double x) { return std::sin(x); }

double linear(double x) {
    const double r = wrap_period(x);
    return r * r / (2.0 * kPi) - r;
}

double triangular(double x, bool down_first) {
    double r = wrap_period(x);
    if (r >= kPi) r -= 2.0 * kPi;  // [-pi, pi)
    const double f = r < 0.0 ? r * r / kPi + r : -r * r / kPi + r;
    return down_first ? f : -f;
}

}  // namespace shape

ComplexVector sample_chirp(const ChirpTrajectory& trajectory, int samples) {
    return sample_chirp([&](double x) { return trajectory.value(x); }, trajectory.deviation(), samples);
}

}  // namespace csc
