#include "csc/analysis.hpp"
#include "csc/fdss.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace csc;
using Catch::Approx;

namespace {

double sum_power(const ComplexVector& c) {
    double s = 0.0;
    for (const auto& x : c) s += std::norm(x);
    return s;
}

// Raw (un-normalized) coefficients recovered from a unit-power filter.
ComplexVector raw_coeffs(const FdssFilter& f) {
    ComplexVector out = f.coeffs();
    const double scale = std::sqrt(f.raw_power() / f.power());
    for (auto& c : out) c *= scale;
    return out;
}

// Periodic sum of the shaped spectrum onto N samples of one period.
ComplexVector synthesize_period(const FdssFilter& f, int samples) {
    ComplexVector grid(static_cast<std::size_t>(samples));
    for (int k = f.lower(); k <= f.upper(); ++k) grid[static_cast<std::size_t>((k % samples + samples) % samples)] += f.at(k);
    return oracle::naive_dft(grid, true);
}

}  // namespace

TEST_CASE("plain filter", "[fdss]") {
    const auto p4 = design_plain(4);
    CHECK(p4.lower() == -1);
    CHECK(p4.upper() == 2);
    for (int k = -1; k <= 2; ++k) CHECK(p4.at(k) == cplx{1.0, 0.0});
    CHECK(p4.normalization() == Normalization::unit_average_power);

    const auto p = design_plain(336);
    CHECK(p.lower() == -167);
    CHECK(p.upper() == 168);
    CHECK(p.coeffs().size() == 336);
    CHECK(p.magnitude_ratio() == 1.0);
    CHECK(p.truncation_loss() == 0.0);
    CHECK_THROWS_AS(p.at(169), std::out_of_range);
    CHECK_THROWS_AS(design_plain(0), std::invalid_argument);
}

TEST_CASE("band edges for odd M", "[fdss]") {
    CHECK(FdssFilter::lower_edge(5) == -2);
    CHECK(FdssFilter::upper_edge(5) == 2);
    CHECK(design_sinusoidal(3.0, 5).coeffs().size() == 5);
}

TEST_CASE("sinusoidal filter", "[fdss]") {
    SECTION("D = 0 is an unmodulated carrier") {
        const auto f = design_sinusoidal(0.0, 336);
        CHECK(f.raw_power() == Approx(1.0).epsilon(1e-15));
        for (int k = f.lower(); k <= f.upper(); ++k) CHECK(std::abs(f.at(k)) == Approx(k == 0 ? std::sqrt(336.0) : 0.0).margin(1e-12));
    }
    SECTION("D = 318 keeps all but the Bessel tail beyond the band edges") {
        const auto f = design_sinusoidal(318.0, 336);
        double in_band = 0.0;
        for (int k = -167; k <= 168; ++k) in_band += std::pow(oracle::bessel_j(k, 159.0), 2);
        // J_k(159) is still ~1e-3 just past k = 168, so about 1.4e-4 of the power is lost
        CHECK(f.raw_power() == Approx(in_band).margin(1e-10));
        CHECK(f.truncation_loss() == Approx(1.3630769e-4).margin(1e-10));
        CHECK(design_sinusoidal(318.0, 360).raw_power() >= 1.0 - 1e-8);
        CHECK(f.power() == Approx(336.0).epsilon(1e-12));
        const auto raw = raw_coeffs(f);
        for (int k : {-167, -100, 0, 3, 159, 168}) {
            INFO("k=" << k);
            CHECK(std::abs(raw[static_cast<std::size_t>(k + 167)] - oracle::bessel_j(k, 159.0)) <= 1e-10);
        }
    }
    SECTION("D = 2 coefficient ratio") {
        const auto f = design_sinusoidal(2.0, 336);
        const double ratio = (f.at(1) / f.at(0)).real();
        CHECK(std::abs(ratio - oracle::bessel_j(1, 1.0) / oracle::bessel_j(0, 1.0)) <= 1e-9);
    }
    SECTION("rejects D outside [0, M]") {
        CHECK_THROWS_AS(design_sinusoidal(337.0, 336), std::invalid_argument);
        CHECK_THROWS_AS(design_sinusoidal(-1.0, 336), std::invalid_argument);
    }
}

TEST_CASE("sinusoidal coefficients equal the Fourier coefficients of the chirp", "[fdss]") {
    const double d = 40.0;
    const auto raw = raw_coeffs(design_sinusoidal(d, 64));
    for (int k : {-20, -3, 0, 1, 19, 32}) {
        const cplx ref = oracle::chirp_coefficient([](double x) { return std::sin(x); }, d, k);
        CHECK(std::abs(raw[static_cast<std::size_t>(k + 31)] - ref) <= 1e-10);
    }
}

TEST_CASE("truncation loss is non-increasing in M", "[fdss]") {
    double prev = 2.0;
    for (int m = 150; m <= 400; m += 10) {
        const double loss = design_sinusoidal(150.0, m).truncation_loss();
        CHECK(loss <= prev + 1e-13);  // rounding floor of 1 - sum
        prev = loss;
    }
}

TEST_CASE("linear filter closed form", "[fdss]") {
    const double d = 318.0;
    const int m = 336;
    const auto f = design_linear(d, m);
    CHECK(f.power() == Approx(336.0).epsilon(1e-12));
    CHECK(f.raw_power() <= 1.0 + 1e-6);

    SECTION("magnitude symmetry") {
        for (int k = 1; k <= 167; ++k) CHECK(std::abs(std::abs(f.at(k)) - std::abs(f.at(-k))) <= 1e-6);
    }
    SECTION("matches the DFT of a 16x oversampled chirp") {
        const int samples = 16 * m;
        const auto chirp = sample_chirp(shape::linear, d, samples);
        const auto spectrum = oracle::naive_dft(chirp);
        const auto raw = raw_coeffs(f);
        double err = 0.0, ref = 0.0;
        for (int k = f.lower(); k <= f.upper(); ++k) {
            const cplx o = spectrum[static_cast<std::size_t>((k + samples) % samples)] / static_cast<double>(samples);
            err += std::norm(raw[static_cast<std::size_t>(k - f.lower())] - o);
            ref += std::norm(o);
        }
        CHECK(std::sqrt(err / ref) <= 1e-3);
    }
    SECTION("matches quadrature Fourier coefficients") {
        const auto raw = raw_coeffs(f);
        for (int k : {-167, -80, -1, 0, 5, 120, 168}) {
            const cplx ref = oracle::chirp_coefficient(shape::linear, d, k, 512);
            INFO("k=" << k);
            CHECK(std::abs(raw[static_cast<std::size_t>(k - f.lower())] - ref) <= 1e-6);
        }
    }
    SECTION("milder amplitude variation than the sinusoidal filter") {
        const double lin = f.magnitude_ratio();
        const double sin = design_sinusoidal(d, m).magnitude_ratio();
        CHECK(std::isfinite(lin));
        CHECK(lin * 10.0 < sin);
    }
    SECTION("rejects D outside (0, M]") {
        CHECK_THROWS_AS(design_linear(0.0, m), std::invalid_argument);
        CHECK_THROWS_AS(design_linear(400.0, m), std::invalid_argument);
    }
}

TEST_CASE("trajectory validation", "[fdss]") {
    CHECK_NOTHROW(ChirpTrajectory(0.0, {0.0}, {1.0}, 10.0));
    CHECK_THROWS_AS(ChirpTrajectory(0.0, {0.0}, {2.0}, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(ChirpTrajectory(0.0, {}, {}, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(ChirpTrajectory(0.0, {0.0, 0.0}, {1.0}, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(ChirpTrajectory(0.0, {0.0}, {1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ChirpTrajectory(0.0, {0.0}, {std::nan("")}, 10.0), std::invalid_argument);
    CHECK_NOTHROW(ChirpTrajectory(0.0, {0.0}, {2.0}, 10.0, false));
    // second harmonic only: f' = 2 cos 2x * 0.5
    CHECK_NOTHROW(ChirpTrajectory(0.0, {0.0, 0.0}, {0.0, 0.5}, 10.0));
}

TEST_CASE("arbitrary design reproduces the single-harmonic closed forms", "[fdss]") {
    const int m = 336;
    SECTION("pure sine") {
        const auto a = design_arbitrary(ChirpTrajectory(0.0, {0.0}, {1.0}, 10.0), m);
        const auto s = design_sinusoidal(10.0, m);
        for (int k = a.lower(); k <= a.upper(); ++k) CHECK(std::abs(a.at(k) - s.at(k)) <= 1e-9);
    }
    SECTION("pure cosine") {
        const auto a = design_arbitrary(ChirpTrajectory(0.0, {1.0}, {0.0}, 10.0), m);
        const auto raw = raw_coeffs(a);
        for (int k = a.lower(); k <= a.upper(); ++k)
            CHECK(std::abs(std::abs(raw[static_cast<std::size_t>(k - a.lower())]) - std::abs(oracle::bessel_j(k, 5.0))) <= 1e-9);
        // phase j^k
        CHECK(std::arg(a.at(1)) == Approx(std::arg(cplx{0.0, 1.0} * oracle::bessel_j(1, 5.0))).margin(1e-12));
    }
    SECTION("constant term contributes a global phase") {
        const auto a = design_arbitrary(ChirpTrajectory(0.7, {0.0}, {1.0}, 10.0), m);
        const auto s = design_sinusoidal(10.0, m);
        const cplx phase = std::polar(1.0, 10.0 * 0.7 / 4.0);
        for (int k = -10; k <= 10; ++k) CHECK(std::abs(a.at(k) - phase * s.at(k)) <= 1e-9);
    }
}

TEST_CASE("arbitrary design matches quadrature for a two-harmonic trajectory", "[fdss]") {
    // f(x) = 0.6 sin x + 0.2 sin 2x; f'(0) = 1, f'(pi) = -0.2 so normalization is not checked
    const ChirpTrajectory traj(0.0, {0.0, 0.0}, {0.6, 0.2}, 60.0, false);
    const auto raw = raw_coeffs(design_arbitrary(traj, 128));
    for (int k : {-40, -7, 0, 3, 21, 64}) {
        const cplx ref = oracle::chirp_coefficient([&](double x) { return traj.value(x); }, 60.0, k);
        INFO("k=" << k);
        CHECK(std::abs(raw[static_cast<std::size_t>(k + 63)] - ref) <= 1e-10);
    }
}

TEST_CASE("arbitrary design rejects D > M", "[fdss]") {
    CHECK_THROWS_AS(design_arbitrary(ChirpTrajectory(0.0, {0.0}, {1.0}, 400.0), 336), std::invalid_argument);
}

TEST_CASE("triangular trajectory coefficients", "[fdss]") {
    const auto t = triangular_trajectory(64, true);
    REQUIRE(t.harmonics() == 64);
    CHECK(t.a0() == 0.0);
    CHECK(t.deviation() == 318.0);
    for (double a : t.cosine_coeffs()) CHECK(a == 0.0);
    CHECK(t.sine_coeffs()[0] == Approx(8.0 / (oracle::pi * oracle::pi)).epsilon(1e-15));
    CHECK(t.sine_coeffs()[0] == Approx(0.81057).margin(1e-5));
    CHECK(t.sine_coeffs()[1] == 0.0);
    CHECK(t.sine_coeffs()[2] == Approx(8.0 / (27.0 * oracle::pi * oracle::pi)).epsilon(1e-15));

    const auto up = triangular_trajectory(64, false);
    for (std::size_t i = 0; i < 64; ++i) CHECK(up.sine_coeffs()[i] == -t.sine_coeffs()[i]);
}

TEST_CASE("triangular series converges to the piecewise-quadratic phase", "[fdss]") {
    for (bool down : {true, false}) {
        const auto t = triangular_trajectory(64, down);
        double worst = 0.0;
        for (int i = 0; i < 4096; ++i) {
            const double x = 2.0 * oracle::pi * i / 4096;
            worst = std::max(worst, std::abs(t.value(x) - shape::triangular(x, down)));
        }
        CHECK(worst <= 1e-3);
    }
    // shape slope is +/-1 at the turning points
    const double h = 1e-6;
    CHECK((shape::triangular(h, true) - shape::triangular(0.0, true)) / h == Approx(1.0).margin(1e-5));
    CHECK((shape::triangular(oracle::pi + h, true) - shape::triangular(oracle::pi, true)) / h == Approx(-1.0).margin(1e-5));
}

TEST_CASE("triangular filter synthesizes the triangular chirp", "[fdss]") {
    const auto f = design_arbitrary(triangular_trajectory(64, true), 336);
    CHECK(f.power() == Approx(336.0).epsilon(1e-12));
    CHECK(f.truncation_loss() < 0.01);
    const auto body = synthesize_period(f, 512);
    const auto ref = sample_chirp([](double x) { return shape::triangular(x, true); }, 318.0, 512);
    CHECK(nmse_db(body, ref) <= -25.0);
}

TEST_CASE("shape functions", "[fdss]") {
    CHECK(shape::sinusoidal(0.3) == Approx(std::sin(0.3)));
    CHECK(shape::linear(0.0) == 0.0);
    CHECK(shape::linear(2.0 * oracle::pi - 1e-12) == Approx(0.0).margin(1e-9));
    CHECK(shape::linear(oracle::pi) == Approx(-oracle::pi / 2));
    const auto s = sample_chirp(shape::sinusoidal, 10.0, 8);
    CHECK(s.size() == 8);
    CHECK(std::abs(s[2] - std::polar(1.0, 5.0)) < 1e-14);
}

TEST_CASE("filter CSV round trip is bit exact", "[fdss][io]") {
    for (const auto& f : {design_sinusoidal(318.0, 336), design_linear(318.0, 336),
                          design_arbitrary(triangular_trajectory(64, false), 336), design_plain(5)}) {
        std::stringstream ss;
        write_filter_csv(ss, f, {"test filter", "second line"});
        const auto g = read_filter_csv(ss);
        REQUIRE(g.subcarriers() == f.subcarriers());
        CHECK(g.normalization() == Normalization::unit_average_power);
        for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
            CHECK(g.coeffs()[i].real() == f.coeffs()[i].real());
            CHECK(g.coeffs()[i].imag() == f.coeffs()[i].imag());
        }
    }
}

TEST_CASE("filter CSV rejects malformed input", "[fdss][io]") {
    auto parse = [](const std::string& text) {
        std::istringstream is(text);
        return read_filter_csv(is);
    };
    CHECK_THROWS(parse("k,re,im\n0,1,0\n2,1,0\n"));    // gap in k
    CHECK_THROWS(parse("k,re\n0,1\n"));                // wrong header
    CHECK_THROWS(parse("k,re,im\n0,abc,0\n"));         // bad number
    CHECK_THROWS(parse("k,re,im\n"));                  // empty
    CHECK_NOTHROW(parse("# meta\nk,re,im\n0,1,0\n1,1,0\n"));
    const auto raw = parse("k,re,im\n0,0.5,0\n1,0.5,0\n");
    CHECK(raw.normalization() == Normalization::raw_fourier);
}

TEST_CASE("normalization helpers", "[fdss]") {
    const FdssFilter raw(4, {0.5, 0.5, 0.5, 0.1}, Normalization::raw_fourier, 0.76);
    const auto unit = raw.to_unit_average_power();
    CHECK(unit.power() == Approx(4.0).epsilon(1e-12));
    CHECK(unit.normalization() == Normalization::unit_average_power);
    CHECK(unit.magnitude_ratio() == Approx(5.0));
    CHECK(sum_power(unit.coeffs()) == Approx(4.0));
    CHECK_THROWS_AS(FdssFilter(4, {1.0, 1.0}, Normalization::raw_fourier, 1.0), std::invalid_argument);
}
