#include "csc/analysis.hpp"
#include "csc/csv.hpp"
#include "csc/simulation.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace csc;
using Catch::Approx;

TEST_CASE("Eb/N0 to per-subcarrier SNR", "[simulation]") {
    FrameConfig cfg;
    CHECK(10.0 * std::log10(ebn0_to_subcarrier_snr(0.0, cfg)) == Approx(3.0103).margin(1e-4));
    cfg.repetition = 4;
    CHECK(10.0 * std::log10(ebn0_to_subcarrier_snr(0.0, cfg)) == Approx(-3.0103).margin(1e-4));
}

TEST_CASE("plain theory is Q(sqrt(2 Eb/N0)) for every R", "[simulation]") {
    for (int r : {1, 4}) {
        FrameConfig cfg;
        cfg.repetition = r;
        for (double e : {0.0, 6.0, 9.8}) {
            const double expect = 0.5 * std::erfc(std::sqrt(std::pow(10.0, e / 10.0)));
            CHECK(theoretical_ber(design_plain(336), cfg, e) == Approx(expect).epsilon(1e-12));
        }
    }
    CHECK(theoretical_ber(design_plain(336), FrameConfig{}, 6.0) == Approx(2.39e-3).epsilon(0.01));
    CHECK(theoretical_crossing_db(design_plain(336), FrameConfig{}, 1e-3) == Approx(6.7895).margin(1e-3));
}

TEST_CASE("waveform names", "[simulation]") {
    for (Waveform w : {Waveform::plain, Waveform::linear, Waveform::sinusoidal, Waveform::triangular})
        CHECK(parse_waveform(to_string(w)) == w);
    CHECK_FALSE(parse_waveform("square").has_value());
    CHECK(design_filter({Waveform::triangular, 318.0, 64, true}, 336).coeffs() ==
          design_arbitrary(triangular_trajectory(64, true, 318.0), 336).coeffs());
}

TEST_CASE("plain AWGN BER at 6 dB", "[simulation][montecarlo]") {
    LinkConfig cfg;
    cfg.ebn0_grid_db = {6.0};
    cfg.min_bits = 400000;
    cfg.min_errors = 100;
    cfg.seed = 11;
    const auto curve = run_ber_sweep(cfg);
    REQUIRE(curve.points.size() == 1);
    const auto& p = curve.points[0];
    CHECK(p.converged);
    CHECK(p.errors >= 100);
    CHECK(p.bits >= 400000);
    CHECK(p.bits == p.frames * 672);
    CHECK(p.snr_db == Approx(6.0 + 3.0103).margin(1e-4));
    CHECK(p.sim_ber == Approx(2.39e-3).epsilon(0.15));
    CHECK(p.theory_ber == Approx(2.39e-3).epsilon(0.01));
}

TEST_CASE("sweeps are deterministic and independent of thread count", "[simulation]") {
    LinkConfig cfg;
    cfg.waveform.waveform = Waveform::sinusoidal;
    cfg.channel = ChannelKind::multipath;
    cfg.ebn0_grid_db = {4.0, 8.0};
    cfg.min_bits = 20000;
    cfg.min_errors = 10;
    cfg.seed = 5;
    cfg.threads = 1;
    const auto a = run_ber_sweep(cfg);
    cfg.threads = 3;
    const auto b = run_ber_sweep(cfg);
    std::ostringstream sa, sb;
    write_ber_csv(sa, a, describe(cfg));
    write_ber_csv(sb, b, describe(cfg));
    CHECK(sa.str() == sb.str());
    cfg.seed = 6;
    const auto c = run_ber_sweep(cfg);
    CHECK(c.points[0].errors != a.points[0].errors);
}

TEST_CASE("under-converged points are flagged", "[simulation]") {
    LinkConfig cfg;
    cfg.ebn0_grid_db = {12.0};
    cfg.min_bits = 10000;
    cfg.max_frames = 20;
    const auto curve = run_ber_sweep(cfg);
    CHECK_FALSE(curve.points[0].converged);
    CHECK_FALSE(curve.all_converged());
    CHECK(curve.points[0].frames == 20);
}

TEST_CASE("link configuration validation", "[simulation]") {
    LinkConfig cfg;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // empty grid
    cfg.ebn0_grid_db = {1.0};
    CHECK_NOTHROW(cfg.validate());
    cfg.min_bits = 9999;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.min_bits = 10000;
    cfg.profile.tap_delays = {0, 1, 200};
    cfg.channel = ChannelKind::multipath;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("crossing interpolation", "[simulation]") {
    BerCurve c;
    c.points = {{0.0, 0.0, 1e-2, 1e-2, 1, 1, 1, true}, {2.0, 0.0, 1e-4, 1e-4, 1, 1, 1, true},
                {4.0, 0.0, 0.0, 1e-6, 1, 0, 1, true}};
    CHECK(*simulated_crossing_db(c, 1e-3) == Approx(1.0));
    CHECK(*theory_crossing_db(c, 1e-5) == Approx(3.0));
    CHECK_FALSE(simulated_crossing_db(c, 1e-5).has_value());
}

TEST_CASE("BER CSV layout", "[simulation]") {
    BerCurve c;
    c.points = {{1.5, 4.5, 0.01, 0.011, 1000, 10, 2, true}};
    std::ostringstream os;
    write_ber_csv(os, c, {"hello"});
    std::istringstream is(os.str());
    const auto t = read_csv(is);
    CHECK(t.comments == std::vector<std::string>{"hello"});
    CHECK(t.header == std::vector<std::string>{"ebn0_db", "snr_db", "sim_ber", "theory_ber", "bits", "frames", "errors", "converged"});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == "1.5");
    CHECK(t.rows[0][4] == "1000");
    CHECK(!library_version().empty());
}
