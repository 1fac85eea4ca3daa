#include "csc/simulation.hpp"

#include "csc/analysis.hpp"
#include "csc/csv.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#ifndef CSC_VERSION
#define CSC_VERSION "unknown"
#endif

namespace csc {

namespace {

constexpr std::int64_t kBatchFrames = 32;

struct FrameOutcome {
    std::int64_t errors = 0;
    double theory_ber = 0.0;  // multipath only
};

FrameOutcome run_frame(const Modem& modem, const LinkConfig& cfg, double rho, std::uint64_t seed) {
    Rng rng(seed);
    const FrameConfig& frame = modem.config();

    std::vector<std::uint8_t> bits(static_cast<std::size_t>(frame.bits_per_frame()));
    for (auto& b : bits) b = rng.bit();
    const ComplexVector symbols = qpsk_map(bits);
    const TxSignal tx = modem.modulate(symbols);

    const double noise_var = 1.0 / rho;
    FrameOutcome out;
    ChannelRealization ch = ChannelRealization::identity();
    ComplexVector response;
    if (cfg.channel == ChannelKind::multipath) {
        ch = draw(cfg.profile, rng);
        response = freq_response(ch, frame.fft_size);

        const FdssFilter& filter = modem.filter();
        std::vector<double> gains(filter.coeffs().size());
        for (int k = filter.lower(); k <= filter.upper(); ++k) {
            const auto i = static_cast<std::size_t>(k - filter.lower());
            const auto bin = static_cast<std::size_t>((k % frame.fft_size + frame.fft_size) % frame.fft_size);
            gains[i] = std::norm(filter.coeffs()[i] * response[bin]);
        }
        out.theory_ber = theoretical_ber_qpsk(snr_post_from_gains(gains, frame.repetition * rho, frame.repetition).snr_post);
    }

    const ComplexVector rx = apply(tx.samples, ch, sample_noise_variance(noise_var, frame), rng);
    const Demodulated dem = modem.demodulate(rx, response, noise_var);
    for (std::size_t i = 0; i < bits.size(); ++i) out.errors += dem.hard_bits[i] != bits[i];
    return out;
}

void run_batch(const Modem& modem, const LinkConfig& cfg, double rho, std::uint64_t point_seed,
               std::int64_t first_frame, std::vector<FrameOutcome>& outcomes, int threads) {
    const auto count = static_cast<std::int64_t>(outcomes.size());
    auto work = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i)
            outcomes[static_cast<std::size_t>(i)] =
                run_frame(modem, cfg, rho, Rng::derive(point_seed, static_cast<std::uint64_t>(first_frame + i)));
    };
    if (threads <= 1 || count < 2) {
        work(0, count);
        return;
    }
    std::vector<std::jthread> pool;
    const std::int64_t chunk = (count + threads - 1) / threads;
    for (std::int64_t begin = 0; begin < count; begin += chunk)
        pool.emplace_back(work, begin, std::min(count, begin + chunk));
}

std::optional<double> crossing(const BerCurve& curve, double target, bool theory) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : curve.points) {
        const double ber = theory ? p.theory_ber : p.sim_ber;
        if (ber > 0.0) pts.emplace_back(p.ebn0_db, std::log10(ber));
    }
    std::sort(pts.begin(), pts.end());
    const double lt = std::log10(target);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto [x0, y0] = pts[i];
        const auto [x1, y1] = pts[i + 1];
        if ((y0 - lt) * (y1 - lt) <= 0.0 && y0 != y1) return x0 + (lt - y0) * (x1 - x0) / (y1 - y0);
    }
    return std::nullopt;
}

}  // namespace

std::string_view to_string(Waveform w) {
    switch (w) {
        case Waveform::plain: return "plain";
        case Waveform::linear: return "linear";
        case Waveform::sinusoidal: return "sinusoidal";
        case Waveform::triangular: return "triangular";
    }
    return "?";
}

std::optional<Waveform> parse_waveform(std::string_view name) {
    for (Waveform w : {Waveform::plain, Waveform::linear, Waveform::sinusoidal, Waveform::triangular})
        if (name == to_string(w)) return w;
    return std::nullopt;
}

FdssFilter design_filter(const WaveformSpec& spec, int subcarriers) {
    switch (spec.waveform) {
        case Waveform::plain: return design_plain(subcarriers);
        case Waveform::linear: return design_linear(spec.deviation, subcarriers);
        case Waveform::sinusoidal: return design_sinusoidal(spec.deviation, subcarriers);
        case Waveform::triangular:
            return design_arbitrary(triangular_trajectory(spec.harmonics, spec.down_first, spec.deviation),
                                    subcarriers);
    }
    throw std::invalid_argument("unknown waveform");
}

void LinkConfig::validate() const {
    frame.validate();
    if (ebn0_grid_db.empty()) throw std::invalid_argument("Eb/N0 grid must not be empty");
    for (double e : ebn0_grid_db)
        if (!std::isfinite(e)) throw std::invalid_argument("Eb/N0 grid values must be finite");
    if (min_bits < 10000) throw std::invalid_argument("min_bits must be >= 10^4");
    if (max_frames < 1) throw std::invalid_argument("max_frames must be >= 1");
    if (min_errors < 1) throw std::invalid_argument("min_errors must be >= 1");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    if (channel == ChannelKind::multipath) profile.validate(frame.cp_len);
}

bool BerCurve::all_converged() const {
    return std::all_of(points.begin(), points.end(), [](const BerPoint& p) { return p.converged; });
}

double ebn0_to_subcarrier_snr(double ebn0_db, const FrameConfig& cfg) {
    return 2.0 / cfg.repetition * std::pow(10.0, ebn0_db / 10.0);
}

double theoretical_ber(const FdssFilter& filter, const FrameConfig& cfg, double ebn0_db) {
    const double rho = ebn0_to_subcarrier_snr(ebn0_db, cfg);
    return theoretical_ber_qpsk(snr_post(filter, cfg.repetition * rho, cfg.repetition).snr_post);
}

BerCurve run_ber_sweep(const LinkConfig& cfg) {
    cfg.validate();
    const Modem modem(design_filter(cfg.waveform, cfg.frame.subcarriers), cfg.frame);
    const int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const std::int64_t bits_per_frame = cfg.frame.bits_per_frame();

    BerCurve curve;
    for (std::size_t p = 0; p < cfg.ebn0_grid_db.size(); ++p) {
        BerPoint pt;
        pt.ebn0_db = cfg.ebn0_grid_db[p];
        const double rho = ebn0_to_subcarrier_snr(pt.ebn0_db, cfg.frame);
        pt.snr_db = 10.0 * std::log10(rho);
        const std::uint64_t point_seed = Rng::derive(cfg.seed, static_cast<std::uint64_t>(p), 0x5eedULL);

        double theory_sum = 0.0;
        std::vector<FrameOutcome> outcomes;
        while (pt.frames < cfg.max_frames && (pt.bits < cfg.min_bits || pt.errors < cfg.min_errors)) {
            outcomes.assign(static_cast<std::size_t>(std::min(kBatchFrames, cfg.max_frames - pt.frames)), {});
            run_batch(modem, cfg, rho, point_seed, pt.frames, outcomes, threads);
            for (const auto& o : outcomes) {
                pt.errors += o.errors;
                theory_sum += o.theory_ber;
            }
            pt.frames += static_cast<std::int64_t>(outcomes.size());
            pt.bits = pt.frames * bits_per_frame;
        }
        pt.converged = pt.bits >= cfg.min_bits && pt.errors >= cfg.min_errors;
        pt.sim_ber = pt.bits > 0 ? static_cast<double>(pt.errors) / static_cast<double>(pt.bits) : 0.0;
        pt.theory_ber = cfg.channel == ChannelKind::multipath
                            ? theory_sum / static_cast<double>(pt.frames)
                            : theoretical_ber(modem.filter(), cfg.frame, pt.ebn0_db);
        curve.points.push_back(pt);
    }
    return curve;
}

std::optional<double> simulated_crossing_db(const BerCurve& curve, double target_ber) {
    return crossing(curve, target_ber, false);
}

std::optional<double> theory_crossing_db(const BerCurve& curve, double target_ber) {
    return crossing(curve, target_ber, true);
}

double theoretical_crossing_db(const FdssFilter& filter, const FrameConfig& cfg, double target_ber) {
    if (!(target_ber > 0.0 && target_ber < 0.5)) throw std::invalid_argument("target BER must be in (0, 0.5)");
    double lo = -20.0, hi = 80.0;
    if (theoretical_ber(filter, cfg, hi) > target_ber) throw std::runtime_error("target BER not reached by 80 dB");
    for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
        const double mid = 0.5 * (lo + hi);
        (theoretical_ber(filter, cfg, mid) > target_ber ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

void write_ber_csv(std::ostream& os, const BerCurve& curve, const std::vector<std::string>& metadata) {
    write_metadata(os, metadata);
    os << "ebn0_db,snr_db,sim_ber,theory_ber,bits,frames,errors,converged\n";
    for (const auto& p : curve.points) {
        os << format_double(p.ebn0_db) << ',' << format_double(p.snr_db) << ',' << format_double(p.sim_ber) << ','
           << format_double(p.theory_ber) << ',' << p.bits << ',' << p.frames << ',' << p.errors << ','
           << (p.converged ? 1 : 0) << '\n';
    }
}

std::vector<std::string> describe(const LinkConfig& cfg) {
    std::vector<std::string> lines;
    std::ostringstream ss;
    ss << "frame M=" << cfg.frame.subcarriers << " N=" << cfg.frame.fft_size << " cp_len=" << cfg.frame.cp_len
       << " R=" << cfg.frame.repetition << " constellation=qpsk";
    lines.push_back(ss.str());
    ss.str("");
    ss << "waveform " << to_string(cfg.waveform.waveform) << " D=" << format_double(cfg.waveform.deviation);
    if (cfg.waveform.waveform == Waveform::triangular)
        ss << " harmonics=" << cfg.waveform.harmonics << " down_first=" << (cfg.waveform.down_first ? 1 : 0);
    lines.push_back(ss.str());
    ss.str("");
    if (cfg.channel == ChannelKind::awgn) {
        ss << "channel awgn";
    } else {
        ss << "channel multipath powers_db=";
        for (std::size_t i = 0; i < cfg.profile.tap_powers_db.size(); ++i)
            ss << (i ? ";" : "") << format_double(cfg.profile.tap_powers_db[i]);
        ss << " delays=";
        for (std::size_t i = 0; i < cfg.profile.tap_delays.size(); ++i)
            ss << (i ? ";" : "") << cfg.profile.tap_delays[i];
        ss << " rician_k=" << format_double(cfg.profile.rician_k);
    }
    lines.push_back(ss.str());
    ss.str("");
    ss << "seed " << cfg.seed << " min_bits=" << cfg.min_bits << " min_errors=" << cfg.min_errors
       << " max_frames=" << cfg.max_frames;
    lines.push_back(ss.str());
    lines.emplace_back("snr_db is the per-subcarrier SNR rho = (2/R) Eb/N0");
    return lines;
}

std::string_view library_version() { return CSC_VERSION; }

}  // namespace csc
