// cscsim - chirp DFT-s-OFDM filter design, synthesis, diagnostics and BER sweeps
//
//   cscsim design     --waveform sinusoidal --deviation 318 --subcarriers 336 [--out f.csv]
//   cscsim synthesize --config run.json --data 0:1,75:1 [--out prefix]
//   cscsim ber        --config run.json [--out ber.csv]
//   cscsim analyze    --config run.json --mode psd|papr|snrpost [--out table.csv]
//
// Exit codes: 0 success, 1 usage or configuration error, 2 a BER point did
// not reach its error/bit targets before max_frames.

#include "csc/analysis.hpp"
#include "csc/config.hpp"
#include "csc/csv.hpp"
#include "csc/fdss.hpp"
#include "csc/simulation.hpp"
#include "csc/transceiver.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace csc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnderConverged = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Writes to `path`, or stdout when path is empty.
template <class Fn>
void emit(const fs::path& path, Fn&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write(os);
}

std::vector<std::string> run_metadata(const RunConfig& rc, const std::string& command) {
    std::vector<std::string> meta{"cscsim " + command, "version " + std::string(library_version()),
                                  "config " + rc.canonical};
    return meta;
}

fs::path default_output(const RunConfig& rc, const std::string& out, const std::string& stem) {
    if (!out.empty()) return out;
    return rc.output_dir / stem;
}

// "m:re[:im],m:re[:im],..."
std::vector<std::pair<int, cplx>> parse_data_spec(const std::string& spec) {
    if (spec.empty()) throw UsageError("--data must list at least one index:value pair");
    std::vector<std::pair<int, cplx>> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::vector<std::string> parts;
        std::stringstream is(item);
        std::string p;
        while (std::getline(is, p, ':')) parts.push_back(p);
        if (parts.size() < 2 || parts.size() > 3) throw UsageError("bad --data entry '" + item + "'");
        try {
            const int m = static_cast<int>(parse_int(parts[0]));
            const double re = parse_double(parts[1]);
            const double im = parts.size() == 3 ? parse_double(parts[2]) : 0.0;
            out.emplace_back(m, cplx{re, im});
        } catch (const std::runtime_error& e) {
            throw UsageError("bad --data entry '" + item + "': " + e.what());
        }
    }
    if (out.empty()) throw UsageError("--data must list at least one index:value pair");
    return out;
}

int cmd_design(const std::string& waveform_name, double deviation, int subcarriers, int harmonics, bool up_first,
               const std::string& out) {
    const auto w = parse_waveform(waveform_name);
    if (!w) throw UsageError("unknown waveform '" + waveform_name + "' (plain, linear, sinusoidal, triangular)");
    if (w != Waveform::plain && deviation > subcarriers)
        throw UsageError("deviation D must not exceed the subcarrier count M");
    const WaveformSpec spec{*w, deviation, harmonics, !up_first};
    const FdssFilter filter = design_filter(spec, subcarriers);

    std::ostringstream desc;
    desc << "waveform " << waveform_name << " D=" << format_double(deviation) << " M=" << subcarriers;
    if (*w == Waveform::triangular) desc << " harmonics=" << harmonics << " down_first=" << (up_first ? 0 : 1);
    const std::vector<std::string> meta{"cscsim design", "version " + std::string(library_version()), desc.str()};
    emit(out, [&](std::ostream& os) { write_filter_csv(os, filter, meta); });

    std::ostream& report = out.empty() ? std::cerr : std::cout;
    report << "truncation_loss " << format_double(filter.truncation_loss()) << '\n'
           << "magnitude_ratio " << format_double(filter.magnitude_ratio()) << '\n';
    return kExitOk;
}

int cmd_synthesize(const RunConfig& rc, const std::string& data_spec, const std::string& out_prefix) {
    const auto entries = parse_data_spec(data_spec);
    const FrameConfig& frame = rc.link.frame;
    ComplexVector symbols(static_cast<std::size_t>(frame.data_symbols()));
    for (const auto& [m, v] : entries) {
        if (m < 0 || m >= frame.data_symbols())
            throw UsageError("symbol index " + std::to_string(m) + " outside 0.." +
                             std::to_string(frame.data_symbols() - 1));
        symbols[static_cast<std::size_t>(m)] = v;
    }
    const Modem modem(design_filter(rc.link.waveform, frame.subcarriers), frame);
    const TxSignal tx = modem.modulate(symbols);
    const auto body = tx.body(frame.cp_len);
    const Spectrogram sg = spectrogram(body, rc.analysis.win_len, rc.analysis.hop, true);
    const auto ridge = sg.ridge();

    const fs::path prefix = default_output(rc, out_prefix, "synth");
    const auto meta = run_metadata(rc, "synthesize --data " + data_spec);
    emit(fs::path(prefix.string() + "_time.csv"), [&](std::ostream& os) {
        write_metadata(os, meta);
        os << "n,re,im\n";
        for (std::size_t i = 0; i < tx.samples.size(); ++i)
            os << static_cast<long>(i) - frame.cp_len << ',' << format_double(tx.samples[i].real()) << ','
               << format_double(tx.samples[i].imag()) << '\n';
    });
    emit(fs::path(prefix.string() + "_spectrogram.csv"), [&](std::ostream& os) {
        write_metadata(os, meta);
        write_metadata(os, {"rows: Hann-windowed circular STFT slices of the CP-free body; columns bin_<k>: power dB, "
                            "k in cycles per window (k * N / win_len subcarriers)"});
        const int w = sg.win_len;
        os << "slice,center_sample,ridge_bin";
        for (int k = w / 2 - w + 1; k <= w / 2; ++k) os << ",bin_" << k;
        os << '\n';
        for (std::size_t t = 0; t < sg.power_db.size(); ++t) {
            os << t << ',' << t * static_cast<std::size_t>(sg.hop) << ',' << format_double(ridge[t]);
            for (int k = w / 2 - w + 1; k <= w / 2; ++k)
                os << ',' << format_double(sg.power_db[t][static_cast<std::size_t>((k + w) % w)]);
            os << '\n';
        }
    });
    std::cout << "papr_db " << format_double(papr_db(body)) << '\n';
    return kExitOk;
}

int cmd_ber(const RunConfig& rc, const std::string& out) {
    if (rc.link.ebn0_grid_db.empty()) throw ConfigError({"sweep.ebn0_db: required for the ber command"});
    const BerCurve curve = run_ber_sweep(rc.link);
    auto meta = run_metadata(rc, "ber");
    for (auto& line : describe(rc.link)) meta.push_back(std::move(line));
    std::vector<std::string> flagged;
    for (const auto& p : curve.points)
        if (!p.converged) flagged.push_back(format_double(p.ebn0_db));
    if (!flagged.empty()) {
        std::string list;
        for (const auto& f : flagged) list += (list.empty() ? "" : ";") + f;
        meta.push_back("UNDER-CONVERGED points (ebn0_db): " + list);
    }
    const fs::path path = default_output(
        rc, out, "ber_" + std::string(to_string(rc.link.waveform.waveform)) + "_R" +
                     std::to_string(rc.link.frame.repetition) + ".csv");
    emit(path, [&](std::ostream& os) { write_ber_csv(os, curve, meta); });
    if (!flagged.empty()) {
        std::cerr << "warning: " << flagged.size() << " point(s) under-converged\n";
        return kExitUnderConverged;
    }
    return kExitOk;
}

ComplexVector random_frame_body(const Modem& modem, Rng& rng) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(modem.config().bits_per_frame()));
    for (auto& b : bits) b = rng.bit();
    const TxSignal tx = modem.modulate(qpsk_map(bits));
    const auto body = tx.body(modem.config().cp_len);
    return {body.begin(), body.end()};
}

int cmd_analyze(const RunConfig& rc, const std::string& mode, const std::string& out) {
    const FrameConfig& frame = rc.link.frame;
    const auto meta = run_metadata(rc, "analyze --mode " + mode);

    if (mode == "psd") {
        if (rc.analysis.frames < 1000) throw ConfigError({"analysis.frames: psd mode averages at least 1000 frames"});
        const FdssFilter filter = design_filter(rc.link.waveform, frame.subcarriers);
        const Modem modem(filter, frame);
        Rng rng(rc.link.seed);
        ComplexVector signal;
        signal.reserve(static_cast<std::size_t>(rc.analysis.frames) * static_cast<std::size_t>(frame.fft_size));
        for (int f = 0; f < rc.analysis.frames; ++f) {
            const auto body = random_frame_body(modem, rng);
            signal.insert(signal.end(), body.begin(), body.end());
        }
        const int nfft = frame.fft_size;
        const auto spectrum = psd(signal, nfft, static_cast<int>(signal.size() / static_cast<std::size_t>(nfft)),
                                  frame.subcarriers);
        emit(default_output(rc, out, "psd_" + std::string(to_string(rc.link.waveform.waveform)) + ".csv"),
             [&](std::ostream& os) {
                 write_metadata(os, meta);
                 os << "k,psd_db,filter_db\n";
                 for (int k = nfft / 2 - nfft + 1; k <= nfft / 2; ++k) {
                     os << k << ',' << format_double(spectrum[static_cast<std::size_t>((k + nfft) % nfft)]) << ',';
                     if (k >= filter.lower() && k <= filter.upper())
                         os << format_double(10.0 * std::log10(std::norm(filter.at(k))));
                     os << '\n';
                 }
             });
        return kExitOk;
    }
    if (mode == "papr") {
        emit(default_output(rc, out, "papr.csv"), [&](std::ostream& os) {
            write_metadata(os, meta);
            os << "waveform,single_symbol_papr_db,random_frame_mean_papr_db\n";
            for (Waveform w : {Waveform::plain, Waveform::linear, Waveform::sinusoidal, Waveform::triangular}) {
                WaveformSpec spec = rc.link.waveform;
                spec.waveform = w;
                const Modem modem(design_filter(spec, frame.subcarriers), frame);
                ComplexVector single(static_cast<std::size_t>(frame.data_symbols()));
                single[0] = 1.0;
                const TxSignal tx = modem.modulate(single);
                Rng rng(rc.link.seed);
                double mean = 0.0;
                for (int f = 0; f < rc.analysis.frames; ++f) mean += papr_db(random_frame_body(modem, rng));
                mean /= rc.analysis.frames;
                os << to_string(w) << ',' << format_double(papr_db(tx.body(frame.cp_len))) << ','
                   << format_double(mean) << '\n';
            }
        });
        return kExitOk;
    }
    if (mode == "snrpost") {
        const FdssFilter filter = design_filter(rc.link.waveform, frame.subcarriers);
        emit(default_output(rc, out, "snrpost_" + std::string(to_string(rc.link.waveform.waveform)) + ".csv"),
             [&](std::ostream& os) {
                 write_metadata(os, meta);
                 write_metadata(os, {"snr_db: data-symbol SNR with all R copies combined (R x per-subcarrier SNR)"});
                 os << "snr_db,snr_post_db,alpha_mmse,theory_ber\n";
                 for (double s : rc.analysis.snr_db) {
                     const SnrPostReport r = snr_post(filter, std::pow(10.0, s / 10.0), frame.repetition);
                     os << format_double(s) << ','
                        << (r.unbounded ? std::string("inf") : format_double(10.0 * std::log10(r.snr_post))) << ','
                        << format_double(r.alpha_mmse) << ',' << format_double(theoretical_ber_qpsk(r.snr_post))
                        << '\n';
                 }
             });
        return kExitOk;
    }
    throw UsageError("unknown analyze mode '" + mode + "' (psd, papr, snrpost)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chirp synthesis and BER simulation over DFT-s-OFDM with spectral shaping"};
    app.require_subcommand(1);

    std::string waveform, out, config_path, data_spec, mode;
    double deviation = 318.0;
    int subcarriers = 336;
    int harmonics = 64;
    bool up_first = false;

    auto* design = app.add_subcommand("design", "Design an FDSS filter and write it as k,re,im CSV");
    design->add_option("--waveform", waveform, "plain | linear | sinusoidal | triangular")->required();
    design->add_option("--deviation", deviation, "frequency deviation D")->capture_default_str();
    design->add_option("--subcarriers", subcarriers, "occupied subcarriers M")->capture_default_str();
    design->add_option("--harmonics", harmonics, "Fourier harmonics for the triangular trajectory")
        ->capture_default_str();
    design->add_flag("--up-first", up_first, "triangular: up-chirp in the first half");
    design->add_option("--out", out, "output CSV (stdout when omitted)");

    auto* synth = app.add_subcommand("synthesize", "Synthesize one frame; write I/Q and spectrogram CSVs");
    synth->add_option("--config", config_path, "JSON run configuration")->required();
    synth->add_option("--data", data_spec, "active symbols as index:re[:im], comma separated")->required();
    synth->add_option("--out", out, "output prefix (<prefix>_time.csv, <prefix>_spectrogram.csv)");

    auto* ber = app.add_subcommand("ber", "Run a Monte Carlo BER sweep");
    ber->add_option("--config", config_path, "JSON run configuration")->required();
    ber->add_option("--out", out, "output CSV");

    auto* analyze = app.add_subcommand("analyze", "PSD, PAPR or SNR_post tables");
    analyze->add_option("--config", config_path, "JSON run configuration")->required();
    analyze->add_option("--mode", mode, "psd | papr | snrpost")->required();
    analyze->add_option("--out", out, "output CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (design->parsed()) return cmd_design(waveform, deviation, subcarriers, harmonics, up_first, out);
        const RunConfig rc = load_run_config(config_path);
        if (synth->parsed()) return cmd_synthesize(rc, data_spec, out);
        if (ber->parsed()) return cmd_ber(rc, out);
        if (analyze->parsed()) return cmd_analyze(rc, mode, out);
    } catch (const ConfigError& e) {
        std::cerr << "config error:\n";
        for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
