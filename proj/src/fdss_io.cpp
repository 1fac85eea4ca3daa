#include "csc/csv.hpp"
#include "csc/fdss.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace csc {

void write_filter_csv(std::ostream& os, const FdssFilter& filter, const std::vector<std::string>& metadata) {
    write_metadata(os, metadata);
    os << "k,re,im\n";
    for (int k = filter.lower(); k <= filter.upper(); ++k) {
        const cplx c = filter.at(k);
        os << k << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
    }
}

void save_filter_csv(const std::filesystem::path& path, const FdssFilter& filter,
                     const std::vector<std::string>& metadata) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_filter_csv(os, filter, metadata);
}

FdssFilter read_filter_csv(std::istream& is) {
    const CsvTable table = read_csv(is);
    if (table.header != std::vector<std::string>{"k", "re", "im"})
        throw std::runtime_error("filter CSV must have header k,re,im");
    if (table.rows.empty()) throw std::runtime_error("filter CSV has no rows");

    const int m = static_cast<int>(table.rows.size());
    const int lo = FdssFilter::lower_edge(m);
    ComplexVector coeffs(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const long k = parse_int(row[0]);
        if (k != lo + static_cast<long>(i))
            throw std::runtime_error("filter CSV rows must list k = " + std::to_string(lo) + ".." +
                                     std::to_string(FdssFilter::upper_edge(m)) + " in order");
        coeffs[i] = {parse_double(row[1]), parse_double(row[2])};
    }

    double power = 0.0;
    for (const auto& c : coeffs) power += std::norm(c);
    const bool unit = std::abs(power - m) <= 1e-9 * m;
    // The raw in-band power is not recoverable from normalized coefficients;
    // report it as unknown-but-complete (1) for unit filters.
    return FdssFilter(m, std::move(coeffs),
                      unit ? Normalization::unit_average_power : Normalization::raw_fourier,
                      unit ? 1.0 : power);
}

FdssFilter load_filter_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    return read_filter_csv(is);
}

}  // namespace csc
