// csv.hpp - minimal CSV helpers shared by the file formats
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace csc {

// Shortest-round-trip is not required; 17 significant digits always
// reproduce the double exactly.
std::string format_double(double v);
double parse_double(std::string_view s);
long parse_int(std::string_view s);

// "# line" per entry.
void write_metadata(std::ostream& os, const std::vector<std::string>& lines);

struct CsvTable {
    std::vector<std::string> comments;  // '#' lines without the marker
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Comment lines may appear anywhere before the header. Every data row must
// have as many fields as the header.
CsvTable read_csv(std::istream& is);

}  // namespace csc
