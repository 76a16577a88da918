// csv_io.hpp: locale-independent number formatting and small CSV tables

#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace aqc::io {

// 17 significant digits, same text as "%.17g" in the C locale, but never
// affected by the process locale.
std::string format_double(double x);

// Strict parse of a finite decimal number; throws InputError.
double parse_double(std::string_view text);

struct CsvTable {
    std::vector<std::string> header;           // empty when the file had none
    std::vector<std::vector<std::string>> rows;
};

// Comma-separated, '#' starts a comment line, blank lines skipped. The first
// line is taken as a header when any of its fields is not a number.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);

// Two numeric columns, e.g. (time, energy) or (omega, J).
struct XYSample {
    double x;
    double y;
};
std::vector<XYSample> read_xy_csv(std::istream& in);
std::vector<XYSample> read_xy_csv_file(const std::filesystem::path& path);

}  // namespace aqc::io
