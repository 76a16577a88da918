#include "aqc/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "aqc/errors.hpp"

namespace aqc::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool looks_numeric(std::string_view s) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        const auto piece = line.substr(start, comma == std::string_view::npos
                                                  ? std::string_view::npos
                                                  : comma - start);
        fields.emplace_back(trim(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    auto s = trim(text);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw InputError("not a number: '" + std::string(text) + "'");
    }
    if (!std::isfinite(value)) {
        throw InputError("not a finite number: '" + std::string(text) + "'");
    }
    return value;
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    bool first = true;
    std::size_t width = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        view = trim(view);
        if (view.empty() || view.front() == '#') continue;
        auto fields = split_fields(view);
        if (first) {
            first = false;
            width = fields.size();
            const bool header = std::any_of(fields.begin(), fields.end(),
                                            [](const auto& f) { return !looks_numeric(f); });
            if (header) {
                table.header = std::move(fields);
                continue;
            }
        }
        if (fields.size() != width) {
            throw InputError("CSV line " + std::to_string(line_no) + ": expected " +
                             std::to_string(width) + " fields, got " +
                             std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return read_csv(in);
}

std::vector<XYSample> read_xy_csv(std::istream& in) {
    const auto table = read_csv(in);
    std::vector<XYSample> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        if (row.size() != 2) throw InputError("expected two columns");
        out.push_back({parse_double(row[0]), parse_double(row[1])});
    }
    if (out.empty()) throw InputError("CSV table has no data rows");
    return out;
}

std::vector<XYSample> read_xy_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return read_xy_csv(in);
}

}  // namespace aqc::io
