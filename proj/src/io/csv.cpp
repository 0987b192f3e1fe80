#include "io/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ccsaa::io {

std::string csv_cell(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_cell(std::int64_t v) { return std::to_string(v); }
std::string csv_cell(std::uint64_t v) { return std::to_string(v); }

namespace {
std::string quote_if_needed(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}
} // namespace

void CsvWriter::header(const std::vector<std::string>& columns) {
    if (header_written_) throw std::logic_error("CsvWriter: header already written");
    write_row(columns);
    header_written_ = true;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (!header_written_) throw std::logic_error("CsvWriter: header row is mandatory");
    write_row(cells);
}

void CsvWriter::write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << quote_if_needed(cells[i]);
    }
    out_ << '\n';
}

} // namespace ccsaa::io
