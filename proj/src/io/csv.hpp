#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace ccsaa::io {

// Locale-independent cell formatting; doubles use the shortest round-trip
// representation so files are byte-stable across runs and worker counts.
std::string csv_cell(double v);
std::string csv_cell(std::int64_t v);
std::string csv_cell(std::uint64_t v);

// Minimal CSV writing: '.' decimal separator, newline-terminated rows,
// header row mandatory, quoting only where needed.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

private:
    void write_row(const std::vector<std::string>& cells);
    std::ostream& out_;
    bool header_written_ = false;
};

} // namespace ccsaa::io
