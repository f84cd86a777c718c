#include "qnmlab/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "qnmlab/errors.hpp"

namespace qnmlab {

std::string csv_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::logic_error("to_chars failed");
    return std::string(buf, p);
}

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {
    if (header_.empty()) throw std::logic_error("CSV header must be nonempty");
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
        throw std::logic_error("CSV row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::serialize() const {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    emit(header_);
    for (const auto& row : rows_) emit(row);
    return out;
}

void CsvTable::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary); // binary keeps LF on any host
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << serialize();
    if (!out) throw ConfigError("write failed: " + path);
}

} // namespace qnmlab
