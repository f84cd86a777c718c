#pragma once

#include <string>
#include <vector>

namespace qnmlab {

// Shortest decimal string that round-trips the binary64 value exactly
// (std::to_chars general form). NaN prints as "nan", infinities as
// "inf"/"-inf".
std::string csv_double(double v);

// In-memory CSV dataset: mandatory header row, UTF-8, LF line endings,
// cells preformatted by the caller. Rows are emitted in insertion order;
// callers building rows concurrently must buffer and insert in a
// deterministic order themselves.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells); // size must match header

    const std::vector<std::string>& header() const { return header_; }
    size_t row_count() const { return rows_.size(); }

    std::string serialize() const;
    void write(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace qnmlab
