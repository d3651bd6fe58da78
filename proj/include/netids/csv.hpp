#pragma once

#include <optional>
#include <string>
#include <vector>

namespace netids {

// Minimal RFC-4180-ish CSV: quoted fields, "" escapes, CR/LF tolerant.
class CsvReader {
public:
    explicit CsvReader(const std::string& path);
    ~CsvReader();
    CsvReader(const CsvReader&) = delete;
    CsvReader& operator=(const CsvReader&) = delete;

    // False at EOF. Blank lines are skipped.
    bool next_row(std::vector<std::string>& fields);

private:
    struct Impl;
    Impl* impl_;
};

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void write_row(const std::vector<std::string>& fields);

private:
    struct Impl;
    Impl* impl_;
};

// Shortest representation that round-trips the exact double.
std::string format_double(double v);

// Strict: the whole token must parse and the value must be finite.
std::optional<double> parse_double(const std::string& token);

}  // namespace netids
