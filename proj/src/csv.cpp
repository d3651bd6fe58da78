#include "netids/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>

#include "netids/errors.hpp"

namespace netids {

struct CsvReader::Impl {
    std::ifstream in;
    std::string line;
    std::string pending;  // multi-line quoted field accumulator
};

CsvReader::CsvReader(const std::string& path) : impl_(new Impl) {
    impl_->in.open(path, std::ios::binary);
    if (!impl_->in) throw DataError("cannot open " + path);
}

CsvReader::~CsvReader() { delete impl_; }

namespace {

// Returns false when the line ends inside an open quote (caller joins the
// next physical line).
bool split_csv_line(const std::string& line, std::vector<std::string>& fields, bool& in_quote,
                    std::string& field) {
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quote) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quote = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            in_quote = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    return !in_quote;
}

}  // namespace

bool CsvReader::next_row(std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quote = false;
    bool started = false;
    while (std::getline(impl_->in, impl_->line)) {
        std::string& l = impl_->line;
        if (!l.empty() && l.back() == '\r') l.pop_back();
        if (!started && l.empty()) continue;
        started = true;
        if (split_csv_line(l, fields, in_quote, field)) {
            fields.push_back(field);
            return true;
        }
        field.push_back('\n');  // quoted newline
    }
    if (started) {  // unterminated final line
        fields.push_back(field);
        return true;
    }
    return false;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
    impl_->out.open(path, std::ios::binary);
    if (!impl_->out) throw DataError("cannot write " + path);
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::write_row(const std::vector<std::string>& fields) {
    std::string line;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) line.push_back(',');
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            line.push_back('"');
            for (char c : f) {
                if (c == '"') line.push_back('"');
                line.push_back(c);
            }
            line.push_back('"');
        } else {
            line += f;
        }
    }
    line.push_back('\n');
    impl_->out.write(line.data(), static_cast<std::streamsize>(line.size()));
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_double(const std::string& token) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
    if (begin == end) return std::nullopt;
    double value = 0.0;
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

}  // namespace netids
