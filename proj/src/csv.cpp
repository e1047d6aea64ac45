#include "mtkink/csv.hpp"

#include <cstdio>

#include "mtkink/errors.hpp"

namespace mtk {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_sanitize(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return out;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path), width_(header.size()) {
    if (!out_) throw ValidationError("cannot open output file: " + path);
    if (header.empty()) throw ValidationError("CSV header must not be empty");
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_)
        throw ValidationError(path_ + ": row has " + std::to_string(cells.size()) +
                              " cells, header has " + std::to_string(width_));
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_sanitize(cells[i]);
    }
    out_ << '\n';
    if (!out_) throw ValidationError("write failed: " + path_);
}

void CsvWriter::row_values(const std::vector<double>& cells) {
    std::vector<std::string> text;
    text.reserve(cells.size());
    for (double v : cells) text.push_back(format_double(v));
    row(text);
}

} // namespace mtk
