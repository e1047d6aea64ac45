#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace mtk {

// %.17g: shortest form that round-trips any IEEE double bit-exactly.
std::string format_double(double v);

// Free text destined for a CSV cell: commas and line breaks become ';' so no
// quoting machinery is ever needed.
std::string csv_sanitize(const std::string& s);

// Fixed-width CSV with a mandatory header, LF line endings, binary mode (so
// output is byte-identical across platforms and runs).
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);
    void row_values(const std::vector<double>& cells);
    const std::string& path() const { return path_; }

private:
    std::ofstream out_;
    std::string path_;
    size_t width_;
};

} // namespace mtk
