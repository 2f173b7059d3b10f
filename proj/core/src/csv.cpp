#include "srs/csv.hpp"

#include <cmath>
#include <cstdio>

#include "srs/errors.hpp"

namespace srs {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string format_table_value(double v) {
    char buf[64];
    if (!std::isfinite(v)) return format_double(v);
    if (std::fabs(v) < 1e6) {
        std::snprintf(buf, sizeof(buf), "%.0f", v);
    } else {
        std::snprintf(buf, sizeof(buf), "%.3e", v);
    }
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot open file for writing: " + path);
    path_ = path;
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) throw IoError("write failed: " + path_);
}

} // namespace srs
