#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace srs {

// Stable shortest-ish decimal rendering (12 significant digits, '.' decimal
// point). All CSV output goes through this so that seeded re-runs are
// byte-identical.
std::string format_double(double v);

// Rendering used for expected-time tables: integers below 1e6, scientific
// notation above.
std::string format_table_value(double v);

// Minimal comma/LF writer. Cells are written verbatim; callers only pass
// numbers and bare identifiers, so no quoting is needed.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    void row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::string path_;
};

} // namespace srs
