#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lowfroude {

/// Comma-separated writer: header row, 15 significant digits, LF endings.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);

    void row(const std::vector<double>& values);
    /// Mixed row; empty cells stay empty (used for failed sweep entries).
    void row(const std::vector<std::string>& cells);

    static std::string format(double v);

private:
    std::ostream& os_;
    std::size_t width_;
};

} // namespace lowfroude
