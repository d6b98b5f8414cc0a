#include "lowfroude/csv.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace lowfroude {

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), width_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os_ << ',';
        os_ << header[i];
    }
    os_ << '\n';
}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != width_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os_ << ',';
        os_ << format(values[i]);
    }
    os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os_ << ',';
        os_ << cells[i];
    }
    os_ << '\n';
}

} // namespace lowfroude
