#include "qthydro/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace qthydro {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& header)
    : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out_ << header << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out_ << ',';
        out_ << format_double(v);
        first = false;
    }
    out_ << '\n';
}

void CsvWriter::raw_row(const std::string& line) { out_ << line << '\n'; }

}  // namespace qthydro
