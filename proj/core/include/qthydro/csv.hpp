#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>

namespace qthydro {

/// %.17g rendering: shortest text that round-trips the double exactly.
std::string format_double(double x);

/// Streams rows of doubles under a one-line header. All numeric output goes
/// through format_double so files are byte-reproducible.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& header);

    void row(std::initializer_list<double> values);
    void raw_row(const std::string& line);

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

}  // namespace qthydro
