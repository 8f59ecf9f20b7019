#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace dke::svg {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

/// Multi-series line chart with axes and a small legend.
void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::vector<Series>& series);

/// Equal-width histogram of the given values.
void write_histogram(const std::filesystem::path& path, const std::string& title,
                     const std::vector<double>& values, int bins);

}  // namespace dke::svg
