#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace conegeo {

/// Fixed-format double for CSV cells: 12 significant digits, locale-free.
std::string csv_number(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
    void write(const std::filesystem::path& file) const;
};

/// Minimal self-contained SVG line plot; log-log when all values are
/// positive. Deterministic output for identical inputs.
void write_svg_line_plot(const std::filesystem::path& file, const std::string& title,
                         const std::string& xlabel, const std::string& ylabel,
                         const std::vector<double>& xs, const std::vector<double>& ys,
                         bool loglog);

void write_text_file(const std::filesystem::path& file, const std::string& content);

}  // namespace conegeo
