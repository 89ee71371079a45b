#include "conegeo/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "conegeo/errors.hpp"

namespace conegeo {

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void CsvTable::write(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error("cannot write " + file.string());
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "");
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

void write_text_file(const std::filesystem::path& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error("cannot write " + file.string());
    out << content;
}

void write_svg_line_plot(const std::filesystem::path& file, const std::string& title,
                         const std::string& xlabel, const std::string& ylabel,
                         const std::vector<double>& xs, const std::vector<double>& ys,
                         bool loglog) {
    const int W = 640, H = 440, L = 70, Rm = 20, T = 40, B = 50;
    auto fmt = [](double v) {
        char b[32];
        std::snprintf(b, sizeof(b), "%.6g", v);
        return std::string(b);
    };

    std::vector<double> px = xs, py = ys;
    bool uselog = loglog;
    for (std::size_t i = 0; i < px.size() && uselog; ++i)
        if (!(px[i] > 0.0) || !(py[i] > 0.0)) uselog = false;
    if (uselog)
        for (std::size_t i = 0; i < px.size(); ++i) {
            px[i] = std::log10(px[i]);
            py[i] = std::log10(py[i]);
        }

    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!px.empty()) {
        x0 = x1 = px[0];
        y0 = y1 = py[0];
        for (std::size_t i = 1; i < px.size(); ++i) {
            x0 = std::min(x0, px[i]);
            x1 = std::max(x1, px[i]);
            y0 = std::min(y0, py[i]);
            y1 = std::max(y1, py[i]);
        }
    }
    if (x1 - x0 < 1e-12) { x0 -= 0.5; x1 += 0.5; }
    if (y1 - y0 < 1e-12) { y0 -= 0.5; y1 += 0.5; }

    auto X = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - Rm); };
    auto Y = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
           "\" height=\"" + std::to_string(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(W / 2.0) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
           title + (uselog ? " (log-log)" : "") + "</text>\n";
    svg += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(H - B) + "\" x2=\"" + fmt(W - Rm) +
           "\" y2=\"" + fmt(H - B) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(T) + "\" x2=\"" + fmt(L) + "\" y2=\"" +
           fmt(H - B) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt((L + W - Rm) / 2.0) + "\" y=\"" + fmt(H - 12.0) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + xlabel + "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt((T + H - B) / 2.0) +
           "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
           fmt((T + H - B) / 2.0) + ")\">" + ylabel + "</text>\n";

    for (int k = 0; k <= 4; ++k) {
        const double vx = x0 + (x1 - x0) * k / 4.0;
        const double vy = y0 + (y1 - y0) * k / 4.0;
        const double lx = uselog ? std::pow(10.0, vx) : vx;
        const double ly = uselog ? std::pow(10.0, vy) : vy;
        svg += "<text x=\"" + fmt(X(vx)) + "\" y=\"" + fmt(H - B + 16.0) +
               "\" text-anchor=\"middle\" font-size=\"10\">" + fmt(lx) + "</text>\n";
        svg += "<text x=\"" + fmt(L - 6.0) + "\" y=\"" + fmt(Y(vy) + 3.0) +
               "\" text-anchor=\"end\" font-size=\"10\">" + fmt(ly) + "</text>\n";
    }

    if (!px.empty()) {
        svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < px.size(); ++i)
            svg += fmt(X(px[i])) + "," + fmt(Y(py[i])) + " ";
        svg += "\"/>\n";
        for (std::size_t i = 0; i < px.size(); ++i)
            svg += "<circle cx=\"" + fmt(X(px[i])) + "\" cy=\"" + fmt(Y(py[i])) +
                   "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
    svg += "</svg>\n";
    write_text_file(file, svg);
}

}  // namespace conegeo
