#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dke/io.hpp"

namespace dke::svg {

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kMarginLeft = 70, kMarginRight = 20, kMarginTop = 40, kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Range {
    double lo = 0.0, hi = 1.0;
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span() const { return hi - lo > 0 ? hi - lo : 1.0; }
};

std::string header(const std::string& title) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    return os.str();
}

void axes(std::ostringstream& os, const Range& xr, const Range& yr) {
    const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;
    os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
       << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
       << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = xr.lo + xr.span() * t / 4;
        const double fy = yr.lo + yr.span() * t / 4;
        const double px = x0 + (x1 - x0) * t / 4.0;
        const double py = y0 - (y0 - y1) * t / 4.0;
        os << "<text x=\"" << px << "\" y=\"" << y0 + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << format_double(std::round(fx * 1000) / 1000) << "</text>\n"
           << "<text x=\"" << x0 - 8 << "\" y=\"" << py + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << format_double(std::round(fy * 1000) / 1000) << "</text>\n";
    }
}

double map_x(double v, const Range& r) {
    return kMarginLeft + (kWidth - kMarginLeft - kMarginRight) * (v - r.lo) / r.span();
}
double map_y(double v, const Range& r) {
    return kHeight - kMarginBottom -
           (kHeight - kMarginTop - kMarginBottom) * (v - r.lo) / r.span();
}

}  // namespace

void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::vector<Series>& series) {
    Range xr, yr;
    bool any = false;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!any) {
                xr.lo = xr.hi = x;
                yr.lo = yr.hi = y;
                any = true;
            }
            xr.include(x);
            yr.include(y);
        }
    std::ostringstream os;
    os << header(title);
    axes(os, xr, yr);
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % 10];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[si].points)
            os << map_x(x, xr) << ',' << map_y(y, yr) << ' ';
        os << "\"/>\n";
        os << "<text x=\"" << kWidth - kMarginRight - 8 << "\" y=\""
           << kMarginTop + 16 * (si + 1) << "\" text-anchor=\"end\" fill=\"" << color
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[si].name << "</text>\n";
    }
    os << "</svg>\n";
    atomic_write(path, os.str());
}

void write_histogram(const std::filesystem::path& path, const std::string& title,
                     const std::vector<double>& values, int bins) {
    Range vr;
    bool any = false;
    for (double v : values) {
        if (!any) {
            vr.lo = vr.hi = v;
            any = true;
        }
        vr.include(v);
    }
    std::vector<int> counts(std::max(1, bins), 0);
    for (double v : values) {
        int b = static_cast<int>((v - vr.lo) / vr.span() * bins);
        b = std::clamp(b, 0, bins - 1);
        ++counts[b];
    }
    Range yr;
    for (int c : counts) yr.include(static_cast<double>(c));
    std::ostringstream os;
    os << header(title);
    axes(os, vr, yr);
    const double bar_w = (kWidth - kMarginLeft - kMarginRight) / static_cast<double>(bins);
    for (int b = 0; b < bins; ++b) {
        const double x = kMarginLeft + b * bar_w;
        const double y = map_y(counts[b], yr);
        os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w * 0.9
           << "\" height=\"" << (kHeight - kMarginBottom - y) << "\" fill=\"#1f77b4\"/>\n";
    }
    os << "</svg>\n";
    atomic_write(path, os.str());
}

}  // namespace dke::svg
