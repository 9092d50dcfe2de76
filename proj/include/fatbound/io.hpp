#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace fatbound::io {

/// Shortest round-trip decimal form of v.
std::string format_double(double v);

/// Columns of equal length written as CSV with a header row.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns);

void write_file(const std::string& path, const std::string& content);

/// Minimal SVG: polylines, dots and vertical markers in one auto-scaled panel.
class SvgPlot {
public:
    explicit SvgPlot(std::string title, int width = 800, int height = 500);

    void add_polyline(std::span<const double> xs, std::span<const double> ys, std::string color,
                      std::string label = {});
    void add_points(std::span<const double> xs, std::span<const double> ys, std::string color, double radius = 1.2);
    void add_vline(double x, std::string color);

    std::string render() const;

private:
    struct Series {
        std::vector<double> xs, ys;
        std::string color, label;
        bool dots;
        double radius;
    };
    std::string title_;
    int width_, height_;
    std::vector<Series> series_;
    std::vector<std::pair<double, std::string>> vlines_;
};

}  // namespace fatbound::io
