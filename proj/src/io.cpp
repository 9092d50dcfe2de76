#include "fatbound/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fatbound::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return {buf, ptr};
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns) {
    if (header.size() != columns.size()) throw std::invalid_argument("write_csv: header/column count mismatch");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << format_double(columns[i][r]);
        out << '\n';
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << content;
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, int width, int height)
    : title_(std::move(title)), width_(width), height_(height) {}

void SvgPlot::add_polyline(std::span<const double> xs, std::span<const double> ys, std::string color,
                           std::string label) {
    series_.push_back({{xs.begin(), xs.end()}, {ys.begin(), ys.end()}, std::move(color), std::move(label), false, 0});
}

void SvgPlot::add_points(std::span<const double> xs, std::span<const double> ys, std::string color, double radius) {
    series_.push_back({{xs.begin(), xs.end()}, {ys.begin(), ys.end()}, std::move(color), {}, true, radius});
}

void SvgPlot::add_vline(double x, std::string color) { vlines_.emplace_back(x, std::move(color)); }

std::string SvgPlot::render() const {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series_)
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
            x0 = std::min(x0, s.xs[i]);
            x1 = std::max(x1, s.xs[i]);
            y0 = std::min(y0, s.ys[i]);
            y1 = std::max(y1, s.ys[i]);
        }
    if (!(x0 < x1)) x0 = 0.0, x1 = 1.0;
    if (!(y0 < y1)) y0 -= 0.5, y1 += 0.5;
    const double pad = 40.0;
    auto px = [&](double x) { return pad + (x - x0) / (x1 - x0) * (width_ - 2 * pad); };
    auto py = [&](double y) { return height_ - pad - (y - y0) / (y1 - y0) * (height_ - 2 * pad); };

    std::ostringstream o;
    o.precision(6);
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\"" << height_ << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << pad << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(title_) << "</text>\n";
    o << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << width_ - 2 * pad << "\" height=\""
      << height_ - 2 * pad << "\" fill=\"none\" stroke=\"#888\"/>\n";
    o << "<text x=\"" << pad << "\" y=\"" << height_ - 12 << "\" font-size=\"11\">x: [" << x0 << ", " << x1
      << "]  y: [" << y0 << ", " << y1 << "]</text>\n";
    for (const auto& [x, color] : vlines_)
        o << "<line x1=\"" << px(x) << "\" y1=\"" << pad << "\" x2=\"" << px(x) << "\" y2=\"" << height_ - pad
          << "\" stroke=\"" << color << "\" stroke-dasharray=\"4 3\"/>\n";
    int legend = 0;
    for (const auto& s : series_) {
        if (s.dots) {
            o << "<g fill=\"" << s.color << "\">\n";
            for (std::size_t i = 0; i < s.xs.size(); ++i)
                if (std::isfinite(s.ys[i]))
                    o << "<circle cx=\"" << px(s.xs[i]) << "\" cy=\"" << py(s.ys[i]) << "\" r=\"" << s.radius
                      << "\"/>\n";
            o << "</g>\n";
            continue;
        }
        o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.xs.size(); ++i)
            if (std::isfinite(s.ys[i])) o << px(s.xs[i]) << ',' << py(s.ys[i]) << ' ';
        o << "\"/>\n";
        if (!s.label.empty())
            o << "<text x=\"" << width_ - pad - 150 << "\" y=\"" << pad + 16 + 14 * legend++ << "\" font-size=\"11\" fill=\""
              << s.color << "\">" << xml_escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace fatbound::io
