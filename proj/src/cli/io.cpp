#include "twave/cli/io.hpp"

#include "twave/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace twave::cli {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) throw ConfigError("not a number: '" + s + "'");
    return v;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()), out_(path) {
    if (!out_) throw ConfigError("cannot write '" + path + "'");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw ContractError("CSV row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
    out_ << '\n';
    out_.flush();
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    CsvTable t;
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> cells;
        std::stringstream ss(l);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        return cells;
    };
    if (!std::getline(in, line)) throw ConfigError("empty CSV '" + path + "'");
    t.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& c : split(line)) row.push_back(parse_double(c));
        if (row.size() != t.header.size()) throw ConfigError("ragged CSV row in '" + path + "'");
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_trajectory_csv(const std::string& path, const Trajectory& t) {
    CsvWriter w(path, {"eta", "u", "y"});
    for (const auto& s : t.samples) w.row({s.eta, s.point.u, s.point.y});
}

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string fixed(double x, int digits = 2) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

std::string escape_xml(const std::string& s) {
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

} // namespace

void write_svg(std::ostream& os, const std::vector<SvgSeries>& series, const std::string& title) {
    constexpr double W = 800.0, H = 600.0, M = 60.0;
    double umin = INFINITY, umax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            umin = std::min(umin, p.u);
            umax = std::max(umax, p.u);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    if (!(umin <= umax)) umin = -1.0, umax = 1.0, ymin = -1.0, ymax = 1.0;
    if (umax - umin == 0.0) umin -= 1.0, umax += 1.0;
    if (ymax - ymin == 0.0) ymin -= 1.0, ymax += 1.0;
    auto sx = [&](double u) { return M + (u - umin) / (umax - umin) * (W - 2 * M); };
    auto sy = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
       << escape_xml(title) << "</text>\n";

    // Frame, axis lines through the origin when visible, and end-point ticks.
    os << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\"" << H - 2 * M
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    if (umin < 0.0 && umax > 0.0)
        os << "<line x1=\"" << fixed(sx(0.0)) << "\" y1=\"" << M << "\" x2=\"" << fixed(sx(0.0)) << "\" y2=\""
           << H - M << "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
    if (ymin < 0.0 && ymax > 0.0)
        os << "<line x1=\"" << M << "\" y1=\"" << fixed(sy(0.0)) << "\" x2=\"" << W - M << "\" y2=\""
           << fixed(sy(0.0)) << "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
    auto label = [&](double x, double y, const std::string& text, const char* anchor) {
        os << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" text-anchor=\"" << anchor
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(text) << "</text>\n";
    };
    label(M, H - M + 18, format_double(umin), "start");
    label(W - M, H - M + 18, format_double(umax), "end");
    label(M - 6, H - M, format_double(ymin), "end");
    label(M - 6, M + 12, format_double(ymax), "end");
    label(W / 2, H - 16, "u", "middle");
    label(18, H / 2, "y", "middle");

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        os << "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"" << kPalette[i % std::size(kPalette)]
           << "\" points=\"";
        for (std::size_t j = 0; j < s.points.size(); ++j)
            os << (j ? " " : "") << fixed(sx(s.points[j].u)) << ',' << fixed(sy(s.points[j].y));
        os << "\"><title>" << escape_xml(s.label) << "</title></polyline>\n";
    }
    os << "</svg>\n";
}

} // namespace twave::cli
