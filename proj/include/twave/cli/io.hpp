#pragma once

#include "twave/dynamics.hpp"

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace twave::cli {

/// Shortest decimal string that reads back to the same double; independent
/// of the global locale.
std::string format_double(double x);

/// Locale-independent parse of a full string; throws ConfigError on junk.
double parse_double(const std::string& s);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Streams rows to a file as they are produced, so a failure part-way leaves
/// the rows written so far.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::size_t columns_;
    std::ofstream out_;
};

CsvTable read_csv(const std::string& path);

void write_trajectory_csv(const std::string& path, const Trajectory& t);

struct SvgSeries {
    std::vector<PhasePoint> points;
    std::string label;
};

/// SVG 1.1 document with one polyline per series over a shared (u, y) frame,
/// framed by axes with end-point tick labels.
void write_svg(std::ostream& os, const std::vector<SvgSeries>& series, const std::string& title);

} // namespace twave::cli
