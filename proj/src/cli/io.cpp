#include <cstdio>
#include <fstream>
#include <system_error>

#include "fractalfn/cli/commands.hpp"

namespace fractalfn::cli {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) throw ShapeError("csv_table: header and column counts differ");
    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) out += (c ? "," : "") + header[c];
    out += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns)
        if (col.size() != rows) throw ShapeError("csv_table: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

std::string svg_polyline(const SampledFunction& g) {
    constexpr double kWidth = 1000.0;
    constexpr double kHeight = 600.0;
    constexpr double kMargin = 20.0;
    const double lo = g.min();
    const double span = g.max() - lo;
    std::string points;
    char buf[64];
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double u = static_cast<double>(j) / static_cast<double>(g.size() - 1);
        const double v = span > 0.0 ? (g[j] - lo) / span : 0.5;
        std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", j ? " " : "", kMargin + u * (kWidth - 2 * kMargin),
                      kHeight - kMargin - v * (kHeight - 2 * kMargin));
        points += buf;
    }
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"600\" viewBox=\"0 0 1000 600\">\n"
           "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"" +
           points + "\"/>\n</svg>\n";
}

}  // namespace fractalfn::cli
