#include "cantorqc/emit.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cantorqc {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_levels(const CantorLevels& levels) {
    std::ostringstream out;
    out << "kind,level,index,left,length,log_length\n";
    for (int k = 0; k <= levels.depth(); ++k) {
        const auto& iv = levels.intervals(k);
        for (std::size_t i = 0; i < iv.size(); ++i)
            out << "interval," << k << ',' << i + 1 << ','
                << format_g17(iv[i].left) << ',' << format_g17(iv[i].length)
                << ',' << format_g17(iv[i].log_length) << '\n';
        if (k == 0) continue;
        const auto& gp = levels.gaps(k);
        for (std::size_t i = 0; i < gp.size(); ++i)
            out << "gap," << k << ',' << i + 1 << ','
                << format_g17(gp[i].left) << ',' << format_g17(gp[i].length)
                << ',' << format_g17(gp[i].log_length) << '\n';
    }
    return out.str();
}

std::string csv_pants(const PantsDecomposition& pants) {
    std::ostringstream out;
    out << "level,index,center,radius\n";
    for (int k = 0; k <= pants.depth(); ++k) {
        const auto& lvl = pants.level(k);
        for (std::size_t i = 0; i < lvl.size(); ++i)
            out << k << ',' << i + 1 << ',' << format_g17(lvl[i].center)
                << ',' << format_g17(lvl[i].radius) << '\n';
    }
    return out.str();
}

std::string csv_ledger(const DilatationLedger& ledger) {
    std::ostringstream out;
    out << "level,q,q_tilde,bound_plus,bound_psi,bound_total,"
           "exact_d_phi,exact_d_psi\n";
    for (const auto& row : ledger.rows)
        out << row.level << ',' << format_g17(row.q) << ','
            << format_g17(row.q_t) << ',' << format_g17(row.bound_plus) << ','
            << format_g17(row.bound_psi) << ','
            << format_g17(row.bound_total) << ','
            << format_g17(row.exact_d_phi) << ','
            << format_g17(row.exact_d_psi) << '\n';
    return out.str();
}

std::string csv_census(const ExhaustionCensus& census) {
    std::ostringstream out;
    out << "k,sublevel_components,shell_components,boundary_curves_list\n";
    for (const auto& lvl : census.levels) {
        out << lvl.k << ',' << lvl.sublevel_components << ','
            << lvl.shell_components << ',';
        for (std::size_t i = 0; i < lvl.boundary_curves.size(); ++i) {
            if (i) out << ';';
            out << lvl.boundary_curves[i];
        }
        out << '\n';
    }
    return out.str();
}

namespace {

const char* kSvgVersion = "<!-- cantorqc svg v1 -->\n";

std::string svg_open(double width, double height) {
    std::ostringstream out;
    out << kSvgVersion;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
        << format_g17(width) << ' ' << format_g17(height) << "\">\n";
    return out.str();
}

} // namespace

std::string svg_levels(const CantorLevels& levels) {
    double row_h = 20.0, bar_h = 12.0, margin = 10.0, width = 800.0;
    double span = width - 2 * margin;
    std::ostringstream out;
    out << svg_open(width, margin * 2 + row_h * (levels.depth() + 1));
    for (int k = 0; k <= levels.depth(); ++k) {
        double y = margin + row_h * k;
        for (const auto& iv : levels.intervals(k))
            out << "<rect x=\"" << format_g17(margin + span * iv.left)
                << "\" y=\"" << format_g17(y) << "\" width=\""
                << format_g17(span * iv.length) << "\" height=\""
                << format_g17(bar_h) << "\" fill=\"#205080\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_pants(const CantorLevels& levels,
                      const PantsDecomposition& pants) {
    double margin = 10.0, width = 800.0;
    double span = width - 2 * margin;
    double mid = width / 2.0;
    std::ostringstream out;
    out << svg_open(width, width);
    for (const auto& iv : levels.intervals(levels.depth()))
        out << "<rect x=\"" << format_g17(margin + span * iv.left)
            << "\" y=\"" << format_g17(mid - 1.0) << "\" width=\""
            << format_g17(span * iv.length)
            << "\" height=\"2\" fill=\"#000000\"/>\n";
    for (int k = 0; k <= pants.depth(); ++k)
        for (const auto& c : pants.level(k))
            out << "<circle cx=\"" << format_g17(margin + span * c.center)
                << "\" cy=\"" << format_g17(mid) << "\" r=\""
                << format_g17(span * c.radius)
                << "\" fill=\"none\" stroke=\"#c03030\" "
                   "stroke-width=\"0.5\"/>\n";
    out << "</svg>\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace cantorqc
