#include "bendlocus/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bendlocus {

namespace {

constexpr double kSize = 600;
constexpr double kMargin = 20;

const std::array<const char*, 6> kFunctionColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
const std::array<const char*, 3> kVertexColors = {"#000000", "#e377c2", "#17becf"};

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

struct Frame
{
    double m;
    double sx(double x) const { return kMargin + (x + m) / (2 * m) * (kSize - 2 * kMargin); }
    double sy(double y) const { return kSize - kMargin - (y + m) / (2 * m) * (kSize - 2 * kMargin); }
};

std::vector<std::array<double, 2>> polygon_vertices(const Polyhedron& p)
{
    std::vector<std::array<double, 2>> pts;
    const auto& h = p.inequalities;
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j)
        {
            const Rational det = h[i].b[0] * h[j].b[1] - h[i].b[1] * h[j].b[0];
            if (det == 0)
                continue;
            RatVector x = {(-h[i].a * h[j].b[1] + h[j].a * h[i].b[1]) / det,
                           (-h[j].a * h[i].b[0] + h[i].a * h[j].b[0]) / det};
            if (p.contains(x))
                pts.push_back({to_double(x[0]), to_double(x[1])});
        }
    if (pts.empty())
        return pts;
    double cx = 0, cy = 0;
    for (const auto& q : pts)
        cx += q[0], cy += q[1];
    cx /= pts.size();
    cy /= pts.size();
    std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        return std::atan2(a[1] - cy, a[0] - cx) < std::atan2(b[1] - cy, b[0] - cx);
    });
    return pts;
}

}   // namespace

std::string render_svg(const std::vector<ConvexPLFunction>& fs, const Rational& m, const SvgOverlay& overlay)
{
    for (const auto& f : fs)
        if (f.dim() != 2)
            throw UnsupportedDimension("render_svg needs d = 2, got d = " + std::to_string(f.dim()));
    if (fs.empty())
        throw std::invalid_argument("render_svg needs at least one function");
    const PolyComplex c = truncate_to_box(common_refinement(fs), m);
    const Frame fr{to_double(m)};

    std::vector<std::vector<std::size_t>> ends(c.cells.size());
    for (const auto& p : c.face_pairs)
        ends[p.cell].push_back(p.facet);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
    out << "<rect x=\"" << num(fr.sx(-fr.m)) << "\" y=\"" << num(fr.sy(fr.m)) << "\" width=\""
        << num(fr.sx(fr.m) - fr.sx(-fr.m)) << "\" height=\"" << num(fr.sy(-fr.m) - fr.sy(fr.m))
        << "\" fill=\"#ffffff\" stroke=\"#999999\"/>\n";

    if (overlay.polytope)
    {
        out << "<polygon fill=\"#fff3c4\" fill-opacity=\"0.5\" stroke=\"#b8860b\" points=\"";
        bool first = true;
        for (const auto& q : polygon_vertices(*overlay.polytope))
        {
            out << (first ? "" : " ") << num(fr.sx(q[0])) << ',' << num(fr.sy(q[1]));
            first = false;
        }
        out << "\"/>\n";
    }

    for (const auto& cell : c.cells)
    {
        if (cell.dim != 1 || ends[cell.id].size() != 2)
            continue;
        for (std::size_t k = 0; k < cell.label.argmax.size(); ++k)
        {
            if (cell.label.argmax[k].size() < 2)
                continue;
            const auto& a = *c.cells[ends[cell.id][0]].interior_point;
            const auto& b = *c.cells[ends[cell.id][1]].interior_point;
            out << "<line x1=\"" << num(fr.sx(to_double(a[0]))) << "\" y1=\"" << num(fr.sy(to_double(a[1])))
                << "\" x2=\"" << num(fr.sx(to_double(b[0]))) << "\" y2=\"" << num(fr.sy(to_double(b[1])))
                << "\" stroke=\"" << kFunctionColors[k % kFunctionColors.size()] << "\" stroke-width=\"2\"/>\n";
        }
    }

    for (const auto& cell : c.cells)
    {
        if (cell.dim != 0 || !cell.label.facets.empty())
            continue;
        const std::size_t s = cell.label.codimension_count();
        if (s < 2)
            continue;
        const bool crossing = std::count_if(cell.label.argmax.begin(), cell.label.argmax.end(),
                                            [](const ArgmaxLabel& l) { return l.size() >= 2; }) >= 2;
        const auto& x = *cell.interior_point;
        out << "<circle cx=\"" << num(fr.sx(to_double(x[0]))) << "\" cy=\"" << num(fr.sy(to_double(x[1])))
            << "\" r=\"4\" fill=\"" << kVertexColors[crossing ? 1 : s == 2 ? 0 : 2]
            << "\"/>\n";
    }

    for (const auto& cp : overlay.critical_points)
        out << "<circle cx=\"" << num(fr.sx(cp.location[0])) << "\" cy=\"" << num(fr.sy(cp.location[1]))
            << "\" r=\"6\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"2\"/>\n";

    out << "</svg>\n";
    return out.str();
}

void render_svg_file(const std::vector<ConvexPLFunction>& fs, const Rational& m, const std::string& path,
                     const SvgOverlay& overlay)
{
    const std::string svg = render_svg(fs, m, overlay);
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << svg;
}

}   // namespace bendlocus
