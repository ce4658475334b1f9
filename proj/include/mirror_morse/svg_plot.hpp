#pragma once

// SVG rendering of a composable triple L0 -> L1 -> L2 on a space of total
// dimension <= 2: the polytope, the intersection loci of the three hom
// spaces and the straight edges of every m_2 gradient tree.

#include "mirror_morse/morse_category.hpp"

#include <array>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirror_morse {

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// Plot coordinates: x to the right, y up; the SVG y axis points down.
struct Canvas {
    const ProductPolytope& P;
    std::ostringstream body;

    std::array<double, 2> place(const std::vector<std::optional<RationalPoint>>& pieces, std::array<bool, 2>& whole) const {
        std::array<double, 2> xy{0.0, 1.0};
        whole = {false, false};
        std::size_t axis = 0;
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            for (int j = 0; j < P.dim(k); ++j, ++axis) {
                if (pieces[k]) xy[axis] = to_double((*pieces[k])[static_cast<std::size_t>(j)]);
                else whole[axis] = true;
            }
        }
        return xy;
    }

    static double sx(double x) { return x; }
    double sy(double y) const { return P.total_dim() == 1 ? 1.0 : 2.0 - y; }

    void line(double x1, double y1, double x2, double y2, const std::string& style) {
        body << "  <line x1=\"" << fmt(sx(x1)) << "\" y1=\"" << fmt(sy(y1)) << "\" x2=\"" << fmt(sx(x2)) << "\" y2=\"" << fmt(sy(y2))
             << "\" " << style << "/>\n";
    }
    void dot(double x, double y, const std::string& color) {
        body << "  <circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y)) << "\" r=\"0.03\" fill=\"" << color << "\"/>\n";
    }
    void text(double x, double y, const std::string& s, const std::string& color, double dy = -0.05) {
        body << "  <text x=\"" << fmt(sx(x) + 0.03) << "\" y=\"" << fmt(sy(y) + dy) << "\" font-size=\"0.07\" fill=\"" << color << "\">" << s
             << "</text>\n";
    }
};

inline std::string index_label(const MultiIndex& I) {
    std::string s = "(";
    for (std::size_t j = 0; j < I.size(); ++j) s += (j ? "," : "") + std::to_string(I[j]);
    return s + ")";
}

}  // namespace detail

inline std::string plot_triple_svg(const ProductPolytope& P, const std::array<LineObject, 3>& objects, unsigned precision_bits = 24) {
    if (P.total_dim() > 2) throw std::invalid_argument("plot: total dimension " + std::to_string(P.total_dim()) + " > 2 is not supported");
    detail::Canvas c{P, {}};
    const std::string outline = "stroke=\"#333\" stroke-width=\"0.012\" fill=\"none\"";
    if (P.total_dim() == 1) {
        c.line(0, 0, 2, 0, outline);
    } else if (P.factor_count() == 1) {
        c.body << "  <polygon points=\"0,2 2,2 0,0\" " << outline << "/>\n";
    } else {
        c.body << "  <polygon points=\"0,2 2,2 2,0 0,0\" " << outline << "/>\n";
    }

    const std::array<std::string, 3> colors{"#1f77b4", "#2ca02c", "#d62728"};
    const std::array<std::pair<int, int>, 3> pairs{std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}};
    std::array<HomSpace, 3> homs{hom_space(P, objects[0], objects[1]), hom_space(P, objects[1], objects[2]),
                                 hom_space(P, objects[0], objects[2])};
    auto draw_locus = [&](const HomGenerator& g, const std::string& color, const std::string& tag) {
        std::vector<std::optional<RationalPoint>> pieces;
        for (const auto& p : g.pieces) pieces.push_back(p.point);
        std::array<bool, 2> whole{};
        const auto xy = c.place(pieces, whole);
        const bool wx = whole[0], wy = P.total_dim() == 2 && whole[1];
        if (wx && wy) return;  // the whole polytope
        if (wx) c.line(0, xy[1], 2, xy[1], "stroke=\"" + color + "\" stroke-width=\"0.02\" stroke-opacity=\"0.4\"");
        else if (wy) c.line(xy[0], 0, xy[0], 2, "stroke=\"" + color + "\" stroke-width=\"0.02\" stroke-opacity=\"0.4\"");
        else c.dot(xy[0], xy[1], color);
        c.text(wx ? 1.0 : xy[0], wy ? 1.0 : xy[1], tag + detail::index_label(g.index()), color);
    };
    for (std::size_t h = 0; h < 3; ++h)
        for (const auto& g : homs[h].generators())
            draw_locus(g, colors[h], "V" + std::to_string(pairs[h].first) + std::to_string(pairs[h].second));

    for (const auto& u : homs[0].generators())
        for (const auto& v : homs[1].generators()) {
            auto t = gradient_tree(u, v);
            const auto* tree = std::get_if<GradientTree2>(&t);
            if (!tree) continue;
            std::vector<std::optional<RationalPoint>> lin, rin, out;
            for (const auto& ft : tree->factors) {
                lin.push_back(ft.left_input ? ft.left_input : ft.output);
                rin.push_back(ft.right_input ? ft.right_input : ft.output);
                out.push_back(ft.output);
            }
            std::array<bool, 2> w{};
            const auto a = c.place(lin, w);
            const auto b = c.place(rin, w);
            const auto o = c.place(out, w);
            const std::string edge = "stroke=\"#555\" stroke-width=\"0.008\" stroke-dasharray=\"0.03,0.02\"";
            c.line(a[0], a[1], o[0], o[1], edge);
            c.line(b[0], b[1], o[0], o[1], edge);
            const PosExact weight = (-tree->area).exp();
            if (!weight.is_one()) c.text(o[0], o[1], "w=" + weight.approx(precision_bits), "#555", 0.09);
        }

    std::ostringstream svg;
    const double height = P.total_dim() == 1 ? 0.8 : 2.6;
    const double top = P.total_dim() == 1 ? 0.6 : -0.3;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.3 " << detail::fmt(top) << " 2.6 " << detail::fmt(height)
        << "\" width=\"600\" height=\"" << (P.total_dim() == 1 ? 185 : 600) << "\">\n"
        << "  <title>" << P.descriptor() << " : " << objects[0].to_string() << " -> " << objects[1].to_string() << " -> "
        << objects[2].to_string() << "</title>\n"
        << c.body.str() << "</svg>\n";
    return svg.str();
}

}  // namespace mirror_morse
