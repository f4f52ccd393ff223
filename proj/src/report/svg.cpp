// Copyright the geostab authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "geostab/report/svg.hpp"

#include "geostab/report/aggregate.hpp"
#include "geostab/report/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geostab {

namespace {

std::string num(double v) {
    return fmt_fixed(v, 1);
}

void svg_open(std::ostringstream& out, int width, int height) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
}

void svg_text(std::ostringstream& out, double x, double y, const std::string& text, int size,
              const char* anchor = "middle", const char* fill = "#222") {
    out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size
        << "\" text-anchor=\"" << anchor << "\" fill=\"" << fill << "\">" << text << "</text>\n";
}

void svg_line(std::ostringstream& out, double x1, double y1, double x2, double y2,
              const char* stroke, const char* dash = nullptr) {
    out << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
        << "\" y2=\"" << num(y2) << "\" stroke=\"" << stroke << "\"";
    if (dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << "/>\n";
}

void svg_rect(std::ostringstream& out, double x, double y, double w, double h, const char* fill,
              const char* stroke = nullptr) {
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
        << "\" height=\"" << num(h) << "\" fill=\"" << fill << "\"";
    if (stroke) out << " stroke=\"" << stroke << "\"";
    out << "/>\n";
}

struct Panel {
    double x0, y0, w, h; // plot area
    double map_y(double v) const { return y0 + h - v * h; } // v in [0,1]
};

void draw_box(std::ostringstream& out, const Panel& panel, double cx, double box_w,
              const std::vector<double>& values, const char* fill) {
    if (values.empty()) return;
    double q1 = quantile(values, 0.25);
    double med = quantile(values, 0.5);
    double q3 = quantile(values, 0.75);
    double iqr = q3 - q1;
    double lo_fence = q1 - 1.5 * iqr, hi_fence = q3 + 1.5 * iqr;
    double lo = q1, hi = q3;
    for (double v : values) {
        if (v >= lo_fence) lo = std::min(lo, v);
        if (v <= hi_fence) hi = std::max(hi, v);
    }
    svg_line(out, cx, panel.map_y(lo), cx, panel.map_y(q1), "#555");
    svg_line(out, cx, panel.map_y(q3), cx, panel.map_y(hi), "#555");
    svg_line(out, cx - box_w / 4, panel.map_y(lo), cx + box_w / 4, panel.map_y(lo), "#555");
    svg_line(out, cx - box_w / 4, panel.map_y(hi), cx + box_w / 4, panel.map_y(hi), "#555");
    svg_rect(out, cx - box_w / 2, panel.map_y(q3), box_w, panel.map_y(q1) - panel.map_y(q3), fill,
             "#333");
    svg_line(out, cx - box_w / 2, panel.map_y(med), cx + box_w / 2, panel.map_y(med), "#111");
    svg_text(out, cx, panel.map_y(hi) - 6, fmt_fixed(med, 3), 10);
}

void draw_axis(std::ostringstream& out, const Panel& panel) {
    svg_line(out, panel.x0, panel.y0, panel.x0, panel.y0 + panel.h, "#333");
    svg_line(out, panel.x0, panel.y0 + panel.h, panel.x0 + panel.w, panel.y0 + panel.h, "#333");
    for (int i = 0; i <= 5; ++i) {
        double v = i / 5.0;
        double y = panel.map_y(v);
        svg_line(out, panel.x0 - 3, y, panel.x0, y, "#333");
        svg_text(out, panel.x0 - 6, y + 3, fmt_fixed(v, 1), 9, "end");
    }
}

} // namespace

std::string render_similarity_box_svg(const std::string& title, const std::vector<BoxGroup>& groups) {
    const int n = static_cast<int>(groups.size());
    const double slot = 90.0;
    const double panel_w = std::max(200.0, n * slot);
    const int width = static_cast<int>(2 * panel_w + 140);
    const int height = 360;

    std::ostringstream out;
    svg_open(out, width, height);
    svg_text(out, width / 2.0, 22, title, 14);

    const char* panel_titles[2] = {"Jaccard", "RBO"};
    const char* fills[2] = {"#9ecae1", "#c7e9c0"};
    for (int p = 0; p < 2; ++p) {
        Panel panel{70.0 + p * (panel_w + 70.0), 50.0, panel_w, 240.0};
        draw_axis(out, panel);
        svg_text(out, panel.x0 + panel.w / 2, 44, panel_titles[p], 12);
        for (int i = 0; i < n; ++i) {
            double cx = panel.x0 + (i + 0.5) * (panel.w / n);
            const auto& values = p == 0 ? groups[i].jaccard : groups[i].rbo;
            draw_box(out, panel, cx, slot * 0.45, values, fills[p]);
            svg_text(out, cx, panel.y0 + panel.h + 16, groups[i].label, 10);
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_gini_heatmap_svg(const std::string& title, const GiniMatrix& matrix) {
    const double cell_w = 110, cell_h = 44, left = 170, top = 60;
    const int width = static_cast<int>(left + cell_w * matrix.engines.size() + 30);
    const int height = static_cast<int>(top + cell_h * matrix.campaigns.size() + 40);

    double lo = 1.0, hi = 0.0;
    for (const auto& [key, v] : matrix.cells) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (matrix.cells.empty() || hi <= lo) {
        lo = 0.0;
        hi = 1.0;
    }

    std::ostringstream out;
    svg_open(out, width, height);
    svg_text(out, width / 2.0, 24, title, 14);
    for (size_t e = 0; e < matrix.engines.size(); ++e)
        svg_text(out, left + (e + 0.5) * cell_w, top - 8, matrix.engines[e], 11);
    for (size_t c = 0; c < matrix.campaigns.size(); ++c) {
        svg_text(out, left - 8, top + (c + 0.5) * cell_h + 4, matrix.campaigns[c], 11, "end");
        for (size_t e = 0; e < matrix.engines.size(); ++e) {
            double x = left + e * cell_w, y = top + c * cell_h;
            auto cell = matrix.cells.find({matrix.campaigns[c], matrix.engines[e]});
            if (cell == matrix.cells.end()) {
                svg_rect(out, x, y, cell_w - 2, cell_h - 2, "#eeeeee", "#cccccc");
                continue;
            }
            double t = (cell->second - lo) / (hi - lo);
            int r = static_cast<int>(247 - t * (247 - 8));
            int g = static_cast<int>(251 - t * (251 - 48));
            int b = static_cast<int>(255 - t * (255 - 107));
            char color[8];
            std::snprintf(color, sizeof(color), "#%02x%02x%02x", r, g, b);
            svg_rect(out, x, y, cell_w - 2, cell_h - 2, color, "#999999");
            svg_text(out, x + cell_w / 2 - 1, y + cell_h / 2 + 4, fmt_fixed(cell->second, 3), 11,
                     "middle", t > 0.55 ? "#ffffff" : "#222222");
        }
    }
    svg_text(out, width / 2.0, height - 12,
             "mean " + fmt_fixed(matrix.global_mean, 3), 11);
    out << "</svg>\n";
    return out.str();
}

std::string render_curve_svg(const std::string& title, const ConvergenceCurve& curve) {
    const int width = 560, height = 360;
    const Panel panel{70, 50, 440, 250};

    double max_se = 0.0;
    int max_x = 1;
    for (const auto& pt : curve.points) {
        max_se = std::max(max_se, pt.mean_se);
        max_x = std::max(max_x, pt.x);
    }
    double y_top = std::max(0.05, std::ceil(max_se * 20.0) / 20.0);

    auto map_x = [&](double x) { return panel.x0 + (x - 1.0) / std::max(1.0, max_x - 1.0) * panel.w; };
    auto map_y = [&](double se) { return panel.y0 + panel.h - se / y_top * panel.h; };

    std::ostringstream out;
    svg_open(out, width, height);
    svg_text(out, width / 2.0, 22, title, 14);
    svg_line(out, panel.x0, panel.y0, panel.x0, panel.y0 + panel.h, "#333");
    svg_line(out, panel.x0, panel.y0 + panel.h, panel.x0 + panel.w, panel.y0 + panel.h, "#333");
    for (int i = 0; i <= 5; ++i) {
        double se = y_top * i / 5.0;
        svg_line(out, panel.x0 - 3, map_y(se), panel.x0, map_y(se), "#333");
        svg_text(out, panel.x0 - 6, map_y(se) + 3, fmt_fixed(se, 2), 9, "end");
    }
    for (const auto& pt : curve.points) {
        svg_line(out, map_x(pt.x), panel.y0 + panel.h, map_x(pt.x), panel.y0 + panel.h + 3, "#333");
        svg_text(out, map_x(pt.x), panel.y0 + panel.h + 16, std::to_string(pt.x), 9);
    }
    for (const auto& [thr, x_at] : curve.thresholds) {
        if (thr > y_top) continue;
        svg_line(out, panel.x0, map_y(thr), panel.x0 + panel.w, map_y(thr), "#cc3333", "5,4");
        svg_text(out, panel.x0 + panel.w + 4, map_y(thr) + 3,
                 "SE&lt;" + fmt_fixed(thr, 2) + " @ " + std::to_string(x_at), 9, "start", "#cc3333");
    }
    out << "<polyline fill=\"none\" stroke=\"#1f6fb5\" stroke-width=\"1.5\" points=\"";
    for (const auto& pt : curve.points) out << num(map_x(pt.x)) << ',' << num(map_y(pt.mean_se)) << ' ';
    out << "\"/>\n";
    for (const auto& pt : curve.points) {
        out << "<circle cx=\"" << num(map_x(pt.x)) << "\" cy=\"" << num(map_y(pt.mean_se))
            << "\" r=\"2.5\" fill=\"#1f6fb5\"/>\n";
    }
    svg_text(out, panel.x0 + panel.w / 2, height - 16,
             curve.mode.rfind("window", 0) == 0 ? "window length d (days)" : "runs n", 11);
    out << "</svg>\n";
    return out.str();
}

} // namespace geostab
