#pragma once

// Plain SVG line plot of W_m over [-1, 1].

#include <wortho/error.hpp>
#include <wortho/recurrence.hpp>
#include <wortho/zeros.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace wortho {

struct PlotOptions {
    int samples = 800;
    int width = 800;
    int height = 500;
    bool mark_zeros = true;
    std::string title;
};

namespace detail {
inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}
} // namespace detail

/// Draws W_m for every m in `orders`, each normalized by its maximum on the sample grid.
inline void write_svg(std::ostream& os, const RecurrenceTable& t, const std::vector<int>& orders, const PlotOptions& opt = {}) {
    require(!orders.empty(), "write_svg: no orders to plot");
    require(opt.samples >= 2, "write_svg: need at least 2 samples");
    for (int m : orders) require(m >= 0 && m <= t.N, "write_svg: order outside the table");

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    const double left = 60, right = 20, top = 40, bottom = 50;
    const double pw = opt.width - left - right, ph = opt.height - top - bottom;
    auto px = [&](double x) { return left + (x + 1.0) * 0.5 * pw; };
    auto py = [&](double y) { return top + (1.0 - y) * 0.5 * ph; };
    using detail::svg_num;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opt.title.empty()) os << "<text x=\"" << opt.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << opt.title << "</text>\n";

    os << "<g stroke=\"#999\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << svg_num(px(-1)) << "\" y1=\"" << svg_num(py(0)) << "\" x2=\"" << svg_num(px(1)) << "\" y2=\"" << svg_num(py(0)) << "\"/>\n";
    os << "<line x1=\"" << svg_num(px(0)) << "\" y1=\"" << svg_num(py(-1)) << "\" x2=\"" << svg_num(px(0)) << "\" y2=\"" << svg_num(py(1)) << "\"/>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph << "\" fill=\"none\"/>\n";
    os << "</g>\n";
    for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0})
        os << "<text x=\"" << svg_num(px(x)) << "\" y=\"" << svg_num(top + ph + 18) << "\" text-anchor=\"middle\">" << x << "</text>\n";
    os << "<text x=\"" << svg_num(left + pw / 2) << "\" y=\"" << opt.height - 8 << "\" text-anchor=\"middle\">x</text>\n";
    os << "<text x=\"" << svg_num(left - 8) << "\" y=\"" << svg_num(py(1) + 4) << "\" text-anchor=\"end\">1</text>\n";
    os << "<text x=\"" << svg_num(left - 8) << "\" y=\"" << svg_num(py(-1) + 4) << "\" text-anchor=\"end\">-1</text>\n";

    for (std::size_t i = 0; i < orders.size(); ++i) {
        const int m = orders[i];
        const char* color = colors[i % std::size(colors)];
        std::vector<double> xs(static_cast<std::size_t>(opt.samples)), ys(xs.size());
        double peak = 0.0;
        for (int k = 0; k < opt.samples; ++k) {
            const double x = -1.0 + 2.0 * k / (opt.samples - 1);
            xs[static_cast<std::size_t>(k)] = x;
            ys[static_cast<std::size_t>(k)] = t.eval(m, x);
            peak = std::max(peak, std::abs(ys[static_cast<std::size_t>(k)]));
        }
        if (peak == 0.0) peak = 1.0;
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < xs.size(); ++k) os << (k ? " " : "") << svg_num(px(xs[k])) << ',' << svg_num(py(ys[k] / peak));
        os << "\"/>\n";
        if (opt.mark_zeros && m >= 1) {
            for (double x : find_zeros(t, m).x)
                os << "<circle cx=\"" << svg_num(px(x)) << "\" cy=\"" << svg_num(py(0)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        os << "<text x=\"" << svg_num(left + pw - 8) << "\" y=\"" << svg_num(top + 16 + 16 * static_cast<double>(i)) << "\" text-anchor=\"end\" fill=\"" << color
           << "\">W_" << m << " / " << peak << "</text>\n";
    }
    os << "</svg>\n";
}

} // namespace wortho
