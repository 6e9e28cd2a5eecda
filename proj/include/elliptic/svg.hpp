#pragma once

// Minimal line plot: frame, axis labels at the extremes, one polyline.
// NaN points split the curve into separate polylines.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace elliptic {

inline std::string svg_line_plot(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& title) {
    constexpr double W = 640, H = 400, L = 60, R = 20, T = 30, B = 40;
    double xmin = xs.empty() ? 0.0 : xs.front(), xmax = xs.empty() ? 1.0 : xs.back();
    double ymax = 0.0;
    for (double y : ys)
        if (std::isfinite(y)) ymax = std::max(ymax, y);
    if (ymax <= 0.0) ymax = 1.0;
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - y / ymax * (H - T - B); };

    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", W, H, W, H);
    out += buf;
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<path d=\"M%g %g V%g H%g\" stroke=\"black\" fill=\"none\"/>\n", L, T, H - B, W - R);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<g font-family=\"sans-serif\" font-size=\"12\">"
                  "<text x=\"%g\" y=\"%g\">%.4g</text><text x=\"%g\" y=\"%g\" text-anchor=\"end\">%.4g</text>"
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">%.4g</text><text x=\"%g\" y=\"%g\">%s</text></g>\n",
                  L, H - B + 16, xmin, W - R, H - B + 16, xmax, L - 6, T + 4, ymax, L, T - 10, title.c_str());
    out += buf;

    std::string pts;
    auto flush = [&] {
        if (!pts.empty()) out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        pts.clear();
    };
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (!std::isfinite(ys[i])) {
            flush();
            continue;
        }
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", pts.empty() ? "" : " ", px(xs[i]), py(std::min(ys[i], ymax)));
        pts += buf;
    }
    flush();
    out += "</svg>\n";
    return out;
}

}  // namespace elliptic
