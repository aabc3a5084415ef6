#include "so3l1/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace so3l1 {

namespace {

std::string num(double v, const char* spec = "%.2f")
{
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

struct Series {
    std::string label;
    std::string color;
    const std::vector<double>* y = nullptr;
};

constexpr const char* kColors[] = {"#1f6fb4", "#d1495b", "#3a7d44", "#8d6b94", "#c77f2e",
                                   "#4cb5ae"};

// Minimal line chart: fixed canvas, one x-vector, up to six series.
std::string line_chart(const std::string& title, const std::vector<double>& x,
                       const std::vector<Series>& series, const std::string& x_label,
                       const std::string& y_label)
{
    constexpr double W = 640, H = 400, L = 62, R = 16, T = 34, B = 44;
    double ymin = 0.0, ymax = 1e-12, xmin = x.front(), xmax = x.back();
    for (const auto& s : series)
        for (double v : *s.y)
            if (std::isfinite(v)) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
    if (xmax <= xmin)
        xmax = xmin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto px = [&](double v) { return L + (v - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double v) { return H - B - (v - ymin) / (ymax - ymin) * (H - T - B); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"13\">" << title << "</text>\n";
    // axes
    svg << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << x_label
        << "</text>\n";
    svg << "<text x=\"14\" y=\"" << (T + H - B) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" transform=\""
        << "rotate(-90 14 " << (T + H - B) / 2 << ")\">" << y_label << "</text>\n";
    // tick labels
    svg << "<text x=\"" << L << "\" y=\"" << H - B + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
        << num(xmin, "%.3g") << "</text>\n";
    svg << "<text x=\"" << W - R << "\" y=\"" << H - B + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
        << num(xmax, "%.3g") << "</text>\n";
    svg << "<text x=\"" << L - 6 << "\" y=\"" << H - B + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << num(ymin, "%.3g") << "</text>\n";
    svg << "<text x=\"" << L - 6 << "\" y=\"" << T + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << num(ymax, "%.3g") << "</text>\n";

    const std::size_t n = x.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    int li = 0;
    for (const auto& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t k = 0; k < n; k += stride) {
            const double v = (*s.y)[k];
            if (!std::isfinite(v))
                continue;
            svg << num(px(x[k])) << "," << num(py(v)) << " ";
        }
        if ((n - 1) % stride != 0 && std::isfinite((*s.y)[n - 1]))
            svg << num(px(x[n - 1])) << "," << num(py((*s.y)[n - 1]));
        svg << "\"/>\n";
        // legend
        const double lx = W - R - 150, ly = T + 14 + 16 * li;
        svg << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 22 << "\" y2=\""
            << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"1.6\"/>\n";
        svg << "<text x=\"" << lx + 28 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        ++li;
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open " + path + " for writing");
    os << content;
    if (!os)
        throw IoError("write failed for " + path);
}

std::string heat_color(double v)
{
    // 5-stop blue -> yellow ramp on v in [0, 1].
    struct Stop {
        double p;
        int r, g, b;
    };
    static constexpr Stop stops[] = {{0.0, 38, 70, 140},
                                     {0.25, 33, 113, 181},
                                     {0.5, 65, 174, 118},
                                     {0.75, 254, 196, 79},
                                     {1.0, 255, 237, 160}};
    v = std::min(1.0, std::max(0.0, v));
    for (int i = 0; i < 4; ++i) {
        if (v <= stops[i + 1].p) {
            const double f = (v - stops[i].p) / (stops[i + 1].p - stops[i].p);
            char buf[10];
            std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                          static_cast<int>(std::lround(stops[i].r + f * (stops[i + 1].r - stops[i].r))),
                          static_cast<int>(std::lround(stops[i].g + f * (stops[i + 1].g - stops[i].g))),
                          static_cast<int>(std::lround(stops[i].b + f * (stops[i + 1].b - stops[i].b))));
            return buf;
        }
    }
    return "#ffffff";
}

}  // namespace

std::vector<std::string> emit_plots(const SimLog& log, const std::string& prefix)
{
    if (log.size() == 0)
        throw EmptyWindow("cannot plot an empty log");

    std::vector<std::string> written;

    {
        const std::string path = prefix + "_config_errors.svg";
        write_file(path, line_chart("configuration errors", log.t,
                                    {{"psi", kColors[0], &log.psi},
                                     {"psi_hat", kColors[1], &log.psi_hat},
                                     {"psi_tilde", kColors[2], &log.psi_tilde}},
                                    "t [s]", "psi"));
        written.push_back(path);
    }
    {
        const std::string path = prefix + "_omega_errors.svg";
        write_file(path, line_chart("angular velocity error norms", log.t,
                                    {{"|e_omega|", kColors[0], &log.e_omega},
                                     {"|e_omega_hat|", kColors[1], &log.e_omega_hat},
                                     {"|e_omega_tilde|", kColors[2], &log.e_omega_tilde}},
                                    "t [s]", "rad/s"));
        written.push_back(path);
    }
    {
        // Per-axis uncertainty traces stacked into one tall SVG.
        std::ostringstream svg;
        std::vector<std::string> panels;
        for (int axis = 0; axis < 3; ++axis) {
            std::vector<double> tr(log.size()), est(log.size()), fl(log.size());
            for (std::size_t k = 0; k < log.size(); ++k) {
                tr[k] = log.theta[k][axis];
                est[k] = log.theta_hat[k][axis];
                fl[k] = log.theta_filt[k][axis];
            }
            const char axis_name[] = {'x', 'y', 'z'};
            panels.push_back(line_chart(std::string("uncertainty, ") + axis_name[axis] + " axis",
                                        log.t,
                                        {{"theta", kColors[0], &tr},
                                         {"theta_hat", kColors[1], &est},
                                         {"theta_filt", kColors[2], &fl}},
                                        "t [s]", "N m"));
        }
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"1200\">\n";
        for (int i = 0; i < 3; ++i)
            svg << "<g transform=\"translate(0 " << 400 * i << ")\">\n" << panels[static_cast<std::size_t>(i)]
                << "</g>\n";
        svg << "</svg>\n";
        const std::string path = prefix + "_theta.svg";
        write_file(path, svg.str());
        written.push_back(path);
    }
    {
        std::vector<double> xs(log.size()), ys(log.size()), xd(log.size()), yd(log.size());
        std::vector<double> tx(log.size());
        for (std::size_t k = 0; k < log.size(); ++k) {
            xs[k] = log.x[k].x;
            ys[k] = log.x[k].y;
            xd[k] = log.x_d[k].x;
            yd[k] = log.x_d[k].y;
        }
        // Reuse the line chart with x as the abscissa.
        const std::string path = prefix + "_trajectory_xy.svg";
        // Build against a common x-vector: plot y(t) parametrically is not
        // what line_chart does, so draw it directly here.
        double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
        for (std::size_t k = 0; k < log.size(); ++k) {
            for (double v : {xs[k], xd[k]}) {
                if (std::isfinite(v)) {
                    xmin = std::min(xmin, v);
                    xmax = std::max(xmax, v);
                }
            }
            for (double v : {ys[k], yd[k]}) {
                if (std::isfinite(v)) {
                    ymin = std::min(ymin, v);
                    ymax = std::max(ymax, v);
                }
            }
        }
        if (xmax <= xmin)
            xmax = xmin + 1.0;
        if (ymax <= ymin)
            ymax = ymin + 1.0;
        constexpr double W = 480, H = 480, M = 50;
        auto px = [&](double v) { return M + (v - xmin) / (xmax - xmin) * (W - 2 * M); };
        auto py = [&](double v) { return H - M - (v - ymin) / (ymax - ymin) * (H - 2 * M); };
        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
            << "\">\n<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
        svg << "<text x=\"" << W / 2
            << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << "planar trajectory (x vs y)</text>\n";
        const std::size_t stride = std::max<std::size_t>(1, log.size() / 2000);
        auto path_of = [&](const std::vector<double>& ax, const std::vector<double>& ay,
                           const char* color, const char* dash) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.3\"";
            if (dash[0] != '\0')
                svg << " stroke-dasharray=\"" << dash << "\"";
            svg << " points=\"";
            for (std::size_t k = 0; k < log.size(); k += stride)
                if (std::isfinite(ax[k]) && std::isfinite(ay[k]))
                    svg << num(px(ax[k])) << "," << num(py(ay[k])) << " ";
            svg << "\"/>\n";
        };
        path_of(xd, yd, kColors[2], "5,4");
        path_of(xs, ys, kColors[0], "");
        svg << "<text x=\"" << M << "\" y=\"" << H - 8
            << "\" font-family=\"sans-serif\" font-size=\"10\">x: [" << num(xmin, "%.3g") << ", "
            << num(xmax, "%.3g") << "] m, y: [" << num(ymin, "%.3g") << ", " << num(ymax, "%.3g")
            << "] m; dashed = desired</text>\n";
        svg << "</svg>\n";
        write_file(path, svg.str());
        written.push_back(path);
    }
    return written;
}

std::vector<std::string> emit_sweep_plots(const std::vector<SweepCell>& cells,
                                          const std::string& prefix)
{
    if (cells.empty())
        throw EmptyWindow("cannot plot an empty sweep grid");

    std::set<double> mas;
    std::set<double> phis;
    double psi_cap = 1e-9;
    for (const auto& c : cells) {
        mas.insert(c.m_a);
        phis.insert(c.phi0_deg);
        if (!c.failed && std::isfinite(c.psi_end))
            psi_cap = std::max(psi_cap, c.psi_end);
    }
    const std::vector<double> angle_list(phis.begin(), phis.end());
    const std::size_t n = angle_list.size();
    auto angle_index = [&](double a) {
        return static_cast<std::size_t>(
            std::lower_bound(angle_list.begin(), angle_list.end(), a) - angle_list.begin());
    };

    std::vector<std::string> written;
    for (double ma : mas) {
        constexpr double cell_px = 9.0, margin = 56.0, gap = 54.0, top = 46.0, bottom = 40.0;
        const double panel = cell_px * static_cast<double>(n);
        const double W = margin + panel + gap + panel + 20.0;
        const double H = top + panel + bottom;

        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\""
            << num(H) << "\">\n<rect width=\"" << num(W) << "\" height=\"" << num(H)
            << "\" fill=\"white\"/>\n";
        svg << "<text x=\"" << num(W / 2)
            << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << "psi after the run, m_a = " << num(ma, "%.3g")
            << " kg (grey = failed)</text>\n";

        const ControllerKind kinds[2] = {ControllerKind::geo_l1, ControllerKind::euler_l1};
        for (int pnl = 0; pnl < 2; ++pnl) {
            const double ox = margin + (panel + gap) * pnl;
            svg << "<text x=\"" << num(ox + panel / 2) << "\" y=\"" << num(top - 8)
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
                << to_string(kinds[pnl]) << "</text>\n";
            for (const auto& c : cells) {
                if (c.controller != kinds[pnl] || c.m_a != ma)
                    continue;
                const double cx = ox + cell_px * static_cast<double>(angle_index(c.phi0_deg));
                const double cy =
                    top + panel - cell_px * (static_cast<double>(angle_index(c.phi_hat0_deg)) + 1);
                const std::string color = (c.failed || !std::isfinite(c.psi_end))
                    ? "#9e9e9e"
                    : heat_color(c.psi_end / psi_cap);
                svg << "<rect x=\"" << num(cx) << "\" y=\"" << num(cy) << "\" width=\""
                    << num(cell_px) << "\" height=\"" << num(cell_px) << "\" fill=\"" << color
                    << "\"/>\n";
            }
            svg << "<text x=\"" << num(ox + panel / 2) << "\" y=\"" << num(H - 12)
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
                << "phi(0) [deg] -></text>\n";
        }
        svg << "<text x=\"16\" y=\"" << num(top + panel / 2)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\" "
            << "transform=\"rotate(-90 16 " << num(top + panel / 2)
            << ")\">phi_hat(0) [deg] -></text>\n";
        svg << "</svg>\n";

        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "%g", ma);
        const std::string path = prefix + "_sweep_ma" + suffix + ".svg";
        write_file(path, svg.str());
        written.push_back(path);
    }
    return written;
}

}  // namespace so3l1
