#include "magscissor/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace magscissor {

namespace {

constexpr double kPxPerMm = 40.0;
constexpr double kMargin = 40.0;
constexpr double kArrowMm = 2.5;

struct Frame {
    double xmin, ymax;  // mm
    double px(double x_m) const { return kMargin + (x_m * 1e3 - xmin) * kPxPerMm; }
    double py(double y_m) const { return kMargin + (ymax - y_m * 1e3) * kPxPerMm; }
};

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string render_layout(const ScissorDesign& design, const ScissorGeometry& geometry,
                          const MagnetLayout& layout) {
    // Bounds in mm over blades, pivot and magnet separation circles.
    double xmin = design.pivot.x * 1e3, xmax = xmin;
    double ymin = design.pivot.y * 1e3, ymax = ymin;
    auto grow = [&](double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    for (const auto* b : {&geometry.a, &geometry.b}) {
        for (const auto& v : b->region.vertices()) grow(v.x * 1e3, v.y * 1e3);
    }
    const double r_mm = layout.min_separation * 1e3 / 2.0;
    for (const auto& m : design.magnets) {
        const auto& p = m.dipole.position;
        grow(p.x * 1e3 - r_mm, p.y * 1e3 - r_mm);
        grow(p.x * 1e3 + r_mm, p.y * 1e3 + r_mm);
    }
    const Frame f{xmin, ymax};
    const double width = 2 * kMargin + (xmax - xmin) * kPxPerMm;
    const double height = 2 * kMargin + (ymax - ymin) * kPxPerMm;

    std::string s;
    s += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.3f}\" height=\"{:.3f}\" viewBox=\"0 0 {:.3f} {:.3f}\">\n",
        width, height, width, height);
    s += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
         "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/></marker></defs>\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto* b : {&geometry.a, &geometry.b}) {
        std::string pts;
        for (const auto& v : b->region.vertices()) {
            if (!pts.empty()) pts += ' ';
            pts += fmt::format("{:.4f},{:.4f}", f.px(v.x), f.py(v.y));
        }
        s += fmt::format(
            "<polygon class=\"blade\" data-blade=\"{}\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.25\" "
            "stroke=\"#555\"/>\n",
            to_string(b->id), pts, b->id == BladeId::A ? "#9ecae1" : "#fdae6b");
    }
    s += fmt::format("<circle class=\"pivot\" cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"5\" fill=\"none\" stroke=\"black\"/>\n",
                     f.px(design.pivot.x), f.py(design.pivot.y));
    for (std::size_t i = 0; i < design.magnets.size(); ++i) {
        const auto& m = design.magnets[i];
        const auto& p = m.dipole.position;
        s += fmt::format(
            "<circle class=\"separation\" cx=\"{:.4f}\" cy=\"{:.4f}\" r=\"{:.4f}\" fill=\"none\" stroke=\"#999\" "
            "stroke-dasharray=\"4 3\"/>\n",
            f.px(p.x), f.py(p.y), r_mm * kPxPerMm);
    }
    for (std::size_t i = 0; i < design.magnets.size(); ++i) {
        const auto& m = design.magnets[i];
        const auto& p = m.dipole.position;
        const double theta = wrap_angle(m.angle);
        const double x2 = f.px(p.x) + kArrowMm * kPxPerMm * std::cos(theta);
        const double y2 = f.py(p.y) - kArrowMm * kPxPerMm * std::sin(theta);
        s += fmt::format(
            "<line class=\"moment\" data-magnet=\"{}\" x1=\"{:.4f}\" y1=\"{:.4f}\" x2=\"{:.4f}\" y2=\"{:.4f}\" "
            "stroke=\"black\" stroke-width=\"2\" marker-end=\"url(#arrow)\"/>\n",
            i, f.px(p.x), f.py(p.y), x2, y2);
        s += fmt::format("<circle class=\"magnet\" data-magnet=\"{}\" data-blade=\"{}\" cx=\"{:.4f}\" cy=\"{:.4f}\" "
                         "r=\"4\" fill=\"red\"/>\n",
                         i, to_string(m.blade), f.px(p.x), f.py(p.y));
    }
    s += "</svg>\n";
    return s;
}

std::string render_convergence(std::span<const SeedHistory> runs) {
    constexpr double W = 720.0, H = 440.0, L = 90.0, R = 20.0, T = 20.0, B = 50.0;
    std::size_t gmax = 1;
    double fmin = std::numeric_limits<double>::infinity();
    double fmax = -std::numeric_limits<double>::infinity();
    for (const auto& run : runs) {
        for (const auto& g : run.history) {
            gmax = std::max(gmax, g.generation);
            for (double v : {g.max_fitness, g.best_so_far}) {
                fmin = std::min(fmin, v);
                fmax = std::max(fmax, v);
            }
        }
    }
    if (!std::isfinite(fmin)) {
        fmin = 0.0;
        fmax = 1.0;
    }
    if (fmax - fmin <= 0.0) {
        fmin -= 0.5e-3;
        fmax += 0.5e-3;
    }
    auto x = [&](double gen) { return L + (gen / static_cast<double>(gmax)) * (W - L - R); };
    auto y = [&](double v) { return T + (fmax - v) / (fmax - fmin) * (H - T - B); };

    std::string s;
    s += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
                     W, H, W, H);
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += fmt::format("<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, H - B,
                     W - R, H - B);
    s += fmt::format("<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", L, T, L,
                     H - B);
    for (int k = 0; k <= 4; ++k) {
        const double v = fmin + (fmax - fmin) * k / 4.0;
        s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"end\">{:.3e}</text>\n",
                         L - 6, y(v) + 4, v);
        const double gen = static_cast<double>(gmax) * k / 4.0;
        s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"middle\">{:.0f}</text>\n",
                         x(gen), H - B + 16, gen);
    }
    s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"middle\">generation</text>\n",
                     (L + W - R) / 2, H - 10);
    s += fmt::format(
        "<text x=\"14\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 {:.2f})\">"
        "fitness (N*m)</text>\n",
        (T + H - B) / 2, (T + H - B) / 2);
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const char* color = kPalette[r % std::size(kPalette)];
        std::string best, maxf;
        for (const auto& g : runs[r].history) {
            best += fmt::format("{:.3f},{:.3f} ", x(static_cast<double>(g.generation)), y(g.best_so_far));
            maxf += fmt::format("{:.3f},{:.3f} ", x(static_cast<double>(g.generation)), y(g.max_fitness));
        }
        if (!best.empty()) best.pop_back();
        if (!maxf.empty()) maxf.pop_back();
        s += fmt::format("<polyline class=\"max-fitness\" data-seed=\"{}\" points=\"{}\" fill=\"none\" stroke=\"{}\" "
                         "stroke-opacity=\"0.4\"/>\n",
                         runs[r].seed, maxf, color);
        s += fmt::format("<polyline class=\"best-so-far\" data-seed=\"{}\" points=\"{}\" fill=\"none\" stroke=\"{}\" "
                         "stroke-width=\"2\"/>\n",
                         runs[r].seed, best, color);
    }
    s += "</svg>\n";
    return s;
}

}  // namespace magscissor
