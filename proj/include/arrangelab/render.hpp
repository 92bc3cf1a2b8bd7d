#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "arrangelab/arrangement.hpp"
#include "arrangelab/fiber.hpp"

namespace arrangelab {

struct RenderSpec {
    double xmin = -5.0;
    double xmax = 5.0;
    double ymin = -5.0;
    double ymax = 5.0;
    int width = 600;
    int height = 600;
    std::optional<BallSpec> ball;
    std::vector<std::string> palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                     "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    double stroke_width = 2.0;

    void validate() const {
        if (!(xmin < xmax) || !(ymin < ymax)) throw PreconditionError("empty viewport");
        if (width <= 0 || height <= 0) throw PreconditionError("image size must be positive");
        if (palette.empty()) throw PreconditionError("palette must not be empty");
    }
};

struct RenderResult {
    std::string svg;
    std::vector<std::string> warnings;
};

namespace detail {

// Segment of the real line a x + b y + c = 0 inside the viewport.
inline std::optional<std::array<double, 4>> clip_real_line(double a, double b, double c, const RenderSpec& v) {
    std::vector<std::pair<double, double>> hits;
    auto add = [&](double x, double y) {
        const double tol = 1e-12 * (std::abs(v.xmax - v.xmin) + std::abs(v.ymax - v.ymin));
        if (x < v.xmin - tol || x > v.xmax + tol || y < v.ymin - tol || y > v.ymax + tol) return;
        for (const auto& [hx, hy] : hits)
            if (std::abs(hx - x) <= tol && std::abs(hy - y) <= tol) return;
        hits.emplace_back(x, y);
    };
    if (b != 0.0) {
        add(v.xmin, -(a * v.xmin + c) / b);
        add(v.xmax, -(a * v.xmax + c) / b);
    }
    if (a != 0.0) {
        add(-(b * v.ymin + c) / a, v.ymin);
        add(-(b * v.ymax + c) / a, v.ymax);
    }
    if (hits.size() < 2) return std::nullopt;
    return std::array<double, 4>{hits[0].first, hits[0].second, hits[1].first, hits[1].second};
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace detail

/// SVG 1.1 drawing of the real traces, one path per line colored by
/// parallel class. Lines with non-real normalized coefficients are drawn
/// from their real parts, dashed, and reported in the warnings.
inline RenderResult render_svg(const Arrangement& arr, const RenderSpec& spec) {
    spec.validate();
    RenderResult out;
    const double sx = spec.width / (spec.xmax - spec.xmin);
    const double sy = spec.height / (spec.ymax - spec.ymin);
    auto px = [&](double x) { return (x - spec.xmin) * sx; };
    auto py = [&](double y) { return (spec.ymax - y) * sy; };

    std::string body;
    const auto classes = parallel_classes(arr);
    for (std::size_t j = 0; j < classes.size(); ++j) {
        const std::string& color = spec.palette[j % spec.palette.size()];
        for (auto i : classes[j]) {
            const Line& l = arr[i];
            const bool real = std::abs(l.a().imag()) <= 1e-9 && std::abs(l.b().imag()) <= 1e-9 &&
                              std::abs(l.c().imag()) <= 1e-9;
            if (!real) out.warnings.push_back("line " + std::to_string(i) + " is not real; drawing its real part dashed");
            const auto seg = detail::clip_real_line(l.a().real(), l.b().real(), l.c().real(), spec);
            if (!seg) {
                out.warnings.push_back("line " + std::to_string(i) + " misses the viewport");
                continue;
            }
            body += "  <path class=\"class-" + std::to_string(j) + "\" d=\"M " + detail::fmt(px((*seg)[0])) + " " +
                    detail::fmt(py((*seg)[1])) + " L " + detail::fmt(px((*seg)[2])) + " " +
                    detail::fmt(py((*seg)[3])) + "\" stroke=\"" + color + "\" stroke-width=\"" +
                    detail::fmt(spec.stroke_width) + "\" fill=\"none\"" +
                    (real ? "" : " stroke-dasharray=\"6 4\"") + "/>\n";
        }
    }
    if (spec.ball) {
        const auto& b = *spec.ball;
        b.validate();
        if (std::abs(b.center.x.imag()) > 1e-12 || std::abs(b.center.y.imag()) > 1e-12)
            out.warnings.push_back("ball center is not real; drawing its real part");
        const double cx = px(b.center.x.real());
        const double cy = py(b.center.y.real());
        if (std::abs(sx - sy) <= 1e-12 * sx)
            body += "  <circle cx=\"" + detail::fmt(cx) + "\" cy=\"" + detail::fmt(cy) + "\" r=\"" +
                    detail::fmt(b.radius * sx) + "\" stroke=\"#0000ff\" fill=\"#0000ff\" fill-opacity=\"0.1\"/>\n";
        else
            body += "  <ellipse cx=\"" + detail::fmt(cx) + "\" cy=\"" + detail::fmt(cy) + "\" rx=\"" +
                    detail::fmt(b.radius * sx) + "\" ry=\"" + detail::fmt(b.radius * sy) +
                    "\" stroke=\"#0000ff\" fill=\"#0000ff\" fill-opacity=\"0.1\"/>\n";
    }
    out.svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
              std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
              std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n" + body + "</svg>\n";
    return out;
}

}  // namespace arrangelab
