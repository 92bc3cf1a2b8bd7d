#pragma once

#include <random>
#include <vector>

#include "arrangelab/arrangelab.hpp"

namespace testsupport {

using namespace arrangelab;

inline cplx gaussian(std::mt19937_64& rng, bool real) {
    std::normal_distribution<double> g;
    return real ? cplx(g(rng), 0.0) : cplx(g(rng), g(rng));
}

/// Random partition of d into at least two positive parts.
inline std::vector<int> random_partition(std::mt19937_64& rng, int d) {
    std::uniform_int_distribution<int> part(1, std::max(1, d - 1));
    for (;;) {
        std::vector<int> sizes;
        int left = d;
        while (left > 0) {
            const int p = std::min(left, part(rng));
            sizes.push_back(p);
            left -= p;
        }
        if (sizes.size() >= 2) return sizes;
    }
}

/// Directions at least 0.1 apart and parallel lines at least 0.05 apart.
inline bool well_separated(const std::vector<Line>& lines) {
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const double gap = direction_gap(lines[i].a(), lines[i].b(), lines[j].a(), lines[j].b());
            if (gap == 0.0 && std::abs(lines[i].c() - lines[j].c()) < 0.05 * lines[i].linear_norm()) return false;
            if (gap > 0.0 && gap < 0.1) return false;
        }
    return true;
}

/// Generic arrangement with the given class sizes; lines of one class
/// share their (a, b). Resampled until generic and, if `separated`, well
/// separated.
inline Arrangement random_generic(std::mt19937_64& rng, const std::vector<int>& sizes, bool real = false,
                                  bool separated = true) {
    for (;;) {
        std::vector<Line> lines;
        for (int p : sizes) {
            const cplx a = gaussian(rng, real);
            const cplx b = gaussian(rng, real);
            for (int k = 0; k < p; ++k) lines.emplace_back(a, b, gaussian(rng, real));
        }
        if (separated && !well_separated(lines)) continue;
        try {
            Arrangement arr(std::move(lines));
            if (is_generic(arr, 1e-6).is_generic) return arr;
        } catch (const Error&) {
        }
    }
}

/// Critical points off the arrangement found by damped Newton on grad f
/// from many random starts. With G = sum_i n_i / l_i and
/// H = -sum_i n_i n_i^T / l_i^2 the Newton step solves (G G^T + H) s = G.
inline std::vector<Point> newton_oracle(const Arrangement& arr, int starts, std::uint64_t seed,
                                        double dedup_tol = 1e-7) {
    std::mt19937_64 rng(seed);
    double scale = 1.0;
    for (const auto& ip : intersections(arr)) scale = std::max(scale, norm(ip.location));
    std::vector<Point> found;
    for (int s = 0; s < starts; ++s) {
        Point p{scale * gaussian(rng, false), scale * gaussian(rng, false)};
        bool converged = false;
        for (int it = 0; it < 200; ++it) {
            cplx gx = 0.0, gy = 0.0, hxx = 0.0, hxy = 0.0, hyy = 0.0;
            bool on_line = false;
            for (const auto& l : arr) {
                const cplx v = l(p);
                if (std::abs(v) < 1e-300) {
                    on_line = true;
                    break;
                }
                gx += l.a() / v;
                gy += l.b() / v;
                hxx -= l.a() * l.a() / (v * v);
                hxy -= l.a() * l.b() / (v * v);
                hyy -= l.b() * l.b() / (v * v);
            }
            if (on_line) break;
            hxx += gx * gx;
            hxy += gx * gy;
            hyy += gy * gy;
            const cplx det = hxx * hyy - hxy * hxy;
            if (std::abs(det) == 0.0) break;
            cplx dx = (hyy * gx - hxy * gy) / det;
            cplx dy = (hxx * gy - hxy * gx) / det;
            const double step = std::hypot(std::abs(dx), std::abs(dy));
            const double limit = 0.5 * scale;
            if (step > limit) {
                dx *= limit / step;
                dy *= limit / step;
            }
            p.x -= dx;
            p.y -= dy;
            if (step <= 1e-14 * std::max(1.0, norm(p))) {
                converged = true;
                break;
            }
        }
        if (!converged || !is_finite(p.x) || !is_finite(p.y)) continue;
        if (arrangement_distance(arr, p) <= 1e-7) continue;
        bool dup = false;
        for (const auto& q : found)
            if (distance(p, q) < dedup_tol * std::max(1.0, norm(p))) dup = true;
        if (!dup) found.push_back(p);
    }
    return found;
}

/// Largest nearest-neighbor distance from a to b; infinity on size mismatch.
inline double matched_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return INFINITY;
    double worst = 0.0;
    for (const auto& p : a) {
        double best = INFINITY;
        for (const auto& q : b) best = std::min(best, distance(p, q));
        worst = std::max(worst, best);
    }
    for (const auto& q : b) {
        double best = INFINITY;
        for (const auto& p : a) best = std::min(best, distance(p, q));
        worst = std::max(worst, best);
    }
    return worst;
}

/// Ball centered at the origin containing every intersection point with room to spare.
inline BallSpec enclosing_ball(const Arrangement& arr) {
    double r = 1.0;
    for (const auto& ip : intersections(arr)) r = std::max(r, norm(ip.location));
    return {{}, 2.0 * r + 1.0};
}

}  // namespace testsupport
