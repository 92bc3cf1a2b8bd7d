#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arrangelab/arrangement.hpp"
#include "arrangelab/invariants.hpp"

// Ribbon-surface model of the nearby fiber (f = delta) inside a ball.
//
// The model depends on the arrangement and the ball only. Fixing the radius
// first and then taking delta small enough is what makes the fiber
// independent of delta, so no delta appears anywhere in this interface.

namespace arrangelab {

struct BallSpec {
    Point center{};
    double radius = 1.0;

    /// Half-width of the shell around the sphere that must stay free of
    /// intersection points and of tangent lines.
    double band() const { return 1e-6 * radius; }

    void validate() const {
        if (!(radius > 0.0) || !std::isfinite(radius)) throw PreconditionError("ball radius must be positive");
        if (!is_finite(center.x) || !is_finite(center.y)) throw PreconditionError("ball center must be finite");
    }
};

/// Intersection points strictly inside the ball. Throws ForbiddenBandError
/// when a point lies within band() of the sphere.
inline std::vector<IntersectionPoint> in_ball_intersections(const Arrangement& arr, const BallSpec& ball,
                                                            double tol = kPointTol) {
    ball.validate();
    std::vector<IntersectionPoint> out;
    for (auto& ip : intersections(arr, tol)) {
        const double dist = distance(ip.location, ball.center);
        if (std::abs(dist - ball.radius) <= ball.band())
            throw ForbiddenBandError("forbidden band: an intersection point lies on the sphere (distance " +
                                     std::to_string(dist) + "); choose another radius");
        if (dist < ball.radius) out.push_back(std::move(ip));
    }
    return out;
}

/// Indices of lines meeting the open ball. Throws ForbiddenBandError for a
/// line (nearly) tangent to the sphere.
inline std::vector<std::size_t> lines_meeting_ball(const Arrangement& arr, const BallSpec& ball) {
    ball.validate();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const double dist = arr[i].distance(ball.center);
        if (std::abs(dist - ball.radius) <= ball.band())
            throw ForbiddenBandError("forbidden band: line " + std::to_string(i) +
                                     " is tangent to the sphere; choose another radius");
        if (dist < ball.radius) out.push_back(i);
    }
    return out;
}

namespace detail {

inline std::set<std::pair<std::size_t, std::size_t>> in_ball_pairs(const Arrangement& arr, const BallSpec& ball,
                                                                   bool& only_double) {
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    only_double = true;
    for (const auto& ip : in_ball_intersections(arr, ball)) {
        if (ip.multiplicity() != 2) only_double = false;
        pairs.emplace(ip.incident[0], ip.incident[1]);
    }
    return pairs;
}

inline bool has_only_double_points(const Arrangement& arr) {
    const auto pts = intersections(arr);
    return std::all_of(pts.begin(), pts.end(), [](const auto& ip) { return ip.multiplicity() == 2; });
}

inline Arrangement shift_offsets(const Arrangement& arr, const std::vector<cplx>& shift, double s) {
    std::vector<Line> lines;
    for (std::size_t i = 0; i < arr.size(); ++i) lines.emplace_back(arr[i].a(), arr[i].b(), arr[i].c() + s * shift[i]);
    return Arrangement(std::move(lines));
}

}  // namespace detail

/// Splits every multiple point into double points by jittering constant
/// terms. The jitter magnitude starts at 1e-3 * radius and is halved until
/// the in-ball pair set is the same at s and s/2. Arrangements with only
/// double points are returned unchanged.
inline Arrangement perturb_to_double_points(const Arrangement& arr, const BallSpec& ball, std::uint64_t seed) {
    ball.validate();
    lines_meeting_ball(arr, ball);
    in_ball_intersections(arr, ball);
    if (detail::has_only_double_points(arr)) return arr;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> size(0.5, 1.0);
    std::vector<cplx> shift(arr.size());
    for (auto& z : shift) z = std::polar(size(rng), phase(rng));

    double s = 1e-3 * ball.radius;
    for (int halving = 0; halving <= 10; ++halving, s *= 0.5) {
        try {
            const Arrangement coarse = detail::shift_offsets(arr, shift, s);
            const Arrangement fine = detail::shift_offsets(arr, shift, 0.5 * s);
            if (!detail::has_only_double_points(coarse) || !detail::has_only_double_points(fine)) continue;
            lines_meeting_ball(coarse, ball);
            lines_meeting_ball(fine, ball);
            bool d1 = false;
            bool d2 = false;
            if (detail::in_ball_pairs(coarse, ball, d1) == detail::in_ball_pairs(fine, ball, d2) && d1 && d2)
                return coarse;
        } catch (const Error&) {
            // duplicate lines, cluster ambiguity or band violations at this scale
        }
    }
    throw Error("cannot stabilize the double-point perturbation after 10 halvings");
}

struct Band {
    std::size_t disk_i = 0;  // positions in RibbonSurface::disks
    std::size_t disk_j = 0;
    std::size_t point = 0;   // index into RibbonSurface::points
    int strand = 0;          // 0 or 1: the two bands of one double point
    bool twisted = false;
};

/// Disks and bands with cyclic attachment orders.
///
/// Twist convention "flat-paired": both bands of a double point are flat
/// in the orientable sense and appear in the same relative order on both
/// disks. Two disks with one such pair form an annulus, the local model of
/// xy = delta.
struct RibbonSurface {
    std::vector<std::size_t> disks;                   // line indices, ascending
    std::vector<Band> bands;
    std::vector<std::vector<std::size_t>> attachments;  // per disk, cyclic order of band indices
    std::vector<Point> points;                         // in-ball double points of the split arrangement
    std::string twist_convention = "flat-paired";

    /// Every band endpoint must occur exactly once in the cyclic orders.
    void validate() const {
        if (attachments.size() != disks.size()) throw Error("ribbon surface: one cyclic order per disk required");
        std::vector<int> seen(bands.size(), 0);
        for (std::size_t k = 0; k < disks.size(); ++k)
            for (auto b : attachments[k]) {
                if (b >= bands.size()) throw Error("ribbon surface: attachment names a missing band");
                const auto& band = bands[b];
                if (band.disk_i != k && band.disk_j != k) throw Error("ribbon surface: band attached to a foreign disk");
                ++seen[b];
            }
        for (std::size_t b = 0; b < bands.size(); ++b) {
            if (seen[b] != 2) throw Error("ribbon surface: band endpoint count mismatch");
        }
    }
};

/// The two disks and two bands of one in-ball double point, with the cyclic
/// orders restricted to those bands.
inline RibbonSurface single_intersection_subsurface(const RibbonSurface& surface, std::size_t point) {
    if (point >= surface.points.size()) throw PreconditionError("no such intersection point in the model");
    RibbonSurface sub;
    sub.twist_convention = surface.twist_convention;
    sub.points = {surface.points[point]};
    std::map<std::size_t, std::size_t> band_map;
    std::map<std::size_t, std::size_t> disk_map;
    for (std::size_t b = 0; b < surface.bands.size(); ++b) {
        const auto& band = surface.bands[b];
        if (band.point != point) continue;
        for (auto disk : {band.disk_i, band.disk_j})
            if (!disk_map.count(disk)) {
                disk_map[disk] = sub.disks.size();
                sub.disks.push_back(surface.disks[disk]);
            }
        band_map[b] = sub.bands.size();
        sub.bands.push_back({disk_map[band.disk_i], disk_map[band.disk_j], 0, band.strand, band.twisted});
    }
    sub.attachments.resize(sub.disks.size());
    for (const auto& [disk, k] : disk_map)
        for (auto b : surface.attachments[disk])
            if (band_map.count(b)) sub.attachments[k].push_back(band_map[b]);
    return sub;
}

struct SurfaceInvariants {
    std::int64_t euler = 0;
    std::int64_t boundary_components = 0;
    std::int64_t genus = 0;
    std::int64_t connected_components = 0;
    bool orientable = true;
};

namespace detail {

// Unit complex number w such that Re(w s) separates all parameters.
inline cplx separating_rotation(const std::vector<std::vector<cplx>>& params) {
    double scale = 1.0;
    for (const auto& ps : params)
        for (auto s : ps) scale = std::max(scale, std::abs(s));
    for (int k = 0; k < 64; ++k) {
        const cplx w = std::polar(1.0, 0.3183098861837907 + k * 2.399963229728653);
        bool ok = true;
        for (const auto& ps : params) {
            std::vector<double> keys;
            for (auto s : ps) keys.push_back((w * s).real());
            std::sort(keys.begin(), keys.end());
            for (std::size_t i = 1; i < keys.size(); ++i)
                if (keys[i] - keys[i - 1] <= 1e-9 * scale) ok = false;
        }
        if (ok) return w;
    }
    return std::polar(1.0, 0.3183098861837907);
}

}  // namespace detail

/// Builds the ribbon surface: one disk per line meeting the ball, two bands
/// per in-ball double point after splitting multiple points. Along each
/// line the points are ordered by Re(w s) for the complex line parameter s
/// and a fixed unit w that separates them.
inline RibbonSurface ribbon_model(const Arrangement& arr, const BallSpec& ball, std::uint64_t seed) {
    const Arrangement split = perturb_to_double_points(arr, ball, seed);
    RibbonSurface surface;
    surface.disks = lines_meeting_ball(split, ball);
    std::map<std::size_t, std::size_t> position;
    for (std::size_t k = 0; k < surface.disks.size(); ++k) position[surface.disks[k]] = k;

    auto pts = in_ball_intersections(split, ball);
    std::sort(pts.begin(), pts.end(), [](const auto& p, const auto& q) { return p.incident < q.incident; });
    std::vector<std::vector<std::size_t>> on_disk(surface.disks.size());
    std::vector<std::vector<cplx>> params(surface.disks.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        surface.points.push_back(pts[k].location);
        const auto di = position.at(pts[k].incident[0]);
        const auto dj = position.at(pts[k].incident[1]);
        for (int strand = 0; strand < 2; ++strand) surface.bands.push_back({di, dj, k, strand, false});
        for (auto disk : {di, dj}) {
            const Line& l = split[surface.disks[disk]];
            // Hermitian coordinate along the line, origin at the foot of the center.
            const double n = l.linear_norm();
            const Point dir{-l.b() / n, l.a() / n};
            const Point rel = pts[k].location - ball.center;
            on_disk[disk].push_back(k);
            params[disk].push_back(std::conj(dir.x) * rel.x + std::conj(dir.y) * rel.y);
        }
    }
    const cplx w = detail::separating_rotation(params);
    surface.attachments.resize(surface.disks.size());
    for (std::size_t disk = 0; disk < surface.disks.size(); ++disk) {
        std::vector<std::size_t> order(on_disk[disk].size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](auto a, auto b) { return (w * params[disk][a]).real() < (w * params[disk][b]).real(); });
        for (auto o : order) {
            const auto k = on_disk[disk][o];
            surface.attachments[disk].push_back(2 * k);
            surface.attachments[disk].push_back(2 * k + 1);
        }
    }
    return surface;
}

/// Euler characteristic, boundary count (by tracing the boundary through
/// disk arcs and band sides), genus and connected components.
inline SurfaceInvariants surface_invariants(const RibbonSurface& surface) {
    surface.validate();
    // Each attachment slot has a left and a right corner on the disk boundary.
    std::vector<std::array<std::size_t, 2>> band_slots(surface.bands.size(), {SIZE_MAX, SIZE_MAX});
    std::size_t slots = 0;
    std::vector<std::size_t> slot_disk;
    for (std::size_t k = 0; k < surface.disks.size(); ++k)
        for (auto b : surface.attachments[k]) {
            auto& s = band_slots[b];
            (s[0] == SIZE_MAX ? s[0] : s[1]) = slots;
            slot_disk.push_back(k);
            ++slots;
        }
    auto left = [](std::size_t slot) { return 2 * slot; };
    auto right = [](std::size_t slot) { return 2 * slot + 1; };

    detail::DisjointSets corners(2 * slots);
    std::size_t base = 0;
    for (std::size_t k = 0; k < surface.disks.size(); ++k) {
        const std::size_t n = surface.attachments[k].size();
        for (std::size_t s = 0; s < n; ++s) corners.unite(right(base + s), left(base + (s + 1) % n));
        base += n;
    }
    for (std::size_t b = 0; b < surface.bands.size(); ++b) {
        const auto [s0, s1] = band_slots[b];
        if (surface.bands[b].twisted) {
            corners.unite(left(s0), left(s1));
            corners.unite(right(s0), right(s1));
        } else {
            corners.unite(left(s0), right(s1));
            corners.unite(right(s0), left(s1));
        }
    }

    detail::DisjointSets comps(surface.disks.size());
    for (const auto& band : surface.bands) comps.unite(band.disk_i, band.disk_j);

    // Orientation sign per disk; a twisted band flips it.
    std::vector<int> sign(surface.disks.size(), 0);
    bool orientable = true;
    for (std::size_t start = 0; start < surface.disks.size(); ++start) {
        if (sign[start]) continue;
        sign[start] = 1;
        std::vector<std::size_t> stack{start};
        while (!stack.empty()) {
            const auto k = stack.back();
            stack.pop_back();
            for (const auto& band : surface.bands) {
                if (band.disk_i != k && band.disk_j != k) continue;
                const auto other = band.disk_i == k ? band.disk_j : band.disk_i;
                const int want = band.twisted ? -sign[k] : sign[k];
                if (!sign[other]) {
                    sign[other] = want;
                    stack.push_back(other);
                } else if (sign[other] != want) {
                    orientable = false;
                }
            }
        }
    }

    std::map<std::size_t, std::int64_t> chi, boundary;
    for (std::size_t k = 0; k < surface.disks.size(); ++k) {
        chi[comps.find(k)] += 1;
        if (surface.attachments[k].empty()) boundary[comps.find(k)] += 1;
    }
    for (const auto& band : surface.bands) chi[comps.find(band.disk_i)] -= 1;
    std::set<std::size_t> cycles;
    for (std::size_t c = 0; c < 2 * slots; ++c)
        if (cycles.insert(corners.find(c)).second) boundary[comps.find(slot_disk[c / 2])] += 1;

    SurfaceInvariants inv;
    inv.orientable = orientable;
    inv.connected_components = static_cast<std::int64_t>(chi.size());
    for (const auto& [root, x] : chi) {
        inv.euler += x;
        inv.boundary_components += boundary[root];
        const std::int64_t deficit = 2 - x - boundary[root];
        inv.genus += orientable ? deficit / 2 : deficit;
    }
    return inv;
}

struct FiberReport {
    RibbonSurface surface;
    SurfaceInvariants invariants;
    bool ball_contains_all_intersections = false;
    bool generic = false;
    std::optional<std::int64_t> formula_euler;  // set when the formula applies
    std::optional<bool> formula_agrees;
};

/// Surface invariants of the nearby fiber, cross-checked against the
/// generic-fiber Euler characteristic when the ball holds every
/// intersection point of a generic arrangement.
inline FiberReport nearby_fiber_report(const Arrangement& arr, const BallSpec& ball, std::uint64_t seed) {
    FiberReport r;
    r.surface = ribbon_model(arr, ball, seed);
    r.invariants = surface_invariants(r.surface);
    r.generic = is_generic(arr).is_generic;
    r.ball_contains_all_intersections = in_ball_intersections(arr, ball).size() == intersections(arr).size();
    if (r.generic && r.ball_contains_all_intersections) {
        r.formula_euler = euler_generic_fiber(combinatorics(arr));
        r.formula_agrees = *r.formula_euler == r.invariants.euler;
    }
    return r;
}

}  // namespace arrangelab
