#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "arrangelab/jet.hpp"
#include "arrangelab/types.hpp"

namespace arrangelab {

/// Tolerance for direction equality, applied to normalized coefficients.
inline constexpr double kDirectionTol = 1e-9;
/// Tolerance for clustering intersection points.
inline constexpr double kPointTol = 1e-9;

/// Projective class (a : b) of a line's linear part, normalized so that the
/// coefficient of larger modulus is 1 (ties go to a).
struct Direction {
    cplx a{1.0};
    cplx b{0.0};

    static Direction from(cplx a, cplx b) {
        if (std::abs(a) >= std::abs(b)) return {1.0, b / a};
        return {a / b, 1.0};
    }
};

/// Sine of the angle between two directions in the Fubini-Study sense;
/// zero iff they are the same point of P^1.
inline double direction_gap(cplx a1, cplx b1, cplx a2, cplx b2) {
    const double n1 = std::hypot(std::abs(a1), std::abs(b1));
    const double n2 = std::hypot(std::abs(a2), std::abs(b2));
    return std::abs(a1 * b2 - a2 * b1) / (n1 * n2);
}

inline bool same_direction(const Direction& d1, const Direction& d2, double tol = kDirectionTol) {
    return direction_gap(d1.a, d1.b, d2.a, d2.b) <= tol;
}

/// Affine line a x + b y + c = 0, stored normalized.
class Line {
public:
    Line(cplx a, cplx b, cplx c) {
        if (!is_finite(a) || !is_finite(b) || !is_finite(c))
            throw Error("non-finite line coefficient");
        if (a == 0.0 && b == 0.0) throw DegenerateLineError();
        const bool a_leads = std::abs(a) >= std::abs(b);
        const cplx lead = a_leads ? a : b;
        a_ = a_leads ? 1.0 : a / lead;
        b_ = a_leads ? b / lead : 1.0;
        c_ = c / lead;
    }

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }

    cplx operator()(Point p) const { return a_ * p.x + b_ * p.y + c_; }

    Direction direction() const { return Direction::from(a_, b_); }

    /// Modulus of the linear part, sqrt(|a|^2 + |b|^2).
    double linear_norm() const { return std::hypot(std::abs(a_), std::abs(b_)); }

    /// Hermitian distance from p to the line in C^2.
    double distance(Point p) const { return std::abs((*this)(p)) / linear_norm(); }

    std::array<cplx, 3> coefficients() const { return {a_, b_, c_}; }

    friend bool operator==(const Line&, const Line&) = default;

private:
    cplx a_;
    cplx b_;
    cplx c_;
};

/// Largest 2x2 minor of two coefficient triples, relative to their norms.
/// Zero iff the triples are proportional.
inline double proportionality_gap(const Line& l1, const Line& l2) {
    const auto p = l1.coefficients();
    const auto q = l2.coefficients();
    auto nrm = [](const std::array<cplx, 3>& v) {
        return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
    };
    const double m = std::max({std::abs(p[0] * q[1] - p[1] * q[0]),
                               std::abs(p[0] * q[2] - p[2] * q[0]),
                               std::abs(p[1] * q[2] - p[2] * q[1])});
    return m / (nrm(p) * nrm(q));
}

/// Ordered, nonempty collection of pairwise distinct lines.
class Arrangement {
public:
    explicit Arrangement(std::vector<Line> lines, double tol = kPointTol) : lines_(std::move(lines)) {
        if (lines_.empty()) throw Error("arrangement must contain at least one line");
        for (std::size_t i = 0; i < lines_.size(); ++i)
            for (std::size_t j = i + 1; j < lines_.size(); ++j)
                if (proportionality_gap(lines_[i], lines_[j]) <= tol) throw DuplicateLineError(i, j);
    }

    std::size_t size() const { return lines_.size(); }
    const Line& operator[](std::size_t i) const { return lines_[i]; }
    std::span<const Line> lines() const { return lines_; }
    auto begin() const { return lines_.begin(); }
    auto end() const { return lines_.end(); }

private:
    std::vector<Line> lines_;
};

/// Multiset of parallel-class sizes, stored sorted descending.
struct Combinatorics {
    std::vector<int> class_sizes;

    static Combinatorics from_sizes(std::vector<int> sizes) {
        std::sort(sizes.begin(), sizes.end(), std::greater<>());
        return Combinatorics{std::move(sizes)};
    }

    int degree() const { return std::accumulate(class_sizes.begin(), class_sizes.end(), 0); }
    std::size_t class_count() const { return class_sizes.size(); }

    friend bool operator==(const Combinatorics&, const Combinatorics&) = default;
};

struct IntersectionPoint {
    Point location;
    std::vector<std::size_t> incident;  // sorted line indices

    int multiplicity() const { return static_cast<int>(incident.size()); }
};

struct GenericityReport {
    bool is_generic = false;
    std::vector<IntersectionPoint> triple_points;
    bool all_parallel = false;
};

inline std::vector<Direction> directions(const Arrangement& arr) {
    std::vector<Direction> out;
    out.reserve(arr.size());
    for (const auto& l : arr) out.push_back(l.direction());
    return out;
}

/// Parallel classes as lists of line indices, in order of first appearance.
inline std::vector<std::vector<std::size_t>> parallel_classes(const Arrangement& arr,
                                                              double tol = kDirectionTol) {
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto d = arr[i].direction();
        auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& cls) {
            return same_direction(arr[cls.front()].direction(), d, tol);
        });
        if (it == classes.end())
            classes.push_back({i});
        else
            it->push_back(i);
    }
    return classes;
}

inline Combinatorics combinatorics(const Arrangement& arr, double tol = kDirectionTol) {
    std::vector<int> sizes;
    for (const auto& cls : parallel_classes(arr, tol)) sizes.push_back(static_cast<int>(cls.size()));
    return Combinatorics::from_sizes(std::move(sizes));
}

/// Intersection of two lines, or nothing if they are parallel.
inline std::optional<Point> intersect(const Line& l1, const Line& l2, double tol = kDirectionTol) {
    if (direction_gap(l1.a(), l1.b(), l2.a(), l2.b()) <= tol) return std::nullopt;
    const cplx det = l1.a() * l2.b() - l2.a() * l1.b();
    return Point{(l1.b() * l2.c() - l2.b() * l1.c()) / det, (l1.c() * l2.a() - l2.c() * l1.a()) / det};
}

namespace detail {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    bool unite(std::size_t i, std::size_t j) {
        i = find(i);
        j = find(j);
        if (i == j) return false;
        parent[std::max(i, j)] = std::min(i, j);
        return true;
    }

    std::vector<std::size_t> parent;
};

// Clustering radius grows with the coordinate magnitude so that large
// coordinates do not fall below the rounding floor.
inline double point_tol(double tol, Point p, Point q) {
    return tol * std::max({1.0, norm(p), norm(q)});
}

}  // namespace detail

/// Pairwise intersections of non-parallel lines clustered into points.
/// Throws ClusterAmbiguityError when two clusters lie in [tol, 2 tol).
inline std::vector<IntersectionPoint> intersections(const Arrangement& arr, double tol = kPointTol) {
    struct PairPoint {
        Point p;
        std::size_t i, j;
    };
    std::vector<PairPoint> pts;
    for (std::size_t i = 0; i < arr.size(); ++i)
        for (std::size_t j = i + 1; j < arr.size(); ++j)
            if (auto p = intersect(arr[i], arr[j])) pts.push_back({*p, i, j});

    detail::DisjointSets sets(pts.size());
    for (std::size_t u = 0; u < pts.size(); ++u)
        for (std::size_t v = u + 1; v < pts.size(); ++v)
            if (distance(pts[u].p, pts[v].p) < detail::point_tol(tol, pts[u].p, pts[v].p)) sets.unite(u, v);

    for (std::size_t u = 0; u < pts.size(); ++u)
        for (std::size_t v = u + 1; v < pts.size(); ++v) {
            if (sets.find(u) == sets.find(v)) continue;
            const double dist = distance(pts[u].p, pts[v].p);
            if (dist < 2.0 * detail::point_tol(tol, pts[u].p, pts[v].p))
                throw ClusterAmbiguityError("cluster ambiguity: intersection points at distance " +
                                            std::to_string(dist) +
                                            " fall between tol and 2 tol; change the tolerance");
        }

    std::vector<IntersectionPoint> out;
    std::vector<std::size_t> root_to_out(pts.size(), static_cast<std::size_t>(-1));
    std::vector<int> counts;
    for (std::size_t u = 0; u < pts.size(); ++u) {
        const auto r = sets.find(u);
        if (root_to_out[r] == static_cast<std::size_t>(-1)) {
            root_to_out[r] = out.size();
            out.push_back({Point{}, {}});
            counts.push_back(0);
        }
        auto& ip = out[root_to_out[r]];
        ip.location = ip.location + pts[u].p;
        ++counts[root_to_out[r]];
        ip.incident.push_back(pts[u].i);
        ip.incident.push_back(pts[u].j);
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k].location = (1.0 / counts[k]) * out[k].location;
        auto& inc = out[k].incident;
        std::sort(inc.begin(), inc.end());
        inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
    }
    return out;
}

inline GenericityReport is_generic(const Arrangement& arr, double tol = kPointTol) {
    GenericityReport report;
    for (auto& ip : intersections(arr, tol))
        if (ip.multiplicity() >= 3) report.triple_points.push_back(std::move(ip));
    report.all_parallel = combinatorics(arr).class_count() == 1;
    report.is_generic = report.triple_points.empty() && !report.all_parallel;
    return report;
}

struct Evaluation {
    cplx value;
    std::array<cplx, 2> gradient;
};

/// Second-order jet of the defining polynomial at p, by the product rule.
inline ComplexJet jet(const Arrangement& arr, Point p) {
    auto acc = ComplexJet::constant(1.0);
    for (const auto& l : arr) acc = acc * ComplexJet::linear(l(p), l.a(), l.b());
    return acc;
}

/// Jet of the product of |l_i| with derivative slots |a_i|, |b_i|: an
/// entrywise upper bound for the magnitude of every term summed in jet().
inline MagnitudeJet magnitude_jet(const Arrangement& arr, Point p) {
    auto acc = MagnitudeJet::constant(1.0);
    for (const auto& l : arr) acc = acc * MagnitudeJet::linear(std::abs(l(p)), std::abs(l.a()), std::abs(l.b()));
    return acc;
}

/// Value and gradient of the defining polynomial at p.
inline Evaluation evaluate(const Arrangement& arr, Point p) {
    cplx value = 1.0;
    cplx gx = 0.0;
    cplx gy = 0.0;
    for (const auto& l : arr) {
        const cplx li = l(p);
        gx = gx * li + value * l.a();
        gy = gy * li + value * l.b();
        value *= li;
    }
    return {value, {gx, gy}};
}

/// min_i |l_i(p)| over normalized lines.
inline double arrangement_distance(const Arrangement& arr, Point p) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& l : arr) m = std::min(m, std::abs(l(p)));
    return m;
}

}  // namespace arrangelab
