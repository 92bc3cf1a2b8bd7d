#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "arrangelab/arrangement.hpp"
#include "arrangelab/invariants.hpp"
#include "arrangelab/polynomial.hpp"

namespace arrangelab {

struct CriticalPoint {
    Point location;
    cplx value;
    cplx hessian_det;
    bool nondegenerate = false;
    double residual = 0.0;  // max(|f_x|, |f_y|) at location
};

struct MorseReport {
    std::vector<CriticalPoint> critical_points;
    std::vector<cplx> critical_values_nonzero;  // one entry per value cluster
    std::vector<int> cluster_sizes;             // points per value cluster
    bool is_morse_outside = false;
    std::optional<std::int64_t> predicted_count;
    std::optional<bool> count_matches;
    // #B predicted from the inclusion-exclusion chi(f^-1(0)) versus the
    // measured number of distinct critical values including 0.
    std::int64_t bifurcation_predicted = 0;
    std::int64_t bifurcation_measured = 0;
    bool bifurcation_matches = false;
};

/// Expanded partial derivatives f_x = sum a_i prod_{k!=i} l_k and
/// f_y = sum b_i prod_{k!=i} l_k.
inline std::pair<BiPoly, BiPoly> gradient_system(const Arrangement& arr) {
    const std::size_t d = arr.size();
    std::vector<BiPoly> prefix{BiPoly::constant(1.0)};
    for (std::size_t i = 0; i + 1 < d; ++i)
        prefix.push_back(prefix.back() * BiPoly::linear(arr[i].a(), arr[i].b(), arr[i].c()));
    BiPoly suffix = BiPoly::constant(1.0);
    BiPoly fx = BiPoly::constant(0.0);
    BiPoly fy = BiPoly::constant(0.0);
    for (std::size_t i = d; i-- > 0;) {
        const BiPoly others = prefix[i] * suffix;
        fx = fx + arr[i].a() * others;
        fy = fy + arr[i].b() * others;
        suffix = suffix * BiPoly::linear(arr[i].a(), arr[i].b(), arr[i].c());
    }
    return {fx, fy};
}

namespace detail {

/// Affine frame p = center + scale * U q with U unitary. Solving in q keeps
/// the intersection points inside the unit ball and the projection to x proper.
struct Frame {
    Point center{};
    double scale = 1.0;
    std::array<cplx, 4> u{1.0, 0.0, 0.0, 1.0};  // row-major

    Point to_original(Point q) const {
        return center + scale * Point{u[0] * q.x + u[1] * q.y, u[2] * q.x + u[3] * q.y};
    }

    Arrangement pull_back(const Arrangement& arr) const {
        std::vector<Line> lines;
        for (const auto& l : arr)
            lines.emplace_back(scale * (l.a() * u[0] + l.b() * u[2]), scale * (l.a() * u[1] + l.b() * u[3]),
                               l(center));
        return Arrangement(std::move(lines));
    }
};

inline Frame centered_frame(const Arrangement& arr) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < arr.size(); ++i)
        for (std::size_t j = i + 1; j < arr.size(); ++j)
            if (auto p = intersect(arr[i], arr[j])) pts.push_back(*p);
    Frame f;
    if (pts.empty()) return f;
    Point sum{};
    for (auto p : pts) sum = sum + p;
    f.center = (1.0 / static_cast<double>(pts.size())) * sum;
    double spread = 0.0;
    for (auto p : pts) spread = std::max(spread, distance(p, f.center));
    if (spread > 0.0) f.scale = spread;
    return f;
}

inline std::array<cplx, 4> random_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    cplx alpha{g(rng), g(rng)};
    cplx beta{g(rng), g(rng)};
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= n;
    beta /= n;
    return {alpha, -std::conj(beta), beta, std::conj(alpha)};
}

// Smallest |b_k| over normalized lines: the leading y-coefficient of f_y is
// d prod b_k, so this bounds how proper the projection to the x-axis is.
inline double min_y_weight(const Arrangement& arr) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& l : arr) m = std::min(m, std::abs(l.b()) / l.linear_norm());
    return m;
}

inline double relative_gradient(const Arrangement& arr, Point p) {
    const auto j = jet(arr, p);
    const auto m = magnitude_jet(arr, p);
    const double scale = std::max({m.dx, m.dy, std::numeric_limits<double>::min()});
    return std::max(std::abs(j.dx), std::abs(j.dy)) / scale;
}

/// Damped Newton on grad f = 0.
inline Point newton_polish(const Arrangement& arr, Point p, int max_iterations) {
    auto grad_norm = [&](Point q) {
        const auto e = evaluate(arr, q);
        return std::hypot(std::abs(e.gradient[0]), std::abs(e.gradient[1]));
    };
    double g0 = grad_norm(p);
    for (int it = 0; it < max_iterations && g0 > 0.0; ++it) {
        const auto j = jet(arr, p);
        const cplx det = j.hessian_det();
        if (det == 0.0) break;
        const Point step{-(j.dyy * j.dx - j.dxy * j.dy) / det, -(j.dxx * j.dy - j.dxy * j.dx) / det};
        double lambda = 1.0;
        Point next = p + lambda * step;
        double g1 = grad_norm(next);
        for (int k = 0; k < 20 && !(g1 < g0); ++k) {
            lambda *= 0.5;
            next = p + lambda * step;
            g1 = grad_norm(next);
        }
        if (!(g1 < g0)) break;
        const double moved = lambda * norm(step);
        p = next;
        g0 = g1;
        if (moved <= 1e-15 * std::max(1.0, norm(p))) break;
    }
    return p;
}

inline bool lex_less(Point p, Point q) {
    return std::make_tuple(p.x.real(), p.x.imag(), p.y.real(), p.y.imag()) <
           std::make_tuple(q.x.real(), q.x.imag(), q.y.real(), q.y.imag());
}

/// Candidate critical points in frame coordinates via resultant elimination.
inline std::vector<Point> eliminate(const Arrangement& local, const Combinatorics& comb, const SolverConfig& cfg) {
    const auto [fx, fy] = gradient_system(local);
    UniPoly res = resultant_y(fx, fy, 1.0);
    // Finite common zeros of f_x, f_y number (d-1)^2 minus sum p_j(p_j - 1)
    // at infinity; anything interpolated above that degree is rounding noise.
    const int d = static_cast<int>(local.size());
    int expected = (d - 1) * (d - 1);
    for (int p : comb.class_sizes) expected -= p * (p - 1);
    res.truncate(expected);
    res.trim(1e-11);
    std::vector<Point> candidates;
    if (res.degree() < 1) return candidates;

    auto xs = univariate_roots(res, cfg);
    std::sort(xs.begin(), xs.end(), [](cplx a, cplx b) {
        return std::make_pair(a.real(), a.imag()) < std::make_pair(b.real(), b.imag());
    });
    std::vector<cplx> distinct;
    for (auto x : xs)
        if (std::none_of(distinct.begin(), distinct.end(), [&](cplx y) { return std::abs(x - y) < 1e-9; }))
            distinct.push_back(x);

    for (auto x : distinct) {
        UniPoly py(fy.in_y(x));
        if (py.degree() < 1) continue;
        for (auto y : univariate_roots(py, cfg)) {
            // Clustered resultant roots are only accurate to a few digits.
            const Point q = newton_polish(local, {x, y}, cfg.newton_max_iterations);
            if (relative_gradient(local, q) < 1e-3) candidates.push_back(q);
        }
    }
    return candidates;
}

}  // namespace detail

/// All critical points of the defining polynomial off the arrangement.
///
/// Pipeline: resultant of (f_x, f_y) in y, roots in x, back-substitution
/// into f_y, damped Newton polish on the product-rule jets, deduplication.
/// Throws PreconditionError for arrangements with a single direction.
inline std::vector<CriticalPoint> critical_points(const Arrangement& arr, const SolverConfig& cfg = {}) {
    const Combinatorics comb = combinatorics(arr);
    if (comb.class_count() < 2)
        throw PreconditionError("critical_points needs at least two distinct directions");

    detail::Frame frame = detail::centered_frame(arr);
    Arrangement local = frame.pull_back(arr);
    if (detail::min_y_weight(local) < 0.05) {
        std::mt19937_64 rng(cfg.seed);
        detail::Frame best = frame;
        double best_weight = -1.0;
        for (int attempt = 0; attempt < 3; ++attempt) {
            detail::Frame trial = frame;
            trial.u = detail::random_unitary(rng);
            const double w = detail::min_y_weight(trial.pull_back(arr));
            if (w > best_weight) {
                best_weight = w;
                best = trial;
            }
            if (w >= 0.05) break;
        }
        frame = best;
        local = frame.pull_back(arr);
    }

    std::vector<Point> found;
    for (auto q : detail::eliminate(local, comb, cfg)) {
        q = detail::newton_polish(local, q, cfg.newton_max_iterations);
        Point p = frame.to_original(q);
        p = detail::newton_polish(arr, p, 5);
        if (!(detail::relative_gradient(arr, p) < cfg.residual_tol)) continue;
        if (!(arrangement_distance(arr, p) > cfg.off_tol)) continue;
        found.push_back(p);
    }
    std::sort(found.begin(), found.end(), detail::lex_less);

    std::vector<CriticalPoint> out;
    for (auto p : found) {
        const auto j = jet(arr, p);
        const auto m = magnitude_jet(arr, p);
        CriticalPoint cp;
        cp.location = p;
        cp.value = j.v;
        cp.hessian_det = j.hessian_det();
        cp.nondegenerate = std::abs(cp.hessian_det) > 1e-8 * (m.dxx * m.dyy + m.dxy * m.dxy);
        cp.residual = std::max(std::abs(j.dx), std::abs(j.dy));
        auto dup = std::find_if(out.begin(), out.end(), [&](const CriticalPoint& o) {
            return distance(o.location, p) < cfg.cluster_tol * std::max(1.0, norm(p));
        });
        if (dup == out.end())
            out.push_back(cp);
        else if (cp.residual < dup->residual)
            *dup = cp;
    }
    return out;
}

/// Groups values whose relative gap is within tol; returns (representative, size).
inline std::vector<std::pair<cplx, int>> cluster_values(const std::vector<cplx>& values, double tol) {
    detail::DisjointSets sets(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (std::abs(values[i] - values[j]) <=
                tol * std::max({1.0, std::abs(values[i]), std::abs(values[j])}))
                sets.unite(i, j);
    std::vector<std::pair<cplx, int>> clusters;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto r = sets.find(i);
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it == roots.end()) {
            roots.push_back(r);
            clusters.emplace_back(values[i], 1);
        } else {
            auto& c = clusters[static_cast<std::size_t>(it - roots.begin())];
            c.first += values[i];
            ++c.second;
        }
    }
    for (auto& c : clusters) c.first /= static_cast<double>(c.second);
    std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
        return std::make_pair(a.first.real(), a.first.imag()) < std::make_pair(b.first.real(), b.first.imag());
    });
    return clusters;
}

/// Decides whether the arrangement is Morse outside the arrangement and
/// cross-checks the point count and #B against the Euler characteristic formulas.
inline MorseReport morse_report(const Arrangement& arr, const SolverConfig& cfg = {}) {
    MorseReport r;
    r.critical_points = critical_points(arr, cfg);
    std::vector<cplx> values;
    for (const auto& cp : r.critical_points) values.push_back(cp.value);
    for (const auto& [v, n] : cluster_values(values, cfg.value_tol)) {
        r.critical_values_nonzero.push_back(v);
        r.cluster_sizes.push_back(n);
    }
    r.is_morse_outside =
        std::all_of(r.critical_points.begin(), r.critical_points.end(), [](const auto& cp) { return cp.nondegenerate; }) &&
        std::all_of(r.cluster_sizes.begin(), r.cluster_sizes.end(), [](int n) { return n == 1; });

    if (is_generic(arr).is_generic) {
        r.predicted_count = expected_critical_count(combinatorics(arr));
        r.count_matches = *r.predicted_count == static_cast<std::int64_t>(r.critical_points.size());
    }
    r.bifurcation_predicted = predicted_bifurcation_count(euler_zero_fiber_general(arr));
    r.bifurcation_measured = static_cast<std::int64_t>(r.critical_values_nonzero.size()) + 1;
    r.bifurcation_matches = r.bifurcation_predicted == r.bifurcation_measured;
    return r;
}

}  // namespace arrangelab
