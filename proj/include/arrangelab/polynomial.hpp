#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "arrangelab/types.hpp"

namespace arrangelab {

/// Tolerances and caps shared by the polynomial solvers.
struct SolverConfig {
    double residual_tol = 1e-10;
    double cluster_tol = 1e-7;
    double value_tol = 1e-7;
    double off_tol = 1e-7;
    int newton_max_iterations = 50;
    int root_iteration_cap = 500;
    std::uint64_t seed = 0;
};

/// Univariate polynomial, coefficients in ascending degree.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<cplx> coefficients) : c_(std::move(coefficients)) { trim(0.0); }

    /// Drops leading coefficients with |c_k| <= rel * max |c_j|.
    UniPoly& trim(double rel) {
        double m = 0.0;
        for (auto z : c_) m = std::max(m, std::abs(z));
        while (!c_.empty() && std::abs(c_.back()) <= rel * m) c_.pop_back();
        return *this;
    }

    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<cplx>& coefficients() const { return c_; }
    cplx operator[](std::size_t k) const { return k < c_.size() ? c_[k] : cplx{}; }

    cplx operator()(cplx z) const {
        cplx acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    /// sum |c_k| r^k: the scale against which |p(z)| is compared at |z| = r.
    double magnitude(double r) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
        return acc;
    }

    /// Truncates to the given degree (no-op when already lower).
    void truncate(int deg) {
        if (deg + 1 < static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(deg + 1));
    }

    static UniPoly from_roots(const std::vector<cplx>& roots) {
        std::vector<cplx> c{1.0};
        for (auto r : roots) {
            std::vector<cplx> next(c.size() + 1);
            for (std::size_t k = 0; k < c.size(); ++k) {
                next[k + 1] += c[k];
                next[k] -= r * c[k];
            }
            c = std::move(next);
        }
        return UniPoly(std::move(c));
    }

private:
    std::vector<cplx> c_;
};

/// Dense bivariate polynomial: coefficient (i, j) multiplies x^i y^j.
class BiPoly {
public:
    BiPoly() = default;
    BiPoly(int max_deg_x, int max_deg_y)
        : nx_(max_deg_x + 1), ny_(max_deg_y + 1), c_(static_cast<std::size_t>(nx_ * ny_)) {}

    static BiPoly constant(cplx v) {
        BiPoly p(0, 0);
        p(0, 0) = v;
        return p;
    }
    /// a x + b y + c
    static BiPoly linear(cplx a, cplx b, cplx c) {
        BiPoly p(1, 1);
        p(0, 0) = c;
        p(1, 0) = a;
        p(0, 1) = b;
        return p;
    }

    int rows() const { return nx_; }
    int cols() const { return ny_; }

    cplx& operator()(int i, int j) { return c_[static_cast<std::size_t>(i * ny_ + j)]; }
    cplx operator()(int i, int j) const {
        if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return {};
        return c_[static_cast<std::size_t>(i * ny_ + j)];
    }

    int degree_x() const {
        for (int i = nx_ - 1; i >= 0; --i)
            for (int j = 0; j < ny_; ++j)
                if ((*this)(i, j) != 0.0) return i;
        return -1;
    }
    int degree_y() const {
        for (int j = ny_ - 1; j >= 0; --j)
            for (int i = 0; i < nx_; ++i)
                if ((*this)(i, j) != 0.0) return j;
        return -1;
    }
    int total_degree() const {
        int t = -1;
        for (int i = 0; i < nx_; ++i)
            for (int j = 0; j < ny_; ++j)
                if ((*this)(i, j) != 0.0) t = std::max(t, i + j);
        return t;
    }

    cplx operator()(cplx x, cplx y) const {
        cplx acc = 0.0;
        for (int i = nx_ - 1; i >= 0; --i) {
            cplx row = 0.0;
            for (int j = ny_ - 1; j >= 0; --j) row = row * y + (*this)(i, j);
            acc = acc * x + row;
        }
        return acc;
    }

    /// Specializes x and returns the coefficients in y (not trimmed).
    std::vector<cplx> in_y(cplx x) const {
        std::vector<cplx> out(static_cast<std::size_t>(ny_));
        for (int j = 0; j < ny_; ++j) {
            cplx acc = 0.0;
            for (int i = nx_ - 1; i >= 0; --i) acc = acc * x + (*this)(i, j);
            out[static_cast<std::size_t>(j)] = acc;
        }
        return out;
    }

    friend BiPoly operator*(const BiPoly& p, const BiPoly& q) {
        BiPoly r(p.nx_ + q.nx_ - 2, p.ny_ + q.ny_ - 2);
        for (int i = 0; i < p.nx_; ++i)
            for (int j = 0; j < p.ny_; ++j) {
                const cplx pij = p(i, j);
                if (pij == 0.0) continue;
                for (int k = 0; k < q.nx_; ++k)
                    for (int l = 0; l < q.ny_; ++l) r(i + k, j + l) += pij * q(k, l);
            }
        return r;
    }

    friend BiPoly operator+(const BiPoly& p, const BiPoly& q) {
        BiPoly r(std::max(p.nx_, q.nx_) - 1, std::max(p.ny_, q.ny_) - 1);
        for (int i = 0; i < r.nx_; ++i)
            for (int j = 0; j < r.ny_; ++j) r(i, j) = p(i, j) + q(i, j);
        return r;
    }

    friend BiPoly operator*(cplx s, BiPoly p) {
        for (auto& z : p.c_) z *= s;
        return p;
    }

private:
    int nx_ = 0;
    int ny_ = 0;
    std::vector<cplx> c_;
};

namespace detail {

/// Determinant of the Sylvester matrix of p (degree m) and q (degree n),
/// coefficients ascending.
inline cplx sylvester_determinant(const std::vector<cplx>& p, int m,
                                                     const std::vector<cplx>& q, int n) {
    const int size = m + n;
    if (size == 0) return 1.0;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s(r, r + k) = p[static_cast<std::size_t>(m - k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s(n + r, r + k) = q[static_cast<std::size_t>(n - k)];
    return s.partialPivLu().determinant();
}

}  // namespace detail

/// All complex roots with multiplicity, by Aberth-Ehrlich simultaneous
/// iteration from a circular start. Every root satisfies
/// |p(z)| / sum |c_k||z|^k < cfg.residual_tol or SolverError is thrown.
inline std::vector<cplx> univariate_roots(const UniPoly& poly, const SolverConfig& cfg = {}) {
    const int full_degree = poly.degree();
    if (full_degree < 1) throw PreconditionError("univariate_roots needs degree >= 1");

    // Exact zero roots are split off first; they would collapse the start circle.
    const auto& raw = poly.coefficients();
    std::size_t zeros = 0;
    while (raw[zeros] == 0.0) ++zeros;
    std::vector<cplx> roots(zeros, cplx{0.0});
    std::vector<cplx> c(raw.begin() + static_cast<std::ptrdiff_t>(zeros), raw.end());
    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) return roots;
    const cplx lead = c.back();
    for (auto& z : c) z /= lead;
    const UniPoly p(c);

    double radius = 0.0;
    for (int k = 0; k < n; ++k)
        radius = std::max(radius, std::pow(std::abs(c[static_cast<std::size_t>(k)]), 1.0 / (n - k)));
    const cplx center = -c[static_cast<std::size_t>(n - 1)] / static_cast<double>(n);
    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] = center + radius * std::polar(1.0, 2.0 * std::numbers::pi * k / n + 0.4);

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    for (int it = 0; it < cfg.root_iteration_cap; ++it) {
        bool all_done = true;
        for (int k = 0; k < n; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            if (done[ku]) continue;
            cplx val = 0.0;
            cplx der = 0.0;
            for (int j = n; j >= 0; --j) {
                der = der * z[ku] + val;
                val = val * z[ku] + c[static_cast<std::size_t>(j)];
            }
            if (std::abs(val) <= 4.0 * n * eps * p.magnitude(std::abs(z[ku]))) {
                done[ku] = true;
                continue;
            }
            all_done = false;
            const cplx w = val / der;
            cplx s = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k) s += 1.0 / (z[ku] - z[static_cast<std::size_t>(j)]);
            const cplx corr = w / (1.0 - w * s);
            z[ku] -= corr;
            if (std::abs(corr) <= 2.0 * eps * std::abs(z[ku])) done[ku] = true;
        }
        if (all_done) break;
    }

    double worst = 0.0;
    for (auto r : z) worst = std::max(worst, std::abs(p(r)) / p.magnitude(std::abs(r)));
    if (!(worst < cfg.residual_tol))
        throw SolverError("root iteration did not converge within the cap; worst residual " + std::to_string(worst),
                          worst);
    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

namespace detail {

// True when p and q (ascending coefficients) have a common root, judged by
// evaluating the higher-degree one at the roots of the other.
inline bool share_root(const std::vector<cplx>& p, const std::vector<cplx>& q) {
    UniPoly a(p);
    UniPoly b(q);
    a.trim(1e-14);
    b.trim(1e-14);
    if (a.degree() < 1 || b.degree() < 1) return false;
    if (a.degree() > b.degree()) std::swap(a, b);
    try {
        for (auto y : univariate_roots(a))
            if (std::abs(b(y)) <= 1e-14 * b.magnitude(std::abs(y))) return true;
    } catch (const SolverError&) {
    }
    return false;
}

}  // namespace detail

/// Resultant of P and Q with respect to y, as a polynomial in x.
///
/// Evaluates Sylvester determinants at N roots of unity scaled by `radius`
/// and recovers the coefficients with the inverse DFT. N - 1 is the degree
/// bound min(tdeg P * tdeg Q, deg_y P deg_x Q + deg_y Q deg_x P). A
/// y-degree of zero follows the determinant convention Res(P, q) = q^deg_y P.
inline UniPoly resultant_y(const BiPoly& P, const BiPoly& Q, double radius = 1.0) {
    const int m = P.degree_y();
    const int n = Q.degree_y();
    if (m < 0 || n < 0) throw SharedComponentError("resultant of a zero polynomial vanishes identically");
    if (m == 0 && n == 0) throw PreconditionError("resultant_y needs positive y-degree in P or Q");

    const int bound = std::min(P.total_degree() * Q.total_degree(),
                               m * std::max(Q.degree_x(), 0) + n * std::max(P.degree_x(), 0));
    const int samples = bound + 1;
    std::vector<cplx> values(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const cplx x = radius * std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
        values[static_cast<std::size_t>(k)] = detail::sylvester_determinant(P.in_y(x), m, Q.in_y(x), n);
    }
    // A common component makes every specialization share a y-root.
    bool shared = true;
    for (cplx probe : {std::polar(0.83, 0.61), std::polar(1.17, 2.3), std::polar(0.61, -1.9)})
        shared = shared && detail::share_root(P.in_y(radius * probe), Q.in_y(radius * probe));
    if (shared) throw SharedComponentError("identically-zero resultant: the polynomials share a component");

    std::vector<cplx> coeffs(static_cast<std::size_t>(samples));
    for (int l = 0; l < samples; ++l) {
        cplx acc = 0.0;
        for (int k = 0; k < samples; ++k)
            acc += values[static_cast<std::size_t>(k)] *
                   std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) * l / samples);
        coeffs[static_cast<std::size_t>(l)] = acc / (static_cast<double>(samples) * std::pow(radius, l));
    }
    UniPoly out(std::move(coeffs));
    out.trim(1e-11);
    return out;
}

}  // namespace arrangelab
