#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace arrangelab {

using cplx = std::complex<double>;

/// A point of complex affine 2-space.
struct Point {
    cplx x{};
    cplx y{};

    friend Point operator+(Point p, Point q) { return {p.x + q.x, p.y + q.y}; }
    friend Point operator-(Point p, Point q) { return {p.x - q.x, p.y - q.y}; }
    friend Point operator*(cplx s, Point p) { return {s * p.x, s * p.y}; }
};

/// Hermitian norm in C^2.
inline double norm(Point p) { return std::sqrt(std::norm(p.x) + std::norm(p.y)); }
inline double distance(Point p, Point q) { return norm(p - q); }

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Error hierarchy. Every failure surfaced by the library derives from Error.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class DegenerateLineError : public Error {
public:
    DegenerateLineError() : Error("degenerate line: a = b = 0") {}
};

class DuplicateLineError : public Error {
public:
    DuplicateLineError(std::size_t i, std::size_t j)
        : Error("duplicate line: lines " + std::to_string(i) + " and " + std::to_string(j) +
                " are proportional"),
          first(i), second(j) {}
    std::size_t first;
    std::size_t second;
};

/// Two candidate intersection clusters sit in the ambiguity band [tol, 2 tol).
class ClusterAmbiguityError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, double worst) : Error(what), worst_residual(worst) {}
    double worst_residual;
};

/// The resultant vanished identically: the two polynomials share a component.
class SharedComponentError : public Error {
public:
    using Error::Error;
};

class CombinatoricsMismatchError : public Error {
public:
    using Error::Error;
};

/// An intersection point or a line sits within the forbidden band around the sphere.
class ForbiddenBandError : public Error {
public:
    using Error::Error;
};

class PathConstructionError : public Error {
public:
    PathConstructionError(const std::string& what, double t) : Error(what), t(t) {}
    double t;
};

}  // namespace arrangelab
