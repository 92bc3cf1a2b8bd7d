#pragma once

#include "arrangelab/types.hpp"

namespace arrangelab {

/// Second-order Taylor jet of a function of (x, y). Multiplication is the
/// product rule, so the jet of a product of linear forms carries its value,
/// gradient and Hessian without expanding the polynomial.
template <class T>
struct Jet2 {
    T v{};
    T dx{};
    T dy{};
    T dxx{};
    T dxy{};
    T dyy{};

    friend Jet2 operator*(const Jet2& f, const Jet2& g) {
        return {f.v * g.v,
                f.dx * g.v + f.v * g.dx,
                f.dy * g.v + f.v * g.dy,
                f.dxx * g.v + T(2) * f.dx * g.dx + f.v * g.dxx,
                f.dxy * g.v + f.dx * g.dy + f.dy * g.dx + f.v * g.dxy,
                f.dyy * g.v + T(2) * f.dy * g.dy + f.v * g.dyy};
    }

    static Jet2 constant(T c) { return {c, T{}, T{}, T{}, T{}, T{}}; }
    /// Jet of the linear form a x + b y + c evaluated at a point where it takes value `value`.
    static Jet2 linear(T value, T a, T b) { return {value, a, b, T{}, T{}, T{}}; }

    T hessian_det() const { return dxx * dyy - dxy * dxy; }
};

using ComplexJet = Jet2<cplx>;
/// Jet of absolute values: entrywise bounds on the derivatives of a product,
/// used as the scale against which residuals and determinants are judged.
using MagnitudeJet = Jet2<double>;

}  // namespace arrangelab
