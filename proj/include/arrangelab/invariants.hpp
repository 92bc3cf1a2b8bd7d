#pragma once

#include <cstdint>
#include <optional>

#include "arrangelab/arrangement.hpp"

namespace arrangelab {

// Topological invariants of generic arrangements, in exact integer arithmetic.
// Each formula depends on the combinatorics (p_1, ..., p_l) only.

namespace detail {
inline std::int64_t parallel_pairs(const Combinatorics& comb) {
    std::int64_t s = 0;
    for (const std::int64_t p : comb.class_sizes) s += p * (p - 1) / 2;
    return s;
}
}  // namespace detail

/// chi(f^-1(c)) for c outside the bifurcation set: -d(d-2) + sum p_j(p_j - 1).
inline std::int64_t euler_generic_fiber(const Combinatorics& comb) {
    const std::int64_t d = comb.degree();
    return -d * (d - 2) + 2 * detail::parallel_pairs(comb);
}

/// chi(f^-1(0)) = 1 - (d-1)(d-2)/2 + sum p_j(p_j - 1)/2.
inline std::int64_t euler_zero_fiber(const Combinatorics& comb) {
    const std::int64_t d = comb.degree();
    return 1 - (d - 1) * (d - 2) / 2 + detail::parallel_pairs(comb);
}

/// Total Milnor number of the zero fiber; for a generic arrangement, the
/// number of double points d(d-1)/2 - sum p_j(p_j - 1)/2.
inline std::int64_t mu_zero(const Combinatorics& comb) {
    const std::int64_t d = comb.degree();
    return d * (d - 1) / 2 - detail::parallel_pairs(comb);
}

/// chi(f^-1(0)) for any arrangement by inclusion-exclusion over the
/// intersection points: d - sum_k (m_k - 1).
inline std::int64_t euler_zero_fiber_general(const Arrangement& arr, double tol = kPointTol) {
    std::int64_t chi = static_cast<std::int64_t>(arr.size());
    for (const auto& ip : intersections(arr, tol)) chi -= ip.multiplicity() - 1;
    return chi;
}

/// #B = 2 - chi(f^-1(0)); meaningful when f is Morse outside the arrangement.
inline std::int64_t predicted_bifurcation_count(std::int64_t chi_zero) { return 2 - chi_zero; }

/// Off-arrangement critical point count of a generic arrangement that is
/// Morse outside the arrangement: 1 - chi(f^-1(0)).
inline std::int64_t expected_critical_count(const Combinatorics& comb) { return 1 - euler_zero_fiber(comb); }

struct InvariantReport {
    int d = 0;
    Combinatorics combinatorics;
    GenericityReport genericity;
    // Generic-only quantities; empty when the arrangement is not generic.
    std::optional<std::int64_t> chi_generic_fiber;
    std::optional<std::int64_t> mu_zero;
    // Always defined: equals the generic formula whenever the arrangement is generic.
    std::int64_t chi_zero_fiber = 0;
    // Empty when all lines are parallel.
    std::optional<std::int64_t> predicted_B_count;
};

inline InvariantReport invariant_report(const Arrangement& arr, double tol = kPointTol) {
    InvariantReport r;
    r.d = static_cast<int>(arr.size());
    r.combinatorics = combinatorics(arr);
    r.genericity = is_generic(arr, tol);
    r.chi_zero_fiber = euler_zero_fiber_general(arr, tol);
    if (r.genericity.is_generic) {
        r.chi_generic_fiber = euler_generic_fiber(r.combinatorics);
        r.mu_zero = mu_zero(r.combinatorics);
    }
    if (r.combinatorics.class_count() >= 2) r.predicted_B_count = predicted_bifurcation_count(r.chi_zero_fiber);
    return r;
}

}  // namespace arrangelab
