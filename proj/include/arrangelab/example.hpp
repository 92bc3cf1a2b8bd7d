#pragma once

#include <cmath>
#include <regex>
#include <string>
#include <vector>

#include "arrangelab/critical.hpp"
#include "arrangelab/invariants.hpp"

namespace arrangelab {

/// Primitive cube root of unity (-1 + i sqrt 3) / 2.
inline const cplx kJ{-0.5, std::sqrt(3.0) / 2.0};

/// Parses "j", "jbar", a real number, or a complex number written as
/// "a+bi", "bi", "i", "(a,b)".
inline cplx parse_complex(std::string text) {
    std::erase_if(text, [](unsigned char ch) { return std::isspace(ch); });
    if (text == "j") return kJ;
    if (text == "jbar" || text == "conj(j)") return std::conj(kJ);
    static const std::string num = R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))";
    static const std::regex pair(R"(\()" + num + "," + num + R"(\))");
    static const std::regex real_only("^" + num + "$");
    static const std::regex imag_only(R"(^([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\*?i$)");
    static const std::regex full("^" + num + R"(([+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\*?i$)");
    std::smatch m;
    auto coef = [](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return std::stod(s);
    };
    if (std::regex_match(text, m, pair)) return {std::stod(m[1]), std::stod(m[2])};
    if (std::regex_match(text, m, real_only)) return {std::stod(m[1]), 0.0};
    if (std::regex_match(text, m, imag_only)) return {0.0, coef(m[1])};
    if (std::regex_match(text, m, full)) return {std::stod(m[1]), coef(m[2])};
    throw ParseError("cannot parse complex number '" + text + "'");
}

/// The family f_t = x y (x + y - 4)(x - t y).
inline Arrangement example_arrangement(cplx t) {
    return Arrangement({Line(1.0, 0.0, 0.0), Line(0.0, 1.0, 0.0), Line(1.0, 1.0, -4.0), Line(1.0, -t, 0.0)});
}

struct ExampleCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ExampleReport {
    cplx t;
    std::string regime;  // "generic", "cube-root", "degenerate"
    std::vector<ExampleCheck> checks;
    std::optional<MorseReport> morse;
    std::int64_t chi_zero = 0;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    }
};

/// Runs the checks on f_t: two distinct nonzero critical values off the
/// cube roots of unity, one value 3(t - 1) at two nondegenerate points at
/// t = j or conj(j), chi(f^-1(0)) = -1 and #B = 2 - chi where f is Morse.
inline ExampleReport verify_example(cplx t, const SolverConfig& cfg = {}, double match_tol = 1e-9) {
    if (std::abs(t) <= match_tol) throw PreconditionError("t = 0 makes x - t y coincide with x = 0");
    ExampleReport r;
    r.t = t;
    const Arrangement arr = example_arrangement(t);
    r.chi_zero = euler_zero_fiber_general(arr);
    char buf[160];

    if (std::abs(t + 1.0) <= match_tol) {
        r.regime = "degenerate";
        r.checks.push_back({"directions_collide", true,
                            "x - t y is parallel to x + y - 4 at t = -1; Morse claims skipped"});
        return r;
    }

    auto add = [&](std::string name, bool ok, std::string detail) {
        r.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    std::snprintf(buf, sizeof buf, "chi(f^-1(0)) = %lld", static_cast<long long>(r.chi_zero));
    add("chi_zero_is_minus_one", r.chi_zero == -1, buf);

    const MorseReport m = morse_report(arr, cfg);
    r.morse = m;
    double worst = 0.0;
    for (const auto& cp : m.critical_points) worst = std::max(worst, cp.residual);
    std::snprintf(buf, sizeof buf, "max residual %.3g", worst);
    add("residuals_below_tolerance", worst < cfg.residual_tol, buf);

    const bool cube_root = std::abs(t - kJ) <= match_tol || std::abs(t - std::conj(kJ)) <= match_tol;
    if (!cube_root) {
        r.regime = "generic";
        add("morse_outside", m.is_morse_outside, m.is_morse_outside ? "all points nondegenerate, values distinct"
                                                                    : "not Morse outside the arrangement");
        std::snprintf(buf, sizeof buf, "%zu nonzero critical values", m.critical_values_nonzero.size());
        add("two_nonzero_values", m.critical_values_nonzero.size() == 2, buf);
        std::snprintf(buf, sizeof buf, "#B measured %lld, predicted %lld",
                      static_cast<long long>(m.bifurcation_measured), static_cast<long long>(m.bifurcation_predicted));
        add("bifurcation_count", m.bifurcation_matches && m.bifurcation_predicted == 3, buf);
        return r;
    }

    r.regime = "cube-root";
    std::snprintf(buf, sizeof buf, "%zu nonzero critical values", m.critical_values_nonzero.size());
    add("one_nonzero_value", m.critical_values_nonzero.size() == 1, buf);
    const cplx expected = 3.0 * (t - 1.0);
    const double err = m.critical_values_nonzero.empty() ? INFINITY : std::abs(m.critical_values_nonzero[0] - expected);
    std::snprintf(buf, sizeof buf, "|value - 3(t-1)| = %.3g", err);
    add("value_is_3(t-1)", err <= 1e-8, buf);
    std::snprintf(buf, sizeof buf, "%zu distinct critical points", m.critical_points.size());
    add("two_critical_points", m.critical_points.size() == 2, buf);
    const bool nondeg = !m.critical_points.empty() &&
                        std::all_of(m.critical_points.begin(), m.critical_points.end(),
                                    [](const auto& cp) { return cp.nondegenerate; });
    add("points_nondegenerate", nondeg, nondeg ? "all Hessians nonsingular" : "singular Hessian found");
    return r;
}

}  // namespace arrangelab
