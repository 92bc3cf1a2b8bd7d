#pragma once

#include <nlohmann/json.hpp>

#include "arrangelab/critical.hpp"
#include "arrangelab/deformation.hpp"
#include "arrangelab/fiber.hpp"
#include "arrangelab/invariants.hpp"
#include "arrangelab/io.hpp"

namespace arrangelab {

namespace detail {
template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}
}  // namespace detail

inline nlohmann::json to_json(const Line& l) {
    return {{"a", to_json(l.a())}, {"b", to_json(l.b())}, {"c", to_json(l.c())}};
}

inline nlohmann::json to_json(const Combinatorics& comb) { return comb.class_sizes; }

inline nlohmann::json to_json(const IntersectionPoint& ip) {
    return {{"location", to_json(ip.location)}, {"lines", ip.incident}, {"multiplicity", ip.multiplicity()}};
}

inline nlohmann::json to_json(const InvariantReport& r) {
    nlohmann::json triples = nlohmann::json::array();
    for (const auto& ip : r.genericity.triple_points) triples.push_back(to_json(ip));
    return {{"d", r.d},
            {"combinatorics", to_json(r.combinatorics)},
            {"is_generic", r.genericity.is_generic},
            {"all_parallel", r.genericity.all_parallel},
            {"multiple_points", triples},
            {"chi_generic_fiber", detail::optional_json(r.chi_generic_fiber)},
            {"mu_zero", detail::optional_json(r.mu_zero)},
            {"chi_zero_fiber", r.chi_zero_fiber},
            {"predicted_B_count", detail::optional_json(r.predicted_B_count)}};
}

inline nlohmann::json to_json(const CriticalPoint& cp) {
    return {{"location", to_json(cp.location)},
            {"value", to_json(cp.value)},
            {"hessian_det", to_json(cp.hessian_det)},
            {"nondegenerate", cp.nondegenerate},
            {"residual", cp.residual}};
}

inline nlohmann::json to_json(const MorseReport& r) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& cp : r.critical_points) points.push_back(to_json(cp));
    nlohmann::json values = nlohmann::json::array();
    for (auto v : r.critical_values_nonzero) values.push_back(to_json(v));
    return {{"critical_points", points},
            {"critical_values_nonzero", values},
            {"cluster_sizes", r.cluster_sizes},
            {"is_morse_outside", r.is_morse_outside},
            {"predicted_count", detail::optional_json(r.predicted_count)},
            {"count_matches", detail::optional_json(r.count_matches)},
            {"bifurcation_predicted", r.bifurcation_predicted},
            {"bifurcation_measured", r.bifurcation_measured},
            {"bifurcation_matches", r.bifurcation_matches}};
}

inline nlohmann::json to_json(const RibbonSurface& s) {
    nlohmann::json bands = nlohmann::json::array();
    for (const auto& b : s.bands)
        bands.push_back({{"disk_i", b.disk_i},
                         {"disk_j", b.disk_j},
                         {"point", b.point},
                         {"strand", b.strand},
                         {"twisted", b.twisted}});
    nlohmann::json points = nlohmann::json::array();
    for (auto p : s.points) points.push_back(to_json(p));
    return {{"disks", s.disks},
            {"bands", bands},
            {"attachments", s.attachments},
            {"points", points},
            {"twist_convention", s.twist_convention}};
}

inline nlohmann::json to_json(const SurfaceInvariants& inv) {
    return {{"euler", inv.euler},
            {"boundary_components", inv.boundary_components},
            {"genus", inv.genus},
            {"connected_components", inv.connected_components},
            {"orientable", inv.orientable}};
}

inline nlohmann::json to_json(const FiberReport& r) {
    return {{"surface", to_json(r.surface)},
            {"invariants", to_json(r.invariants)},
            {"generic", r.generic},
            {"ball_contains_all_intersections", r.ball_contains_all_intersections},
            {"formula_euler", detail::optional_json(r.formula_euler)},
            {"formula_agrees", detail::optional_json(r.formula_agrees)}};
}

inline nlohmann::json to_json(const DeformationPath& path) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : path.samples()) {
        nlohmann::json lines = nlohmann::json::array();
        for (const auto& l : s.lines) lines.push_back(to_json(l));
        samples.push_back({{"t", s.t}, {"lines", lines}});
    }
    nlohmann::json tracks = nlohmann::json::array();
    for (const auto& tr : path.tracks()) {
        nlohmann::json values = nlohmann::json::array();
        for (const auto& v : tr.value) values.push_back({to_json(v[0]), to_json(v[1]), to_json(v[2])});
        tracks.push_back({{"t", tr.t}, {"values", values}});
    }
    nlohmann::json detours = nlohmann::json::array();
    for (const auto& d : path.detours())
        detours.push_back({{"t0", d.t0}, {"epsilon", d.epsilon}, {"kind", d.kind}, {"line", d.line}});
    return {{"combinatorics", to_json(path.combinatorics())},
            {"samples", samples},
            {"tracks", tracks},
            {"detours", detours}};
}

inline nlohmann::json to_json(const PathCertificate& c) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& [t, why] : c.failures) failures.push_back({{"t", t}, {"reason", why}});
    return {{"degree_constant", c.degree_constant},
            {"all_generic", c.all_generic},
            {"combinatorics_constant", c.combinatorics_constant},
            {"morse_checked", c.morse_checked},
            {"b_count_constant", detail::optional_json(c.b_count_constant)},
            {"failures", failures}};
}

}  // namespace arrangelab
