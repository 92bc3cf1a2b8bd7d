#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "arrangelab/critical.hpp"

namespace arrangelab {

using Triple = std::array<cplx, 3>;

/// Piecewise-linear path of one line's coefficients (a, b, c) over [0, 1],
/// given by knots with strictly increasing parameters.
struct CoefficientTrack {
    std::vector<double> t;
    std::vector<Triple> value;

    Triple operator()(double s) const {
        if (s <= t.front()) return value.front();
        if (s >= t.back()) return value.back();
        const auto k = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), s) - t.begin());
        const double w = (s - t[k - 1]) / (t[k] - t[k - 1]);
        Triple out;
        for (int m = 0; m < 3; ++m) out[m] = (1.0 - w) * value[k - 1][m] + w * value[k][m];
        return out;
    }

    void validate() const {
        if (t.empty() || t.size() != value.size()) throw PreconditionError("track: knots and values must match");
        if (t.front() != 0.0 || t.back() != 1.0) throw PreconditionError("track must cover [0, 1]");
        for (std::size_t k = 1; k < t.size(); ++k)
            if (!(t[k] > t[k - 1])) throw PreconditionError("track knots must be strictly increasing");
    }

    static CoefficientTrack constant(const Triple& v) { return {{0.0, 1.0}, {v, v}}; }
};

struct PathSample {
    double t = 0.0;
    std::vector<Line> lines;
};

struct DetourRecord {
    double t0 = 0.0;
    double epsilon = 0.0;
    std::string kind;  // "offset" or "direction"
    std::size_t line = 0;
};

/// A continuous family of arrangements sampled at `steps` equally spaced
/// parameters in [0, 1]. The stored combinatorics is that of t = 0.
class DeformationPath {
public:
    DeformationPath(std::vector<CoefficientTrack> tracks, int steps, std::vector<DetourRecord> detours = {})
        : tracks_(std::move(tracks)), detours_(std::move(detours)) {
        if (tracks_.empty()) throw PreconditionError("path needs at least one line");
        if (steps < 2) throw PreconditionError("path needs at least two samples");
        for (const auto& tr : tracks_) tr.validate();
        for (int k = 0; k < steps; ++k) {
            const double t = k == steps - 1 ? 1.0 : static_cast<double>(k) / (steps - 1);
            samples_.push_back({t, lines_at(t)});
        }
        combinatorics_ = arrangelab::combinatorics(Arrangement(samples_.front().lines));
    }

    std::vector<Line> lines_at(double t) const {
        std::vector<Line> lines;
        for (const auto& tr : tracks_) {
            const auto v = tr(t);
            lines.emplace_back(v[0], v[1], v[2]);
        }
        return lines;
    }

    const std::vector<CoefficientTrack>& tracks() const { return tracks_; }
    const std::vector<PathSample>& samples() const { return samples_; }
    const std::vector<DetourRecord>& detours() const { return detours_; }
    const Combinatorics& combinatorics() const { return combinatorics_; }
    std::size_t degree() const { return tracks_.size(); }

private:
    std::vector<CoefficientTrack> tracks_;
    std::vector<PathSample> samples_;
    std::vector<DetourRecord> detours_;
    Combinatorics combinatorics_;
};

/// Distance between two lines' coefficient triples after scaling both to
/// unit norm and aligning their phases.
inline double coefficient_jump(const Line& l1, const Line& l2) {
    const auto p = l1.coefficients();
    const auto q = l2.coefficients();
    double np = 0.0;
    double nq = 0.0;
    cplx inner = 0.0;
    for (int m = 0; m < 3; ++m) {
        np += std::norm(p[m]);
        nq += std::norm(q[m]);
        inner += std::conj(p[m]) * q[m];
    }
    const cplx align = std::abs(inner) > 0.0 ? std::conj(inner) / std::abs(inner) : cplx(1.0);
    double out = 0.0;
    for (int m = 0; m < 3; ++m) out += std::norm(p[m] / std::sqrt(np) - align * q[m] / std::sqrt(nq));
    return std::sqrt(out);
}

/// Largest coefficient_jump between consecutive samples over all lines.
inline double max_coefficient_jump(const DeformationPath& path) {
    double out = 0.0;
    const auto& s = path.samples();
    for (std::size_t k = 1; k < s.size(); ++k)
        for (std::size_t i = 0; i < path.degree(); ++i)
            out = std::max(out, coefficient_jump(s[k - 1].lines[i], s[k].lines[i]));
    return out;
}

/// Class j (0-based) gets the real direction angle j pi / (l + 1) and
/// offsets 1, 2, ..., p_j plus seeded jitter in [0, 0.01).
inline Arrangement canonical_form(const Combinatorics& comb, std::uint64_t seed) {
    if (comb.class_count() < 2) throw PreconditionError("canonical form needs at least two parallel classes");
    for (int p : comb.class_sizes)
        if (p < 1) throw PreconditionError("class sizes must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, 0.01);
    const double l = static_cast<double>(comb.class_count());
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<Line> lines;
        for (std::size_t j = 0; j < comb.class_count(); ++j) {
            const double theta = static_cast<double>(j) * std::numbers::pi / (l + 1.0);
            for (int k = 1; k <= comb.class_sizes[j]; ++k)
                lines.emplace_back(-std::sin(theta), std::cos(theta), k + jitter(rng));
        }
        try {
            Arrangement arr(std::move(lines));
            if (combinatorics(arr) == comb && is_generic(arr, 1e-6).is_generic) return arr;
        } catch (const Error&) {
        }
    }
    throw Error("canonical form: genericity not achieved after 100 jitter attempts");
}

namespace detail {

using State = std::vector<Triple>;

inline State lerp(const State& A, const State& B, double w) {
    State out(A.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (int m = 0; m < 3; ++m) out[i][m] = (1.0 - w) * A[i][m] + w * B[i][m];
    return out;
}

inline cplx det2(const Triple& p, const Triple& q) { return p[0] * q[1] - p[1] * q[0]; }

inline cplx det3(const Triple& p, const Triple& q, const Triple& r) {
    return p[0] * (q[1] * r[2] - q[2] * r[1]) - p[1] * (q[0] * r[2] - q[2] * r[0]) +
           p[2] * (q[0] * r[1] - q[1] * r[0]);
}

inline double triple_norm(const Triple& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2])); }

// Parameters w in [0, 1] where a polynomial of degree <= 3, known through
// its values at w = 0, 1/3, 2/3, 1, has a (nearly) real root.
inline std::vector<double> real_roots_on_unit(const std::array<cplx, 4>& values, double scale) {
    Eigen::Matrix4d V;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) V(r, c) = std::pow(r / 3.0, c);
    Eigen::Vector4cd rhs;
    for (int r = 0; r < 4; ++r) rhs(r) = values[static_cast<std::size_t>(r)];
    const Eigen::Vector4cd coef = V.cast<cplx>().partialPivLu().solve(rhs);
    std::vector<cplx> c(4);
    for (int k = 0; k < 4; ++k) c[static_cast<std::size_t>(k)] = std::abs(coef(k)) <= 1e-12 * scale ? 0.0 : coef(k);
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    std::vector<cplx> roots;
    if (c.size() <= 1) return {};
    if (c.size() == 2) {
        roots.push_back(-c[0] / c[1]);
    } else {
        try {
            roots = univariate_roots(UniPoly(c));
        } catch (const SolverError&) {
            return {0.5};  // treat an unresolved condition as an event
        }
    }
    std::vector<double> out;
    for (auto w : roots)
        if (std::abs(w.imag()) <= 1e-6 && w.real() >= -1e-9 && w.real() <= 1.0 + 1e-9)
            out.push_back(std::clamp(w.real(), 0.0, 1.0));
    return out;
}

struct Event {
    double w = 0.0;
    bool direction = false;
    std::size_t line = 0;
};

struct MovePlan {
    bool rotate = false;
    std::size_t cls = 0;
    std::array<cplx, 2> target{};  // rotation target direction, unit norm
};

struct LinkPlan {
    std::vector<CoefficientTrack> tracks;
    std::vector<std::size_t> target;  // line index -> canonical line index
    std::vector<DetourRecord> detours;
};

class PathBuilder {
public:
    PathBuilder(const Arrangement& arr, int steps, std::uint64_t seed, double kappa, std::uint64_t salt)
        : steps_(steps), kappa_(kappa), rng_(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1))) {
        const auto raw = parallel_classes(arr);
        classes_ = raw;
        std::stable_sort(classes_.begin(), classes_.end(),
                         [](const auto& p, const auto& q) { return p.size() > q.size(); });
        class_of_.assign(arr.size(), 0);
        for (std::size_t j = 0; j < classes_.size(); ++j)
            for (auto i : classes_[j]) class_of_[i] = j;

        comb_ = combinatorics(arr);
        canonical_ = canonical_form(comb_, seed);
        std::size_t q = 0;
        target_.assign(arr.size(), 0);
        for (const auto& cls : classes_)
            for (auto i : cls) target_[i] = q++;

        // Lines of one class share the unit direction of the class's first line.
        state_.resize(arr.size());
        for (const auto& cls : classes_) {
            const Line& first = arr[cls.front()];
            const double n = first.linear_norm();
            const cplx ua = first.a() / n;
            const cplx ub = first.b() / n;
            for (auto i : cls) {
                const Line& l = arr[i];
                const cplx lambda = (std::conj(l.a()) * ua + std::conj(l.b()) * ub) / std::norm(l.linear_norm());
                state_[i] = {ua, ub, lambda * l.c()};
            }
        }
    }

    LinkPlan run() {
        plan_moves();
        const std::size_t M = moves_.size();
        std::vector<CoefficientTrack> tracks(state_.size());
        for (std::size_t i = 0; i < state_.size(); ++i) {
            tracks[i].t.push_back(0.0);
            tracks[i].value.push_back(state_[i]);
        }
        for (std::size_t m = 0; m < M; ++m) {
            const auto knots = run_move(m, M);
            for (std::size_t k = 1; k < knots.size(); ++k) {
                const double t = k + 1 == knots.size() ? static_cast<double>(m + 1) / M
                                                        : (static_cast<double>(m) + knots[k].first) / M;
                for (std::size_t i = 0; i < state_.size(); ++i) {
                    tracks[i].t.push_back(t);
                    tracks[i].value.push_back(knots[k].second[i]);
                }
            }
            state_ = knots.back().second;
        }
        if (M == 0)
            for (std::size_t i = 0; i < state_.size(); ++i) {
                tracks[i].t.push_back(1.0);
                tracks[i].value.push_back(state_[i]);
            }
        for (auto& tr : tracks) tr.t.back() = 1.0;
        return {std::move(tracks), target_, std::move(detours_)};
    }

private:
    std::array<cplx, 2> class_direction(std::size_t j) const {
        const auto& v = state_[classes_[j].front()];
        return {v[0], v[1]};
    }

    static std::array<cplx, 2> canonical_direction(const Line& l) {
        const double n = l.linear_norm();
        return {l.a() / n, l.b() / n};
    }

    std::array<cplx, 2> random_direction() {
        std::normal_distribution<double> g;
        cplx a(g(rng_), g(rng_));
        cplx b(g(rng_), g(rng_));
        const double n = std::hypot(std::abs(a), std::abs(b));
        return {a / n, b / n};
    }

    void plan_moves() {
        std::vector<std::array<cplx, 2>> cur(classes_.size());
        for (std::size_t j = 0; j < classes_.size(); ++j) cur[j] = class_direction(j);
        for (std::size_t j = 0; j < classes_.size(); ++j) {
            const auto& first_canon = canonical_[target_[classes_[j].front()]];
            const auto goal = canonical_direction(first_canon);
            const bool rotate = direction_gap(cur[j][0], cur[j][1], goal[0], goal[1]) > 1e-12;
            if (rotate) {
                for (std::size_t k = j + 1; k < classes_.size(); ++k)
                    if (direction_gap(cur[k][0], cur[k][1], goal[0], goal[1]) < 1e-6) {
                        cur[k] = random_direction();
                        moves_.push_back({true, k, cur[k]});
                    }
                moves_.push_back({true, j, goal});
                cur[j] = goal;
            }
            bool translate = rotate;
            for (auto i : classes_[j]) {
                const Line l(state_[i][0], state_[i][1], state_[i][2]);
                if (std::abs(l.c() - canonical_[target_[i]].c()) > 1e-12) translate = true;
            }
            if (translate) moves_.push_back({false, j, {}});
        }
    }

    State move_end(const MovePlan& mv) const {
        State end = state_;
        for (auto i : classes_[mv.cls]) {
            if (mv.rotate) {
                // Phase-align the target so the chord never passes through (0, 0).
                const cplx inner = std::conj(state_[i][0]) * mv.target[0] + std::conj(state_[i][1]) * mv.target[1];
                const cplx phase = std::abs(inner) > 0.0 ? std::conj(inner) / std::abs(inner) : cplx(1.0);
                end[i][0] = mv.target[0] * phase;
                end[i][1] = mv.target[1] * phase;
            } else {
                const Line& canon = canonical_[target_[i]];
                const auto n = canonical_direction(canon);
                const cplx lambda = std::conj(n[0]) * state_[i][0] + std::conj(n[1]) * state_[i][1];
                end[i][2] = lambda * canon.c() / canon.linear_norm();
            }
        }
        return end;
    }

    std::vector<Event> events(const State& A, const State& B, const std::vector<bool>& moving) const {
        std::vector<Event> out;
        const std::size_t d = A.size();
        const std::array<double, 4> ws{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
        std::array<State, 4> S;
        for (int k = 0; k < 4; ++k) S[static_cast<std::size_t>(k)] = lerp(A, B, ws[static_cast<std::size_t>(k)]);
        auto scan = [&](auto&& f, double scale, bool direction, std::size_t line) {
            std::array<cplx, 4> vals;
            for (std::size_t k = 0; k < 4; ++k) vals[k] = f(S[k]);
            for (double w : real_roots_on_unit(vals, scale)) out.push_back({w, direction, line});
        };
        auto scale_of = [&](std::initializer_list<std::size_t> idx) {
            double s = 1.0;
            for (auto i : idx) s *= std::max(triple_norm(A[i]), triple_norm(B[i]));
            return s;
        };
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = i + 1; k < d; ++k) {
                if (!moving[i] && !moving[k]) continue;
                const std::size_t mv = moving[i] ? i : k;
                if (class_of_[i] == class_of_[k]) {
                    scan([&](const State& s) { return s[i][2] - s[k][2]; }, scale_of({i, k}), false, mv);
                } else if (classes_[class_of_[i]].front() == i && classes_[class_of_[k]].front() == k) {
                    scan([&](const State& s) { return det2(s[i], s[k]); }, scale_of({i, k}), true, mv);
                }
            }
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = i + 1; k < d; ++k)
                for (std::size_t m = k + 1; m < d; ++m) {
                    if (!moving[i] && !moving[k] && !moving[m]) continue;
                    if (class_of_[i] == class_of_[k] || class_of_[i] == class_of_[m] || class_of_[k] == class_of_[m])
                        continue;
                    const std::size_t mv = moving[i] ? i : (moving[k] ? k : m);
                    scan([&](const State& s) { return det3(s[i], s[k], s[m]); }, scale_of({i, k, m}), false, mv);
                }
        std::sort(out.begin(), out.end(), [](const Event& a, const Event& b) { return a.w < b.w; });
        return out;
    }

    std::vector<std::pair<double, State>> run_move(std::size_t m, std::size_t M) {
        const MovePlan& mv = moves_[m];
        std::vector<bool> moving(state_.size(), false);
        for (auto i : classes_[mv.cls]) moving[i] = true;
        std::vector<std::pair<double, State>> knots{{0.0, state_}, {1.0, move_end(mv)}};
        const double eps_cap = static_cast<double>(M) / (4.0 * steps_);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        auto global = [&](double u) { return (static_cast<double>(m) + u) / static_cast<double>(M); };

        std::size_t idx = 0;
        for (int guard = 0; idx + 1 < knots.size(); ++guard) {
            if (guard > 400) throw PathConstructionError("too many detours in one move", global(knots[idx].first));
            const double uA = knots[idx].first;
            const double uB = knots[idx + 1].first;
            const State A = knots[idx].second;
            const State B = knots[idx + 1].second;
            const auto ev = events(A, B, moving);
            if (ev.empty()) {
                ++idx;
                continue;
            }
            const Event e = ev.front();
            const double u0 = uA + e.w * (uB - uA);
            if (u0 - uA <= 1e-12 * std::max(1.0, uB - uA))
                throw PathConstructionError("event too close to the start of a segment", global(u0));

            if (e.direction) {
                // Leave the real direction circle through a complex waypoint.
                State W = lerp(A, B, e.w);
                const auto& v = W[classes_[mv.cls].front()];
                const double n = std::hypot(std::abs(v[0]), std::abs(v[1]));
                // Displacement bounded by the room on both sides keeps the speed bounded.
                const double h = std::min({0.3, u0 - uA, uB - u0});
                bool placed = false;
                for (int attempt = 0; attempt < 8 && !placed; ++attempt) {
                    const cplx phase = std::polar(h, attempt == 0 ? std::numbers::pi / 2 : angle(rng_));
                    cplx a = v[0] - phase * std::conj(v[1]) / n;
                    cplx b = v[1] + phase * std::conj(v[0]) / n;
                    const double nn = std::hypot(std::abs(a), std::abs(b));
                    State trial = W;
                    for (auto i : classes_[mv.cls]) {
                        trial[i][0] = a / nn;
                        trial[i][1] = b / nn;
                    }
                    const auto left = events(A, trial, moving);
                    const auto right = events(trial, B, moving);
                    if ((left.empty() || left.front().w > 1e-3) && (right.empty() || right.front().w > 1e-3)) {
                        W = trial;
                        placed = true;
                    }
                }
                if (!placed) throw PathConstructionError("no direction detour found", global(u0));
                detours_.push_back({global(u0), 0.0, "direction", e.line});
                knots.insert(knots.begin() + static_cast<std::ptrdiff_t>(idx) + 1, {u0, W});
                continue;
            }

            if (!mv.rotate && idx + 2 == knots.size() && e.w >= 1.0 - 1e-9)
                throw PathConstructionError("event at the end of a translation move", global(u0));
            double eps = std::min(eps_cap, 0.5 * (u0 - uA));
            for (const auto& other : ev)
                if (other.w > e.w) {
                    eps = std::min(eps, 0.5 * (other.w - e.w) * (uB - uA));
                    break;
                }
            const State R = lerp(A, B, (u0 - eps - uA) / (uB - uA));
            const State P0 = lerp(A, B, e.w);
            const double size = kappa_ * eps * (1.0 + std::abs(P0[e.line][2]));
            std::optional<cplx> eta;
            for (int attempt = 0; attempt < 8 && !eta; ++attempt) {
                const cplx trial = std::polar(size, attempt == 0 ? std::numbers::pi / 2 : angle(rng_));
                State P = P0;
                P[e.line][2] += trial;
                State next = B;
                if (mv.rotate) next[e.line][2] += trial;
                const auto ramp = events(R, P, moving);
                const auto after = events(P, next, moving);
                if (ramp.empty() && (after.empty() || after.front().w > 1e-6)) eta = trial;
            }
            if (!eta) throw PathConstructionError("no offset detour found", global(u0));
            State P = P0;
            P[e.line][2] += *eta;
            // Rotation moves keep the shifted offset; translations return to their target.
            if (mv.rotate)
                for (std::size_t k = idx + 1; k < knots.size(); ++k) knots[k].second[e.line][2] += *eta;
            detours_.push_back({global(u0), eps / static_cast<double>(M), "offset", e.line});
            knots.insert(knots.begin() + static_cast<std::ptrdiff_t>(idx) + 1, {u0, P});
            knots.insert(knots.begin() + static_cast<std::ptrdiff_t>(idx) + 1, {u0 - eps, R});
            idx += 2;
        }
        return knots;
    }

    int steps_;
    double kappa_;
    std::mt19937_64 rng_;
    std::vector<std::vector<std::size_t>> classes_;
    std::vector<std::size_t> class_of_;
    Combinatorics comb_;
    Arrangement canonical_{std::vector<Line>{Line(1.0, 0.0, 0.0)}};
    std::vector<std::size_t> target_;
    State state_;
    std::vector<MovePlan> moves_;
    std::vector<DetourRecord> detours_;
};

// First sample parameter at which the path leaves the generic stratum of
// its combinatorics, if any.
inline std::optional<double> first_bad_sample(const DeformationPath& path) {
    for (const auto& s : path.samples()) {
        try {
            const Arrangement arr(s.lines);
            if (!is_generic(arr).is_generic || combinatorics(arr) != path.combinatorics()) return s.t;
        } catch (const Error&) {
            return s.t;
        }
    }
    return std::nullopt;
}

inline void require_linkable(const Arrangement& arr) {
    if (!is_generic(arr).is_generic) throw PreconditionError("arrangement is not generic");
    if (combinatorics(arr).class_count() < 2) throw PreconditionError("all lines parallel: nothing to link");
}

}  // namespace detail

/// Path from a generic arrangement to canonical_form(combinatorics(arr), seed):
/// each parallel class is rotated to its canonical direction and then its
/// offsets are translated, with detours around every event where the
/// family would leave the generic stratum.
inline DeformationPath link_to_canonical(const Arrangement& arr, int steps, std::uint64_t seed) {
    detail::require_linkable(arr);
    std::optional<double> bad;
    for (int refine = 0; refine <= 3; ++refine) {
        auto plan = detail::PathBuilder(arr, steps, seed, std::pow(4.0, refine), refine).run();
        DeformationPath path(std::move(plan.tracks), steps, std::move(plan.detours));
        bad = detail::first_bad_sample(path);
        if (!bad) return path;
    }
    throw PathConstructionError("non-generic sample persists after refinement", *bad);
}

/// Path from arr0 to arr1 through their common canonical form. Line i of
/// arr0 is carried to the line of arr1 that reaches the same canonical line.
inline DeformationPath link(const Arrangement& arr0, const Arrangement& arr1, int steps, std::uint64_t seed) {
    if (combinatorics(arr0) != combinatorics(arr1)) throw CombinatoricsMismatchError("combinatorics differ");
    detail::require_linkable(arr0);
    detail::require_linkable(arr1);
    std::optional<double> bad;
    for (int refine = 0; refine <= 3; ++refine) {
        const double kappa = std::pow(4.0, refine);
        auto p0 = detail::PathBuilder(arr0, steps, seed, kappa, 2 * refine).run();
        auto p1 = detail::PathBuilder(arr1, steps, seed, kappa, 2 * refine + 1).run();
        std::vector<std::size_t> inverse1(p1.target.size());
        for (std::size_t k = 0; k < p1.target.size(); ++k) inverse1[p1.target[k]] = k;

        std::vector<CoefficientTrack> tracks;
        for (std::size_t i = 0; i < arr0.size(); ++i) {
            const auto& a = p0.tracks[i];
            const auto& b = p1.tracks[inverse1[p0.target[i]]];
            const Triple& ea = a.value.back();
            const Triple& eb = b.value.back();
            cplx num = 0.0;
            double den = 0.0;
            for (int m = 0; m < 3; ++m) {
                num += std::conj(eb[m]) * ea[m];
                den += std::norm(eb[m]);
            }
            const cplx r = num / den;
            CoefficientTrack tr;
            for (std::size_t k = 0; k < a.t.size(); ++k) {
                tr.t.push_back(0.5 * a.t[k]);
                tr.value.push_back(a.value[k]);
            }
            for (std::size_t k = b.t.size() - 1; k-- > 0;) {
                tr.t.push_back(1.0 - 0.5 * b.t[k]);
                Triple v = b.value[k];
                for (auto& z : v) z *= r;
                tr.value.push_back(v);
            }
            tr.t.back() = 1.0;
            tracks.push_back(std::move(tr));
        }
        std::vector<DetourRecord> detours;
        for (auto d : p0.detours) {
            d.t0 *= 0.5;
            d.epsilon *= 0.5;
            detours.push_back(d);
        }
        for (auto d : p1.detours) {
            d.t0 = 1.0 - 0.5 * d.t0;
            d.epsilon *= 0.5;
            d.line = p1.target[d.line];
            for (std::size_t i = 0; i < arr0.size(); ++i)
                if (p0.target[i] == d.line) d.line = i;
            detours.push_back(d);
        }
        DeformationPath path(std::move(tracks), steps, std::move(detours));
        bad = detail::first_bad_sample(path);
        if (!bad) return path;
    }
    throw PathConstructionError("non-generic sample persists after refinement", *bad);
}

struct PathCertificate {
    bool degree_constant = true;
    bool all_generic = true;
    bool combinatorics_constant = true;
    bool morse_checked = false;
    std::optional<bool> b_count_constant;
    std::vector<std::pair<double, std::string>> failures;

    bool ok() const { return degree_constant && all_generic && combinatorics_constant && b_count_constant.value_or(true); }
};

/// Per-sample checks of degree, genericity and combinatorics; optionally
/// the number of nonzero critical values. Failures are recorded, not thrown.
inline PathCertificate certify_path(const DeformationPath& path, const SolverConfig& cfg = {},
                                    bool check_morse = false) {
    PathCertificate cert;
    cert.morse_checked = check_morse;
    std::optional<std::size_t> value_count;
    bool counts_equal = true;
    for (const auto& s : path.samples()) {
        if (s.lines.size() != path.degree()) {
            cert.degree_constant = false;
            cert.failures.emplace_back(s.t, "degree changed");
        }
        std::optional<Arrangement> arr;
        try {
            arr.emplace(s.lines);
        } catch (const Error& e) {
            cert.all_generic = false;
            cert.combinatorics_constant = false;
            cert.failures.emplace_back(s.t, e.what());
            if (check_morse) counts_equal = false;
            continue;
        }
        try {
            const auto g = is_generic(*arr);
            if (!g.is_generic) {
                cert.all_generic = false;
                cert.failures.emplace_back(s.t, g.all_parallel ? "all lines parallel" : "multiple point");
            }
        } catch (const Error& e) {
            cert.all_generic = false;
            cert.failures.emplace_back(s.t, e.what());
        }
        if (combinatorics(*arr) != path.combinatorics()) {
            cert.combinatorics_constant = false;
            cert.failures.emplace_back(s.t, "combinatorics changed");
        }
        if (check_morse) {
            try {
                const auto n = morse_report(*arr, cfg).critical_values_nonzero.size();
                if (value_count && *value_count != n) counts_equal = false;
                if (!value_count) value_count = n;
            } catch (const Error& e) {
                counts_equal = false;
                cert.failures.emplace_back(s.t, std::string("morse: ") + e.what());
            }
        }
    }
    if (check_morse) {
        cert.b_count_constant = counts_equal;
        if (!counts_equal) cert.failures.emplace_back(1.0, "number of nonzero critical values changed");
    }
    return cert;
}

}  // namespace arrangelab
