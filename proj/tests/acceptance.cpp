// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "support.hpp"

using namespace arrangelab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
    std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void guarded(const char* name, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(name, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

}  // namespace

int main() {
    guarded("example-generic", [] {
        bool ok = true;
        double worst_time = 0.0;
        for (cplx t : {cplx(2.0), cplx(3.0), cplx(1.0, 1.0)}) {
            const auto start = Clock::now();
            const auto r = verify_example(t);
            const double s = seconds_since(start);
            worst_time = std::max(worst_time, s);
            ok = ok && r.passed() && s < 1.0;
        }
        report("example-generic", ok, fmt("t in {2, 3, 1+i}, slowest %.3f s", worst_time));
    });

    guarded("example-cube-root", [] {
        const auto start = Clock::now();
        const auto r = verify_example(kJ);
        const double s = seconds_since(start);
        std::string failed;
        for (const auto& c : r.checks)
            if (!c.passed) failed += " " + c.name;
        report("example-cube-root", r.passed() && s < 1.0,
               fmt("t = j, %.3f s%s%s", s, failed.empty() ? "" : ", failed:", failed.c_str()));
    });

    guarded("bifurcation-identity", [] {
        std::mt19937_64 rng(1);
        bool ok = true;
        for (int k = 0; k < 1000; ++k) {
            const auto comb = Combinatorics::from_sizes(testsupport::random_partition(rng, 2 + k % 29));
            const auto chi0 = euler_zero_fiber(comb);
            ok = ok && chi0 - euler_generic_fiber(comb) == mu_zero(comb) &&
                 predicted_bifurcation_count(chi0) == 1 + expected_critical_count(comb);
        }
        std::int64_t chi0 = 0;
        std::int64_t measured = 0;
        for (cplx t : {cplx(2.0), cplx(3.0), cplx(1.0, 1.0)}) {
            const auto arr = example_arrangement(t);
            const auto r = morse_report(arr);
            chi0 = euler_zero_fiber_general(arr);
            measured = r.bifurcation_measured;
            ok = ok && chi0 == -1 && measured == 3 && r.bifurcation_predicted == 3;
        }
        report("bifurcation-identity", ok,
               fmt("chi(f^-1(0)) = %lld, measured #B = %lld; 1000 partitions", static_cast<long long>(chi0),
                   static_cast<long long>(measured)));
    });

    guarded("critical-count", [] {
        std::mt19937_64 rng(2);
        const auto start = Clock::now();
        int matched = 0;
        int resampled = 0;
        for (int k = 0; k < 100; ++k) {
            const int d = 3 + k % 5;
            for (;;) {
                const auto arr = testsupport::random_generic(rng, testsupport::random_partition(rng, d), false, false);
                const auto r = morse_report(arr);
                if (!r.is_morse_outside) {
                    ++resampled;
                    continue;
                }
                if (static_cast<std::int64_t>(r.critical_points.size()) == expected_critical_count(combinatorics(arr)))
                    ++matched;
                break;
            }
        }
        const double s = seconds_since(start);
        report("critical-count", matched == 100 && s < 60.0,
               fmt("%d/100 match, %d resampled, %.2f s", matched, resampled, s));
    });

    guarded("fiber-figures", [] {
        const Arrangement xy({Line(1, 0, 0), Line(0, 1, 0)});
        const auto a = nearby_fiber_report(xy, {{}, 1.0}, 0).invariants;
        const Arrangement four({Line(0, 1, 0), Line(1, -1, 0), Line(1, 0, 0), Line(1.6, -1.3, 1.62)});
        bool ok = a.euler == 0 && a.boundary_components == 2 && a.genus == 0;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto b = nearby_fiber_report(four, {{-0.5, 0.0}, 0.8}, seed).invariants;
            ok = ok && b.euler == -4 && b.boundary_components == 4 && b.genus == 1;
        }
        report("fiber-figures", ok, "annulus (0, 2, 0); four lines (-4, 4, 1)");
    });

    guarded("fiber-formula", [] {
        std::mt19937_64 rng(3);
        int agree = 0;
        for (int k = 0; k < 100; ++k) {
            const auto arr =
                testsupport::random_generic(rng, testsupport::random_partition(rng, 2 + k % 7), k % 3 == 0, false);
            const auto r = nearby_fiber_report(arr, testsupport::enclosing_ball(arr), k);
            if (r.formula_agrees.value_or(false)) ++agree;
        }
        report("fiber-formula", agree == 100, fmt("%d/100 ribbon Euler characteristics agree", agree));
    });

    guarded("deformation", [] {
        std::mt19937_64 rng(4);
        const auto start = Clock::now();
        int certified = 0;
        double worst_endpoint = 0.0;
        double worst_ratio = INFINITY;
        for (int k = 0; k < 50; ++k) {
            const auto sizes = testsupport::random_partition(rng, 3 + k % 4);
            const auto a = testsupport::random_generic(rng, sizes, k % 2 == 0, false);
            const auto b = testsupport::random_generic(rng, sizes, false, false);
            const auto path = link(a, b, 200, k);
            const auto cert = certify_path(path);
            if (cert.degree_constant && cert.all_generic && cert.combinatorics_constant) ++certified;
            const auto& first = path.samples().front().lines;
            const auto& last = path.samples().back().lines;
            for (std::size_t i = 0; i < a.size(); ++i) {
                worst_endpoint = std::max(worst_endpoint, coefficient_jump(first[i], a[i]));
                double best = INFINITY;
                for (const auto& l : b) best = std::min(best, coefficient_jump(last[i], l));
                worst_endpoint = std::max(worst_endpoint, best);
            }
            if (k < 10) {
                const double fine = max_coefficient_jump(link(a, b, 400, k));
                worst_ratio = std::min(worst_ratio, max_coefficient_jump(path) / fine);
            }
        }
        const double s = seconds_since(start);
        report("deformation", certified == 50 && s < 120.0,
               fmt("%d/50 certified, endpoint %.1e, jump ratio %.2f, %.2f s", certified, worst_endpoint, worst_ratio,
                   s));
    });

    guarded("oracle-agreement", [] {
        std::mt19937_64 rng(5);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const auto arr =
                testsupport::random_generic(rng, testsupport::random_partition(rng, 3 + k % 2), false, false);
            std::vector<Point> pts;
            for (const auto& cp : critical_points(arr)) pts.push_back(cp.location);
            worst = std::max(worst, testsupport::matched_distance(pts, testsupport::newton_oracle(arr, 1000, k)));
        }
        report("oracle-agreement", worst <= 1e-7, fmt("20 arrangements, worst distance %.1e", worst));
    });

    return failures == 0 ? 0 : 1;
}
