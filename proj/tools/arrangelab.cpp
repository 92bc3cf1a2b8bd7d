#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "arrangelab/arrangelab.hpp"

using namespace arrangelab;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Arrangement load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_arrangement(in);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ARRANGELAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError("ARRANGELAB_SEED must be a non-negative integer");
        }
    }
    return 0;
}

std::string fmt(cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
    return buf;
}

template <class T>
std::string opt(const std::optional<T>& v) {
    if (!v) return "n/a";
    std::ostringstream s;
    s << std::boolalpha << *v;
    return s.str();
}

std::string sizes(const Combinatorics& c) {
    std::string out = "(";
    for (std::size_t i = 0; i < c.class_sizes.size(); ++i) out += (i ? "," : "") + std::to_string(c.class_sizes[i]);
    return out + ")";
}

void print_info(const InvariantReport& r) {
    std::printf("degree              %d\n", r.d);
    std::printf("combinatorics       %s\n", sizes(r.combinatorics).c_str());
    std::printf("generic             %s\n", r.genericity.is_generic ? "yes" : "no");
    for (const auto& ip : r.genericity.triple_points)
        std::printf("  multiple point    (%s, %s) of multiplicity %d\n", fmt(ip.location.x).c_str(),
                    fmt(ip.location.y).c_str(), ip.multiplicity());
    std::printf("chi generic fiber   %s\n", opt(r.chi_generic_fiber).c_str());
    std::printf("chi zero fiber      %lld\n", static_cast<long long>(r.chi_zero_fiber));
    std::printf("mu(0)               %s\n", opt(r.mu_zero).c_str());
    std::printf("predicted #B        %s\n", opt(r.predicted_B_count).c_str());
}

void print_points(const std::vector<CriticalPoint>& pts) {
    std::printf("%-4s %-44s %-30s %-6s %s\n", "#", "location", "value", "morse", "residual");
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto& cp = pts[k];
        const std::string loc = "(" + fmt(cp.location.x) + ", " + fmt(cp.location.y) + ")";
        std::printf("%-4zu %-44s %-30s %-6s %.2e\n", k, loc.c_str(), fmt(cp.value).c_str(),
                    cp.nondegenerate ? "yes" : "no", cp.residual);
    }
}

void print_morse(const MorseReport& r) {
    print_points(r.critical_points);
    std::printf("nonzero critical values:\n");
    for (std::size_t k = 0; k < r.critical_values_nonzero.size(); ++k)
        std::printf("  %s  (%d point%s)\n", fmt(r.critical_values_nonzero[k]).c_str(), r.cluster_sizes[k],
                    r.cluster_sizes[k] == 1 ? "" : "s");
    std::printf("morse outside       %s\n", r.is_morse_outside ? "yes" : "no");
    std::printf("predicted count     %s (matches: %s)\n", opt(r.predicted_count).c_str(), opt(r.count_matches).c_str());
    std::printf("#B predicted        %lld\n", static_cast<long long>(r.bifurcation_predicted));
    std::printf("#B measured         %lld\n", static_cast<long long>(r.bifurcation_measured));
}

void print_fiber(const FiberReport& r) {
    std::printf("disks               %zu\n", r.surface.disks.size());
    std::printf("bands               %zu\n", r.surface.bands.size());
    std::printf("euler               %lld\n", static_cast<long long>(r.invariants.euler));
    std::printf("boundary            %lld\n", static_cast<long long>(r.invariants.boundary_components));
    std::printf("genus               %lld\n", static_cast<long long>(r.invariants.genus));
    std::printf("components          %lld\n", static_cast<long long>(r.invariants.connected_components));
    std::printf("convention          %s\n", r.surface.twist_convention.c_str());
    std::printf("formula euler       %s (agrees: %s)\n", opt(r.formula_euler).c_str(), opt(r.formula_agrees).c_str());
}

void print_certificate(const PathCertificate& c) {
    std::printf("degree constant        %s\n", c.degree_constant ? "yes" : "no");
    std::printf("all generic            %s\n", c.all_generic ? "yes" : "no");
    std::printf("combinatorics constant %s\n", c.combinatorics_constant ? "yes" : "no");
    std::printf("#B constant            %s\n", opt(c.b_count_constant).c_str());
    for (const auto& [t, why] : c.failures) std::printf("  t = %.6f: %s\n", t, why.c_str());
}

void print_example(const ExampleReport& r) {
    std::printf("t = %s  (%s)\n", fmt(r.t).c_str(), r.regime.c_str());
    for (const auto& c : r.checks)
        std::printf("  [%s] %-28s %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    if (r.morse) print_morse(*r.morse);
}

json example_json(const ExampleReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"t", to_json(r.t)},
            {"regime", r.regime},
            {"chi_zero_fiber", r.chi_zero},
            {"checks", checks},
            {"passed", r.passed()},
            {"morse", r.morse ? to_json(*r.morse) : json(nullptr)}};
}

Point parse_point(const std::string& text) {
    // "x,y" where each coordinate may be complex, e.g. "1+2i,0" or "j,0".
    int depth = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
        if (text[k] == '(') ++depth;
        if (text[k] == ')') --depth;
        if (text[k] == ',' && depth == 0)
            return {parse_complex(text.substr(0, k)), parse_complex(text.substr(k + 1))};
    }
    throw InputError("point must be written as x,y");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arrangelab: complex line arrangements, critical points, deformations and fibers"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "Human-readable tables instead of JSON");

    SolverConfig cfg;
    std::optional<std::uint64_t> seed_flag;
    auto solver_flags = [&](CLI::App* sub) {
        sub->add_option("--residual-tol", cfg.residual_tol, "Residual tolerance for accepted roots");
        sub->add_option("--cluster-tol", cfg.cluster_tol, "Tolerance for merging critical points");
        sub->add_option("--value-tol", cfg.value_tol, "Tolerance for merging critical values");
        sub->add_option("--off-tol", cfg.off_tol, "Minimum |l_i| for a point to be off the arrangement");
    };
    auto seed_option = [&](CLI::App* sub) { sub->add_option("--seed", seed_flag, "Seed (default: ARRANGELAB_SEED or 0)"); };

    std::string input;
    std::string input1;

    auto* info = app.add_subcommand("info", "Combinatorics, genericity and Euler characteristics");
    info->add_option("input", input, "Arrangement document")->required();

    auto* crit = app.add_subcommand("crit", "Critical points off the arrangement");
    crit->add_option("input", input, "Arrangement document")->required();
    solver_flags(crit);
    seed_option(crit);

    auto* morse = app.add_subcommand("morse", "Morse test and critical values");
    morse->add_option("input", input, "Arrangement document")->required();
    solver_flags(morse);
    seed_option(morse);

    int steps = 200;
    bool check_morse = false;
    std::string path_out;
    std::string cert_out;
    auto* deform = app.add_subcommand("deform", "Certified generic path between two arrangements");
    deform->add_option("input0", input, "Start arrangement")->required();
    deform->add_option("input1", input1, "End arrangement")->required();
    deform->add_option("--steps", steps, "Number of samples")->check(CLI::Range(2, 1000000));
    deform->add_flag("--check-morse", check_morse, "Also check the number of critical values along the path");
    deform->add_option("--path-out", path_out, "Write the sampled path here");
    deform->add_option("--cert-out", cert_out, "Write the certificate here");
    solver_flags(deform);
    seed_option(deform);

    double radius = 1.0;
    std::string center = "0,0";
    auto* fiber = app.add_subcommand("fiber", "Ribbon model of the nearby fiber in a ball");
    fiber->add_option("input", input, "Arrangement document")->required();
    fiber->add_option("--radius", radius, "Ball radius")->required();
    fiber->add_option("--center", center, "Ball center x,y");
    seed_option(fiber);

    std::vector<double> viewport{-5, 5, -5, 5};
    int width = 600;
    int height = 600;
    std::optional<double> ball_radius;
    std::string svg_out;
    auto* render = app.add_subcommand("render", "SVG drawing of the real traces");
    render->add_option("input", input, "Arrangement document")->required();
    render->add_option("--viewport", viewport, "xmin xmax ymin ymax")->expected(4)->delimiter(',');
    render->add_option("--width", width, "Image width in pixels");
    render->add_option("--height", height, "Image height in pixels");
    render->add_option("--ball-radius", ball_radius, "Draw a ball of this radius");
    render->add_option("--ball-center", center, "Ball center x,y");
    render->add_option("-o,--output", svg_out, "Output file (default: stdout)");

    std::string t_text;
    auto* example = app.add_subcommand("verify-example", "Checks on f_t = x y (x + y - 4)(x - t y)");
    example->add_option("--t", t_text, "Parameter t: a number, 1+i, j or jbar")->required();
    solver_flags(example);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        cfg.seed = seed_flag.value_or(default_seed());
        const std::uint64_t seed = cfg.seed;

        if (info->parsed()) {
            const auto r = invariant_report(load(input));
            pretty ? print_info(r) : emit(to_json(r));
            return kOk;
        }
        if (crit->parsed()) {
            const auto pts = critical_points(load(input), cfg);
            if (pretty) {
                print_points(pts);
            } else {
                json arr = json::array();
                for (const auto& cp : pts) arr.push_back(to_json(cp));
                emit({{"critical_points", arr}});
            }
            return kOk;
        }
        if (morse->parsed()) {
            const auto r = morse_report(load(input), cfg);
            pretty ? print_morse(r) : emit(to_json(r));
            return kOk;
        }
        if (deform->parsed()) {
            const auto a0 = load(input);
            const auto a1 = load(input1);
            const auto path = link(a0, a1, steps, seed);
            const auto cert = certify_path(path, cfg, check_morse);
            if (!path_out.empty()) write_text(path_out, to_json(path).dump(1) + "\n");
            if (!cert_out.empty()) write_text(cert_out, to_json(cert).dump(2) + "\n");
            if (pretty) {
                std::printf("samples                %zu\n", path.samples().size());
                std::printf("detours                %zu\n", path.detours().size());
                std::printf("max coefficient jump   %.3e\n", max_coefficient_jump(path));
                print_certificate(cert);
            } else {
                json out = {{"certificate", to_json(cert)},
                            {"samples", path.samples().size()},
                            {"detours", path.detours().size()},
                            {"max_coefficient_jump", max_coefficient_jump(path)}};
                if (path_out.empty()) out["path"] = to_json(path);
                emit(out);
            }
            return cert.ok() ? kOk : kVerificationFailed;
        }
        if (fiber->parsed()) {
            const BallSpec ball{parse_point(center), radius};
            const auto r = nearby_fiber_report(load(input), ball, seed);
            pretty ? print_fiber(r) : emit(to_json(r));
            return r.formula_agrees.value_or(true) ? kOk : kVerificationFailed;
        }
        if (render->parsed()) {
            RenderSpec spec;
            spec.xmin = viewport[0];
            spec.xmax = viewport[1];
            spec.ymin = viewport[2];
            spec.ymax = viewport[3];
            spec.width = width;
            spec.height = height;
            if (ball_radius) spec.ball = BallSpec{parse_point(center), *ball_radius};
            const auto r = render_svg(load(input), spec);
            for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
            if (svg_out.empty())
                std::cout << r.svg;
            else
                write_text(svg_out, r.svg);
            return kOk;
        }
        if (example->parsed()) {
            const auto r = verify_example(parse_complex(t_text), cfg);
            pretty ? print_example(r) : emit(example_json(r));
            return r.passed() ? kOk : kVerificationFailed;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const DegenerateLineError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const DuplicateLineError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ForbiddenBandError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const CombinatoricsMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerificationFailed;
    }
    return kOk;
}
