// qcorbit: command-line front end.
//
//   qcorbit eval      --map M --x 1,0
//   qcorbit beltrami  --map M --grid 32 --r-min 0.1 --r-max 1 --fd-step 1e-5
//   qcorbit trace     --map M --x 1,0 --t-hi 1 --t-lo 1e-6 --per-decade 64
//   qcorbit omega     --map M --x 1,0 --t-hi 1 --t-lo 1e-6
//   qcorbit realize   --target T --k-min 20 --k-max 21 --depth 1e-6
//   qcorbit verify    --map M --target T --depth 1e-6 --tol-hausdorff 0.05
//   qcorbit scenario  dehn | oscillating | catalog
//
// M and T are file paths or inline JSON. Exit status: 0 ok, 1 verification
// failed, 2 bad input, 3 I/O error.

#include "qcorbit/realizer.hpp"
#include "qcorbit/geometry.hpp"
#include "qcorbit/report_io.hpp"
#include "qcorbit/rescale.hpp"
#include "qcorbit/scenarios.hpp"
#include "qcorbit/serialize.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qcorbit;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kIoError = 3 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string map_spec;
    std::string target_spec;
    std::string x_text = "1,0";
    double t_hi = 1.0;
    double t_lo = 1e-6;
    int per_decade = 64;
    int grid = 0;  // 0: 32 for beltrami, 100 for verify
    double r_min = 0.1;
    double r_max = 1.0;
    double fd_step = kDefaultFdStep;
    double tol_hausdorff = 0.05;
    double tol_converge = 0.0;  // 0: use the estimator's own tolerance
    double tol_breakpoint = 1e-6;
    double depth = 1e-6;
    int k_min = 20;
    int k_max = 21;
    double alpha_cap = 1.0;
    double t_cap = 0.5;
    bool exact_half_bound = false;
    std::string method = "auto";
    unsigned seed = 0;
    std::string out;
    std::string format = "json";
    std::string scenario;
    int n_max = 6;
    double growth = 2.0;
    double radius = 1.0;
};

std::string read_spec(const std::string& spec, const char* what) {
    std::size_t i = 0;
    while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
    if (i < spec.size() && (spec[i] == '{' || spec[i] == '[')) return spec;
    if (spec.empty()) throw DomainError(std::string("missing ") + what);
    std::ifstream in(spec);
    if (!in) throw IoError("cannot read " + std::string(what) + " file \"" + spec + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MapDescriptor load_map(const std::string& spec) {
    Json j = parse_json_text(read_spec(spec, "--map"));
    // Accept the output of `realize`, which wraps the descriptor.
    if (j.is_object() && !j.contains("kind") && j.contains("map")) j = j.at("map");
    return map_from_json(j);
}

TargetSet load_target(const std::string& spec) {
    TargetSet t = target_from_json(parse_json_text(read_spec(spec, "--target")));
    validate(t);
    return t;
}

PlanarPoint parse_point(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw DomainError("--x must be \"re,im\" or \"re\"");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) throw DomainError("--x must be \"re,im\" or \"re\"");
    }
    in >> std::ws;
    if (!in.eof()) throw DomainError("--x has trailing characters");
    return {re, im};
}

Json config_json(const Config& c, const std::string& command) {
    return Json{{"command", command},
                {"map", c.map_spec},
                {"target", c.target_spec},
                {"x", c.x_text},
                {"t_hi", c.t_hi},
                {"t_lo", c.t_lo},
                {"per_decade", c.per_decade},
                {"grid", c.grid},
                {"r_min", c.r_min},
                {"r_max", c.r_max},
                {"fd_step", c.fd_step},
                {"tol_hausdorff", c.tol_hausdorff},
                {"tol_converge", c.tol_converge},
                {"tol_breakpoint", c.tol_breakpoint},
                {"depth", c.depth},
                {"k_min", c.k_min},
                {"k_max", c.k_max},
                {"alpha_cap", c.alpha_cap},
                {"t_cap", c.t_cap},
                {"exact_half_bound", c.exact_half_bound},
                {"method", c.method},
                {"seed", c.seed},
                {"format", c.format},
                {"scenario", c.scenario},
                {"n_max", c.n_max},
                {"growth", c.growth},
                {"R", c.radius}};
}

class Output {
public:
    explicit Output(const std::string& path) : path_(path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot open output file \"" + path + "\"");
        }
    }
    std::ostream& stream() { return path_.empty() ? std::cout : file_; }
    void finish() {
        stream().flush();
        if (!stream()) throw IoError("write failed");
    }

private:
    std::string path_;
    std::ofstream file_;
};

void emit_json(const Config& c, const Json& j) {
    Output out(c.out);
    out.stream() << j.dump(2) << '\n';
    out.finish();
}

void require_csv_or_json(const Config& c) {
    if (c.format != "csv" && c.format != "json") throw DomainError("--format must be csv or json");
}

int run_eval(const Config& c) {
    const MapDescriptor map = load_map(c.map_spec);
    const PlanarPoint x = parse_point(c.x_text);
    const PlanarPoint w = eval(map, x);
    if (c.format == "csv") {
        Output out(c.out);
        const PlanarPoint pts[] = {w};
        write_points_csv(out.stream(), pts);
        out.finish();
    } else {
        emit_json(c, Json{{"config", config_json(c, "eval")}, {"map", to_json(map)}, {"value", point_to_json(w)}});
    }
    return kOk;
}

int run_beltrami(const Config& c) {
    const MapDescriptor map = load_map(c.map_spec);
    if (!(c.fd_step > 0.0)) throw DomainError("--fd-step must be positive");
    const PointCloud grid = polar_grid(c.r_min, c.r_max, c.grid, c.grid);
    const auto samples = kernels::beltrami_sweep(map, grid, c.fd_step);
    if (c.format == "csv") {
        Output out(c.out);
        write_beltrami_csv(out.stream(), samples);
        out.finish();
    } else {
        Json j{{"config", config_json(c, "beltrami")}, {"map", to_json(map)}};
        j["field"] = beltrami_to_json(samples);
        emit_json(c, j);
    }
    return kOk;
}

OrbitTrace make_trace(const Config& c, const MapDescriptor& map) {
    if (!(c.t_lo > 0.0) || !(c.t_lo < c.t_hi)) throw DomainError("need 0 < --t-lo < --t-hi");
    return trace_orbit(map, parse_point(c.x_text), c.t_hi, c.t_lo, c.per_decade,
                       radius_method_from_string(c.method));
}

int run_trace(const Config& c) {
    const MapDescriptor map = load_map(c.map_spec);
    const OrbitTrace trace = make_trace(c, map);
    if (c.format == "csv") {
        Output out(c.out);
        write_trace_csv(out.stream(), trace);
        out.finish();
    } else {
        emit_json(c, Json{{"config", config_json(c, "trace")}, {"map", to_json(map)}, {"trace", trace_to_json(trace)}});
    }
    return kOk;
}

int run_omega(const Config& c) {
    const MapDescriptor map = load_map(c.map_spec);
    const OrbitTrace trace = make_trace(c, map);
    LimitSetEstimate est = omega_limit(trace);
    if (c.tol_converge > 0.0) {
        est.tolerance = c.tol_converge;
        est.converged = !est.stabilization.empty() && est.stabilization.back() <= c.tol_converge;
    }
    const RingBounds rings = ring_bound_estimate(trace);
    if (c.format == "csv") {
        Output out(c.out);
        write_points_csv(out.stream(), est.points);
        out.finish();
    } else {
        emit_json(c, Json{{"config", config_json(c, "omega")},
                          {"map", to_json(map)},
                          {"rho_backend", to_string(trace.backend)},
                          {"ring_bounds", Json::array({rings.lo, rings.hi})},
                          {"omega", limit_set_to_json(est)}});
    }
    return est.converged ? kOk : kVerifyFailed;
}

SynthesisOptions synthesis_options(const Config& c) {
    SynthesisOptions o;
    o.k_min = c.k_min;
    o.k_max = c.k_max;
    o.alpha.cap = c.alpha_cap;
    o.radial.cap = c.t_cap;
    o.alpha.bound_distortion = o.radial.bound_distortion = !c.exact_half_bound;
    return o;
}

int run_realize(const Config& c) {
    const TargetSet target = load_target(c.target_spec);
    const Synthesis s = synthesize_to_depth(target, c.depth, synthesis_options(c));
    Json j = synthesis_to_json(s);
    j["config"] = config_json(c, "realize");
    j["target"] = target_to_json(target);
    emit_json(c, j);
    return kOk;
}

int run_verify(const Config& c) {
    const MapDescriptor map = load_map(c.map_spec);
    const TargetSet target = load_target(c.target_spec);
    VerifyOptions o;
    o.depth = c.depth;
    o.samples_per_decade = c.per_decade;
    o.tol_hausdorff = c.tol_hausdorff;
    o.tol_breakpoint = c.tol_breakpoint;
    o.fd_relative_step = c.fd_step;
    o.grid_radii = o.grid_angles = c.grid;
    const VerificationReport rep = verify_realization(map, target, o);
    if (c.format == "csv") {
        Output out(c.out);
        write_points_csv(out.stream(), rep.omega.points);
        out.finish();
    } else {
        Json j = verification_to_json(rep);
        j["verify_options"] = std::move(j["config"]);
        j["config"] = config_json(c, "verify");
        j["target"] = target_to_json(target);
        emit_json(c, j);
    }
    return rep.passed ? kOk : kVerifyFailed;
}

int run_scenario(const Config& c) {
    if (c.scenario == "dehn") {
        const DehnSchedule schedule{c.radius, c.n_max, c.growth};
        const double tol = c.tol_converge > 0.0 ? c.tol_converge : 0.1;
        const DehnPairReport rep = dehn_derivative_pair(schedule, dehn_default_grid(schedule), tol);
        Json j{{"config", config_json(c, "scenario")}, {"map", to_json(dehn_twist_map(schedule))}};
        j["report"] = dehn_report_to_json(rep);
        emit_json(c, j);
        return rep.inside_monotone && rep.separated && !rep.inconclusive ? kOk : kVerifyFailed;
    }
    if (c.scenario == "oscillating") {
        const AngleProfile profile = default_oscillation_profile();
        const OscillationRun run = oscillation_experiment(profile, parse_point(c.x_text).real(), c.t_lo, c.per_decade);
        const bool ok = run.omega.converged && run.hausdorff <= c.tol_hausdorff;
        if (c.format == "csv") {
            Output out(c.out);
            write_trace_csv(out.stream(), run.trace);
            out.finish();
        } else {
            emit_json(c, Json{{"config", config_json(c, "scenario")},
                              {"map", to_json(oscillating_map(profile))},
                              {"hausdorff", run.hausdorff},
                              {"passed", ok},
                              {"omega", limit_set_to_json(run.omega)}});
        }
        return ok ? kOk : kVerifyFailed;
    }
    if (c.scenario == "catalog") {
        Json entries = Json::array();
        bool ok = true;
        for (const auto& e : builtin_catalog()) {
            const OrbitTrace trace = trace_orbit(e.map, e.probe, e.t_hi, e.t_lo, std::max(c.per_decade, 256));
            const LimitSetEstimate est = omega_limit(trace);
            const double h = hausdorff(est.points, e.expected);
            ok = ok && est.converged && h <= 1e-2;
            entries.push_back(Json{{"name", e.name},
                                   {"map", to_json(e.map)},
                                   {"probe", point_to_json(e.probe)},
                                   {"expected_orbit", e.expected_orbit},
                                   {"illustrative", e.illustrative},
                                   {"hausdorff", h},
                                   {"converged", est.converged}});
        }
        emit_json(c, Json{{"config", config_json(c, "scenario")}, {"entries", std::move(entries)}, {"passed", ok}});
        return ok ? kOk : kVerifyFailed;
    }
    throw DomainError("unknown scenario \"" + c.scenario + "\" (expected dehn, oscillating or catalog)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orbit curves, omega-limit sets and realizations for planar quasiconformal maps"};
    app.require_subcommand(1);
    app.fallthrough();
    Config c;

    app.add_option("--map", c.map_spec, "Map descriptor: JSON file path or inline JSON");
    app.add_option("--target", c.target_spec, "Target polyline: JSON file path or inline JSON");
    app.add_option("--x", c.x_text, "Probe point \"re,im\"")->capture_default_str();
    app.add_option("--t-hi", c.t_hi, "Largest t of the trace")->capture_default_str();
    app.add_option("--t-lo", c.t_lo, "Smallest t of the trace")->capture_default_str();
    app.add_option("--per-decade", c.per_decade, "Trace samples per decade")->capture_default_str()->check(
        CLI::Range(8, 1 << 20));
    app.add_option("--grid", c.grid, "Beltrami grid points per axis (default 32, or 100 for verify)")->check(
        CLI::Range(2, 4096));
    app.add_option("--r-min", c.r_min, "Inner radius of the Beltrami grid")->capture_default_str();
    app.add_option("--r-max", c.r_max, "Outer radius of the Beltrami grid")->capture_default_str();
    app.add_option("--fd-step", c.fd_step, "Finite-difference step relative to |z|")->capture_default_str();
    app.add_option("--tol-hausdorff", c.tol_hausdorff, "Hausdorff tolerance")->capture_default_str()->check(
        CLI::PositiveNumber);
    app.add_option("--tol-converge", c.tol_converge, "Convergence tolerance override (0 keeps the default)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app.add_option("--tol-breakpoint", c.tol_breakpoint, "Breakpoint fidelity tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--depth", c.depth, "Trace depth for realize/verify")->capture_default_str()->check(
        CLI::PositiveNumber);
    app.add_option("--k-min", c.k_min, "First cover index")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--k-max", c.k_max, "Last cover index")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--alpha-cap", c.alpha_cap, "Cap on |alpha| of spiral rings")->capture_default_str()->check(
        CLI::PositiveNumber);
    app.add_option("--t-cap", c.t_cap, "Cap on r_in/r_out of radial rings")->capture_default_str()->check(
        CLI::Range(1e-300, 0.999));
    app.add_flag("--exact-half-bound", c.exact_half_bound,
                 "Use half the admissibility bound without the distortion search");
    app.add_option("--method", c.method, "Mean-radius backend")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "analytic", "contour", "raster"}));
    app.add_option("--seed", c.seed, "Recorded in reports; all backends are deterministic")->capture_default_str();
    app.add_option("--out", c.out, "Output file (default stdout)");
    app.add_option("--format", c.format, "Output format")->capture_default_str()->check(
        CLI::IsMember({"csv", "json"}));
    app.add_option("--n-max", c.n_max, "Dehn schedule depth")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--growth", c.growth, "Dehn schedule growth")->capture_default_str();
    app.add_option("--R", c.radius, "Dehn scenario radius")->capture_default_str();

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a map at --x");
    auto* beltrami_cmd = app.add_subcommand("beltrami", "Finite-difference Beltrami field on a polar grid");
    auto* trace_cmd = app.add_subcommand("trace", "Orbit curve gamma_x(t)");
    auto* omega_cmd = app.add_subcommand("omega", "Omega-limit estimate of gamma_x");
    auto* realize_cmd = app.add_subcommand("realize", "Synthesize a map realizing --target");
    auto* verify_cmd = app.add_subcommand("verify", "Verify a map against --target");
    auto* scenario_cmd = app.add_subcommand("scenario", "Run a packaged experiment");
    scenario_cmd->add_option("name", c.scenario, "dehn, oscillating or catalog")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kBadInput;
    }

    try {
        require_csv_or_json(c);
        if (c.grid == 0) c.grid = *verify_cmd ? 100 : 32;
        if (*eval_cmd) return run_eval(c);
        if (*beltrami_cmd) return run_beltrami(c);
        if (*trace_cmd) return run_trace(c);
        if (*omega_cmd) return run_omega(c);
        if (*realize_cmd) return run_realize(c);
        if (*verify_cmd) return run_verify(c);
        if (*scenario_cmd) return run_scenario(c);
    } catch (const IoError& e) {
        std::cerr << "qcorbit: I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const ParseError& e) {
        std::cerr << "qcorbit: parse error: " << e.what() << '\n';
        return kBadInput;
    } catch (const qcorbit::Error& e) {
        std::cerr << "qcorbit: " << e.what() << '\n';
        return kBadInput;
    }
    return kBadInput;
}
