#include "qcorbit/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qcorbit {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trace_csv(std::ostream& out, const OrbitTrace& trace) {
    out << "t,re,im\n";
    for (const auto& s : trace.samples)
        out << format_number(s.t) << ',' << format_number(s.value.real()) << ',' << format_number(s.value.imag())
            << '\n';
}

void write_points_csv(std::ostream& out, std::span<const PlanarPoint> points) {
    out << "re,im\n";
    for (const auto& z : points) out << format_number(z.real()) << ',' << format_number(z.imag()) << '\n';
}

void write_beltrami_csv(std::ostream& out, std::span<const kernels::BeltramiSample> samples) {
    out << "x,y,|mu|,K\n";
    for (const auto& s : samples) {
        const double m = std::abs(s.mu);
        const double K = m < 1.0 ? (1.0 + m) / (1.0 - m) : INFINITY;
        out << format_number(s.z.real()) << ',' << format_number(s.z.imag()) << ',' << format_number(m) << ','
            << format_number(K) << '\n';
    }
}

Json points_to_json(std::span<const PlanarPoint> points) {
    Json arr = Json::array();
    for (const auto& z : points) arr.push_back(point_to_json(z));
    return arr;
}

Json trace_to_json(const OrbitTrace& trace) {
    Json samples = Json::array();
    for (const auto& s : trace.samples) samples.push_back(Json::array({s.t, s.value.real(), s.value.imag()}));
    return Json{{"x", point_to_json(trace.x)},
                {"t_hi", trace.t_hi},
                {"t_lo", trace.t_lo},
                {"samples_per_decade", trace.samples_per_decade},
                {"rho_backend", to_string(trace.backend)},
                {"columns", Json::array({"t", "re", "im"})},
                {"samples", std::move(samples)}};
}

Json limit_set_to_json(const LimitSetEstimate& estimate) {
    return Json{{"tail_depths", estimate.tail_depths},
                {"stabilization", estimate.stabilization},
                {"tolerance", estimate.tolerance},
                {"converged", estimate.converged},
                {"points", points_to_json(estimate.points)}};
}

Json beltrami_to_json(std::span<const kernels::BeltramiSample> samples) {
    Json rows = Json::array();
    double k_max = 1.0;
    bool all_below = true;
    for (const auto& s : samples) {
        const double m = std::abs(s.mu);
        if (m < 1.0)
            k_max = std::max(k_max, (1.0 + m) / (1.0 - m));
        else
            all_below = false;
        rows.push_back(Json{{"z", point_to_json(s.z)}, {"mu", point_to_json(s.mu)}, {"reliable", s.reliable}});
    }
    return Json{{"K_max", k_max}, {"all_mu_below_one", all_below}, {"grid", std::move(rows)}};
}

Json target_to_json(const TargetSet& target) {
    return Json{{"C", target.C}, {"polyline", points_to_json(target.polyline)}};
}

TargetSet target_from_json(const Json& j) {
    TargetSet target;
    const Json* poly = &j;
    if (j.is_object()) {
        if (!j.contains("polyline")) throw ParseError("target object needs a \"polyline\" field");
        poly = &j.at("polyline");
    }
    if (!poly->is_array()) throw ParseError("target polyline must be an array of [re, im] points");
    for (const auto& p : *poly) target.polyline.push_back(point_from_json(p));
    if (j.is_object() && j.contains("C")) {
        if (!j.at("C").is_number()) throw ParseError("field \"C\" must be a number");
        target.C = j.at("C").get<double>();
    } else {
        // Smallest annulus holding the vertices.
        target.C = 1.0;
        for (const auto& z : target.polyline)
            if (std::abs(z) > 0.0) target.C = std::max({target.C, std::abs(z), 1.0 / std::abs(z)});
    }
    return target;
}

Json synthesis_to_json(const Synthesis& synthesis) {
    Json blocks = Json::array();
    for (const auto& b : synthesis.blocks) blocks.push_back(Json{{"k", b.k}, {"segments", b.path.size()}});
    return Json{{"map", to_json(synthesis.map)},
                {"distortion_bound", synthesis.distortion_bound},
                {"r_end", synthesis.r_end},
                {"blocks", std::move(blocks)}};
}

Json verification_to_json(const VerificationReport& report) {
    const auto& o = report.options;
    Json config{{"depth", o.depth},
                {"t_hi", report.trace.t_hi},
                {"samples_per_decade", o.samples_per_decade},
                {"tol_hausdorff", o.tol_hausdorff},
                {"tol_breakpoint", o.tol_breakpoint},
                {"distortion_limit", report.distortion_limit},
                {"grid_radii", o.grid_radii},
                {"grid_angles", o.grid_angles},
                {"fd_relative_step", o.fd_relative_step},
                {"target_spacing", o.target_spacing}};
    return Json{{"config", std::move(config)},
                {"passed", report.passed},
                {"hausdorff", report.hausdorff},
                {"breakpoint_error", report.breakpoint_error},
                {"max_distortion", report.max_distortion},
                {"all_mu_below_one", report.all_mu_below_one},
                {"grid_points", report.grid_points},
                {"unreliable_points", report.unreliable_points},
                {"ring_bounds", Json::array({report.rings.lo, report.rings.hi})},
                {"omega", Json{{"tail_depths", report.omega.tail_depths},
                               {"stabilization", report.omega.stabilization},
                               {"tolerance", report.omega.tolerance},
                               {"converged", report.omega.converged},
                               {"point_count", report.omega.points.size()}}},
                {"rho_backend", to_string(report.trace.backend)}};
}

Json dehn_report_to_json(const DehnPairReport& report) {
    Json table = Json::array();
    for (std::size_t i = 0; i < report.n.size(); ++i)
        table.push_back(Json{{"n", report.n[i]},
                             {"delta", report.delta.t_sequence[i]},
                             {"epsilon", report.epsilon.t_sequence[i]},
                             {"inside", report.inside_discrepancy[i]},
                             {"annulus", report.annulus_discrepancy[i]}});
    return Json{{"table", std::move(table)},
                {"inside_monotone", report.inside_monotone},
                {"separated", report.separated},
                {"inconclusive", report.inconclusive},
                {"delta_converged", report.delta.converged},
                {"epsilon_converged", report.epsilon.converged},
                {"delta_sup_distance", report.delta.sup_distance},
                {"epsilon_sup_distance", report.epsilon.sup_distance}};
}

}  // namespace qcorbit
