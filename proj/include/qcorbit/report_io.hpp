#pragma once

// CSV and JSON export of traces, point clouds, Beltrami fields and reports.
// CSV columns: t,re,im (traces); re,im (point clouds); x,y,|mu|,K
// (Beltrami fields). Numbers are printed with 17 significant digits.

#include "qcorbit/kernels.hpp"
#include "qcorbit/realizer.hpp"
#include "qcorbit/rescale.hpp"
#include "qcorbit/scenarios.hpp"
#include "qcorbit/serialize.hpp"

#include <ostream>
#include <span>
#include <string>

namespace qcorbit {

std::string format_number(double v);

void write_trace_csv(std::ostream& out, const OrbitTrace& trace);
void write_points_csv(std::ostream& out, std::span<const PlanarPoint> points);
void write_beltrami_csv(std::ostream& out, std::span<const kernels::BeltramiSample> samples);

Json points_to_json(std::span<const PlanarPoint> points);
Json trace_to_json(const OrbitTrace& trace);
Json limit_set_to_json(const LimitSetEstimate& estimate);
Json beltrami_to_json(std::span<const kernels::BeltramiSample> samples);
Json target_to_json(const TargetSet& target);
TargetSet target_from_json(const Json& j);
Json synthesis_to_json(const Synthesis& synthesis);
Json verification_to_json(const VerificationReport& report);
Json dehn_report_to_json(const DehnPairReport& report);

}  // namespace qcorbit
