#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>

#include <json.hpp>

#include "etssc/simulation.hpp"

namespace etssc {

/// Exact CSV header of a nonlinear-loop trace. Average traces append
/// ",system" and carry the value "average" in that column.
inline constexpr std::string_view kTraceHeader =
    "t,x,y,theta,xhat,yhat,thetahat,Q,G1,G2,G3,u1,u2,xi,event";

/// Writes the trace with 17 significant digits per value.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace);

/// Inverse of write_trace_csv (rows only; the event log is rebuilt from the
/// event column). Throws ValidationError on malformed input.
SimulationTrace read_trace_csv(std::istream& in);

void export_trace(const SimulationTrace& trace, const std::filesystem::path& path);

nlohmann::json to_json(const TheoryReport& report);
nlohmann::json to_json(const RunMetrics& metrics);

/// Metrics as pretty-printed JSON. Throws IoError with the path on failure.
void export_metrics(const RunMetrics& metrics, const std::filesystem::path& path);
void export_json(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace etssc
