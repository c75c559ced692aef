#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stv/audit.hpp"
#include "stv/engine.hpp"
#include "stv/worst_case.hpp"

namespace stv {

using Json = nlohmann::ordered_json;

// Fixed-width votes-by-round table in the style election offices publish:
// one row per candidate, one column per round; a candidate's cells run
// while they are in the running and a '*' marks the round they won a seat.
// Values are rounded half-up to `decimals` (0..5) with trailing zeros
// dropped.
std::string render_round_table(const TabulationRecord& record, int decimals);

// Two-column CSV "count,margin" with exact decimal values.
std::string render_margin_csv(const std::vector<std::pair<long long, Rational>>& curve);

inline constexpr std::string_view kReportSchema = "stv-report/1";

// All vote values serialize as decimal strings (or "num/den" for awkward
// denominators), never as binary floats. parse(write(x)) == x.
Json record_to_json(const TabulationRecord& record);
TabulationRecord record_from_json(const Json& j);

Json report_to_json(const ParadoxReport& report);
ParadoxReport report_from_json(const Json& j);

Json certificate_to_json(const ConstructionCertificate& certificate);
ConstructionCertificate certificate_from_json(const Json& j);

std::string write_report_json(const ParadoxReport& report);
std::string write_report_json(const ConstructionCertificate& certificate);

}  // namespace stv
