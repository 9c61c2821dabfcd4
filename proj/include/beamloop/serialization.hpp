#pragma once

#include <string>
#include <vector>

#include "beamloop/beam_geometry.hpp"
#include "beamloop/loop.hpp"
#include "beamloop/optimizer.hpp"
#include "beamloop/prior.hpp"
#include "beamloop/simulator.hpp"
#include "json.hpp"

namespace beamloop {

using Json = nlohmann::json;

// 17 significant digits, enough to read back the same double.
std::string format_double(double value);

// {"b", "d", "columns"} with columns in canonical rotation order.
Json loop_to_json(const FeedbackLoop& loop);
FeedbackLoop loop_from_json(const Json& j);

// {"b", "d", "beams": [{"slot", "prefix", "start", "end"}]}. Angles are circle
// positions in [0, 2pi), so a wrapping arc has end < start. A full circle is
// written with end = start + 2pi and an empty beam with end = start.
Json beams_to_json(const ScanningBeamSet& beams);
ScanningBeamSet beams_from_json(const Json& j);

Json prior_to_json(const Prior& prior);
Prior prior_from_json(const Json& j);

Json report_to_json(const GainReport& report);
GainReport report_from_json(const Json& j);
// Header region,mass,width,gain_contribution; region is the feedback bits.
std::string report_to_csv(const GainReport& report);

Json strategy_to_json(const StrategyResult& result);
std::string strategy_csv_header();
std::string strategy_csv_row(const StrategyResult& result);
std::vector<StrategyResult> strategies_from_csv(const std::string& csv);

// Rows b,d,N*,M* for 1 <= b <= b_max, 1 <= d <= d_max.
std::string cardinality_table_csv(int b_max, int d_max);

// Parses JSON text; syntax and schema errors become std::invalid_argument.
Json parse_json(const std::string& text);
std::string read_file(const std::string& path);

}  // namespace beamloop
