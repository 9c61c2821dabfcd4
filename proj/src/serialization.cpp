#include "beamloop/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "beamloop/unimodal.hpp"

namespace beamloop {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("field '") + key + "' has the wrong type");
  }
}

Column column_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("column must be an array of bits");
  std::vector<std::uint8_t> bits;
  for (const auto& v : j) {
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
      throw std::invalid_argument("column entries must be 0 or 1");
    }
    bits.push_back(static_cast<std::uint8_t>(v.get<int>()));
  }
  return Column(std::move(bits));
}

Json column_to_json(const Column& c) {
  Json out = Json::array();
  for (auto b : c.bits()) out.push_back(static_cast<int>(b));
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

Json loop_to_json(const FeedbackLoop& loop) {
  Json columns = Json::array();
  const FeedbackLoop canonical = loop.canonical();
  for (const auto& c : canonical.columns()) columns.push_back(column_to_json(c));
  return Json{{"b", loop.rows()}, {"d", loop.delay()}, {"columns", std::move(columns)}};
}

FeedbackLoop loop_from_json(const Json& j) {
  const int b = field<int>(j, "b");
  const int d = field<int>(j, "d");
  const Json columns = field<Json>(j, "columns");
  if (!columns.is_array()) throw std::invalid_argument("field 'columns' must be an array");
  std::vector<Column> cols;
  for (const auto& c : columns) {
    cols.push_back(column_from_json(c));
    if (cols.back().size() != static_cast<std::size_t>(b)) throw std::invalid_argument("column length differs from b");
  }
  if (cols.empty()) throw std::invalid_argument("empty loop");
  return FeedbackLoop(std::move(cols), b, d);
}

Json beams_to_json(const ScanningBeamSet& beams) {
  Json list = Json::array();
  for (int slot = 1; slot <= beams.rows(); ++slot) {
    for (const auto& [prefix, beam] : beams.beams(slot)) {
      const double end = beam.is_full() ? beam.start() + kTwoPi : beam.end();
      list.push_back(Json{{"slot", slot}, {"prefix", column_to_json(prefix)}, {"start", beam.start()}, {"end", end}});
    }
  }
  return Json{{"b", beams.rows()}, {"d", beams.delay()}, {"beams", std::move(list)}};
}

ScanningBeamSet beams_from_json(const Json& j) {
  ScanningBeamSet out(field<int>(j, "b"), field<int>(j, "d"));
  const Json list = field<Json>(j, "beams");
  if (!list.is_array()) throw std::invalid_argument("field 'beams' must be an array");
  for (const auto& item : list) {
    const int slot = field<int>(item, "slot");
    const Column prefix = column_from_json(field<Json>(item, "prefix"));
    const double start = field<double>(item, "start");
    const double end = field<double>(item, "end");
    if (!std::isfinite(start) || !std::isfinite(end) || start < 0.0 || start >= kTwoPi || end < 0.0 ||
        end > start + kTwoPi * (1.0 + 1e-12)) {
      throw std::invalid_argument("beam needs 0 <= start < 2pi and 0 <= end <= start + 2pi");
    }
    AngularInterval beam;
    if (end == start) {
      beam = AngularInterval::empty_at(start);
    } else if (end - start >= kTwoPi * (1.0 - 1e-12)) {
      beam = AngularInterval::full_circle(start);
    } else {
      beam = AngularInterval::arc(start, end);
    }
    if (slot < 1 || slot > out.rows()) throw std::invalid_argument("beam slot out of range");
    out.set_beam(slot, prefix, beam);
  }
  return out;
}

Json prior_to_json(const Prior& prior) {
  switch (prior.kind()) {
    case Prior::Kind::uniform:
      return Json{{"kind", "uniform"}};
    case Prior::Kind::truncated_gaussian:
      return Json{{"kind", "truncated_gaussian"}, {"mean", prior.mean()}, {"sigma", prior.sigma()}};
    case Prior::Kind::piecewise_linear: {
      Json knots = Json::array();
      for (const auto& [x, f] : prior.knots()) knots.push_back(Json::array({x, f}));
      return Json{{"kind", "piecewise"}, {"knots", std::move(knots)}};
    }
  }
  return Json();
}

Prior prior_from_json(const Json& j) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "uniform") return Prior::uniform();
  if (kind == "truncated_gaussian") return Prior::truncated_gaussian(field<double>(j, "mean"), field<double>(j, "sigma"));
  if (kind == "piecewise") {
    std::vector<std::pair<double, double>> knots;
    for (const auto& k : field<Json>(j, "knots")) {
      if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
        throw std::invalid_argument("knots must be [angle, density] pairs");
      }
      knots.emplace_back(k[0].get<double>(), k[1].get<double>());
    }
    return Prior::piecewise_linear(std::move(knots));
  }
  throw std::invalid_argument("unknown prior kind '" + kind + "'");
}

Json report_to_json(const GainReport& report) {
  Json regions = Json::array();
  for (const auto& r : report.per_region) {
    regions.push_back(Json{{"region", column_to_json(r.feedback)},
                           {"mass", r.mass},
                           {"width", r.width},
                           {"gain_contribution", r.gain_contribution}});
  }
  return Json{{"expected_gain", report.expected_gain},
              {"expected_beamwidth", report.expected_beamwidth},
              {"per_region", std::move(regions)}};
}

GainReport report_from_json(const Json& j) {
  GainReport report;
  report.expected_gain = field<double>(j, "expected_gain");
  report.expected_beamwidth = field<double>(j, "expected_beamwidth");
  for (const auto& r : field<Json>(j, "per_region")) {
    report.per_region.push_back(RegionGain{column_from_json(field<Json>(r, "region")), field<double>(r, "mass"),
                                           field<double>(r, "width"), field<double>(r, "gain_contribution")});
  }
  return report;
}

std::string report_to_csv(const GainReport& report) {
  std::string out = "region,mass,width,gain_contribution\n";
  for (const auto& r : report.per_region) {
    out += r.feedback.to_string() + "," + format_double(r.mass) + "," + format_double(r.width) + "," +
           format_double(r.gain_contribution) + "\n";
  }
  return out;
}

Json strategy_to_json(const StrategyResult& r) {
  return Json{{"strategy", r.strategy},
              {"b", r.b},
              {"d", r.d},
              {"total_duration", r.total_duration},
              {"expected_gain", r.expected_gain},
              {"expected_beamwidth", r.expected_beamwidth},
              {"stderr", r.standard_error}};
}

std::string strategy_csv_header() { return "strategy,b,d,total_duration,expected_gain,expected_beamwidth,stderr"; }

std::string strategy_csv_row(const StrategyResult& r) {
  return r.strategy + "," + std::to_string(r.b) + "," + std::to_string(r.d) + "," + std::to_string(r.total_duration) +
         "," + format_double(r.expected_gain) + "," + format_double(r.expected_beamwidth) + "," +
         format_double(r.standard_error);
}

std::vector<StrategyResult> strategies_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty strategy table");
  const auto header = split(line, ',');
  const auto expected = split(strategy_csv_header(), ',');
  if (header.size() < expected.size()) throw std::invalid_argument("unexpected strategy table header");
  const std::size_t offset = header.size() - expected.size();
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (header[offset + k] != expected[k]) throw std::invalid_argument("unexpected strategy table header");
  }
  std::vector<StrategyResult> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw std::invalid_argument("ragged strategy table row");
    try {
      out.push_back(StrategyResult{cells[offset], std::stoi(cells[offset + 1]), std::stoi(cells[offset + 2]),
                                   std::stoi(cells[offset + 3]), std::stod(cells[offset + 4]),
                                   std::stod(cells[offset + 5]), std::stod(cells[offset + 6])});
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed strategy table row");
    }
  }
  return out;
}

std::string cardinality_table_csv(int b_max, int d_max) {
  if (b_max < 1 || d_max < 1) throw std::invalid_argument("b and d must be at least 1");
  std::string out = "b,d,N*,M*\n";
  for (int b = 1; b <= b_max; ++b) {
    for (int d = 1; d <= d_max; ++d) {
      const auto m = mcl_cardinality(b, d);
      out += std::to_string(b) + "," + std::to_string(d) + "," + std::to_string(m.columns) + "," +
             std::to_string(m.unique_columns) + "\n";
    }
  }
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace beamloop
