#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "beamloop/optimizer.hpp"
#include "beamloop/serialization.hpp"
#include "beamloop/simulator.hpp"
#include "beamloop/unimodal.hpp"

namespace beamloop::cli {

namespace {

struct Config {
  int b = 0;
  int d = 0;
  std::string prior;
  std::uint64_t seed = 1;
  std::size_t n = 0;
  std::vector<double> targets;
  std::vector<int> delays;
  std::string out;
  std::string format = "json";
  std::string objective = "gain";
  std::string strategy = "optimal";
  std::string beams;
  std::string gap = "d";
  int b_max = 16;
  int d_max = 10;
  int max_duration = 0;
};

void require_bd(const Config& c) {
  if (c.b < 1 || c.d < 1) throw std::invalid_argument("--b and --d must be at least 1");
}

// Prior from a file path or an inline JSON object; uniform when unset.
Prior load_prior(const std::string& spec) {
  if (spec.empty()) return Prior::uniform();
  const auto text = !spec.empty() && spec.front() == '{' ? spec : read_file(spec);
  return prior_from_json(parse_json(text));
}

BisectionGap parse_gap(const std::string& gap) {
  if (gap == "d") return BisectionGap::delay;
  if (gap == "d+1") return BisectionGap::delay_plus_one;
  throw std::invalid_argument("--gap must be d or d+1");
}

Objective parse_objective(const std::string& objective) {
  if (objective == "gain") return Objective::max_gain;
  if (objective == "beamwidth") return Objective::min_beamwidth;
  throw std::invalid_argument("--objective must be gain or beamwidth");
}

Design design_for(const std::string& strategy, int b, int d, const Prior& prior, BisectionGap gap,
                  Objective objective = Objective::max_gain) {
  if (strategy == "optimal") return optimal_design(b, d, prior, objective);
  if (strategy == "non_interactive") return non_interactive_design(b, d, prior, objective);
  if (strategy == "modified_es") return modified_es_design(b, d, prior);
  if (strategy == "bisection") return bisection_design(b, d, prior, gap);
  throw std::invalid_argument("unknown strategy '" + strategy + "'");
}

std::string cmd_mcl(const Config& c) {
  require_bd(c);
  const auto loop = build_mcl(c.b, c.d);
  const auto card = mcl_cardinality(c.b, c.d);
  if (c.format == "csv") {
    return "b,d,N*,M*\n" + std::to_string(c.b) + "," + std::to_string(c.d) + "," + std::to_string(card.columns) + "," +
           std::to_string(card.unique_columns) + "\n";
  }
  return loop_to_json(loop).dump() + "\nN*=" + std::to_string(card.columns) + " M*=" +
         std::to_string(card.unique_columns) + "\n";
}

std::string cmd_cardinality(const Config& c) {
  if (c.b_max < 1 || c.d_max < 1) throw std::invalid_argument("b and d must be at least 1");
  if (c.format == "json") {
    Json rows = Json::array();
    for (int b = 1; b <= c.b_max; ++b) {
      for (int d = 1; d <= c.d_max; ++d) {
        const auto m = mcl_cardinality(b, d);
        rows.push_back(Json{{"b", b}, {"d", d}, {"N*", m.columns}, {"M*", m.unique_columns}});
      }
    }
    return rows.dump() + "\n";
  }
  return cardinality_table_csv(c.b_max, c.d_max);
}

std::string cmd_design(const Config& c) {
  require_bd(c);
  const Prior prior = load_prior(c.prior);
  const auto design = optimal_design(c.b, c.d, prior, parse_objective(c.objective));
  if (!c.beams.empty()) {
    std::ofstream file(c.beams);
    if (!file) throw std::runtime_error("cannot write '" + c.beams + "'");
    file << beams_to_json(design.beams).dump(2) << "\n";
  }
  if (c.format == "csv") return report_to_csv(design.report);
  Json endpoints = Json::array();
  for (double x : design.components.endpoints()) endpoints.push_back(x);
  Json out{{"beam_set", beams_to_json(design.beams)},
           {"loop", loop_to_json(design.loop)},
           {"endpoints", std::move(endpoints)},
           {"report", report_to_json(design.report)}};
  return out.dump(2) + "\n";
}

std::string emit_strategies(const std::vector<StrategyResult>& rows, const std::vector<double>& targets,
                            const std::string& format) {
  if (format == "json") {
    Json list = Json::array();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      Json item = strategy_to_json(rows[k]);
      if (!targets.empty()) item["target_gain"] = targets[k];
      list.push_back(std::move(item));
    }
    return list.dump(2) + "\n";
  }
  std::string out = (targets.empty() ? "" : "target_gain,") + strategy_csv_header() + "\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!targets.empty()) out += format_double(targets[k]) + ",";
    out += strategy_csv_row(rows[k]) + "\n";
  }
  return out;
}

std::string cmd_simulate(const Config& c) {
  if (c.n < 1) throw std::invalid_argument("--n must be at least 1");
  const Prior prior = load_prior(c.prior);
  StrategyResult result;
  if (!c.beams.empty()) {
    const auto beams = beams_from_json(parse_json(read_file(c.beams)));
    result = monte_carlo_gain(beams, prior, c.n, c.seed);
  } else {
    require_bd(c);
    const auto design = design_for(c.strategy, c.b, c.d, prior, parse_gap(c.gap), parse_objective(c.objective));
    result = monte_carlo_gain(design.beams, prior, c.n, c.seed);
    result.strategy = design.strategy;
    result.d = design.delay;
    result.total_duration = design.schedule.total_duration();
  }
  return emit_strategies({result}, {}, c.format);
}

std::string cmd_compare(const Config& c) {
  const Prior prior = load_prior(c.prior);
  if (c.delays.empty()) throw std::invalid_argument("--d needs at least one delay");
  for (int d : c.delays) {
    if (d < 1) throw std::invalid_argument("--d must be at least 1");
  }

  if (c.max_duration > 0) {
    if (c.format == "json") {
      Json list = Json::array();
      for (int d : c.delays) {
        for (int t = 1; t <= c.max_duration; ++t) {
          const auto g = max_gain_for_duration(t, d, prior);
          list.push_back(Json{{"d", d}, {"total_duration", t}, {"b", g.rows}, {"expected_gain", g.expected_gain}});
        }
      }
      return list.dump(2) + "\n";
    }
    std::string out = "d,total_duration,b,expected_gain\n";
    for (int d : c.delays) {
      for (int t = 1; t <= c.max_duration; ++t) {
        const auto g = max_gain_for_duration(t, d, prior);
        out += std::to_string(d) + "," + std::to_string(t) + "," + std::to_string(g.rows) + "," +
               format_double(g.expected_gain) + "\n";
      }
    }
    return out;
  }

  if (c.targets.empty()) throw std::invalid_argument("--target-gain or --max-duration is required");
  CompareOptions options;
  options.gap = parse_gap(c.gap);
  std::vector<StrategyResult> rows;
  std::vector<double> targets;
  for (int d : c.delays) {
    for (double target : c.targets) {
      for (auto r : compare_strategies(target, d, prior, options)) {
        if (c.n > 0) {
          const auto design = design_for(r.strategy, r.b, d, prior, options.gap);
          const auto mc = monte_carlo_gain(design.beams, prior, c.n, c.seed);
          r.expected_gain = mc.expected_gain;
          r.expected_beamwidth = mc.expected_beamwidth;
          r.standard_error = mc.standard_error;
        }
        rows.push_back(std::move(r));
        targets.push_back(target);
      }
    }
  }
  return emit_strategies(rows, targets, c.format);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beam alignment design under feedback delay", "beamloop"};
  app.require_subcommand(1);
  Config c;

  auto add_bd = [&](CLI::App* sub, bool required) {
    auto* b = sub->add_option("--b", c.b, "Number of probing packets");
    auto* d = sub->add_option("--d", c.d, "Feedback delay in slots");
    if (required) {
      b->required();
      d->required();
    }
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", c.out, "Write output to this path");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* mcl = app.add_subcommand("mcl", "Max-cardinality feedback loop and its cardinality");
  add_bd(mcl, true);
  mcl->add_option("--out", c.out, "Write output to this path");
  mcl->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* table = app.add_subcommand("cardinality-table", "CSV of N* and M* over a (b, d) grid");
  table->add_option("--b-max", c.b_max, "Largest b");
  table->add_option("--d-max", c.d_max, "Largest d");
  table->add_option("--out", c.out, "Write output to this path");
  table->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* design = app.add_subcommand("design", "Optimized scanning beams and gain report");
  add_bd(design, true);
  design->add_option("--prior", c.prior, "Prior JSON file or inline JSON object");
  design->add_option("--objective", c.objective, "gain or beamwidth");
  design->add_option("--beams", c.beams, "Also write the beam-set JSON to this path");
  design->add_option("--out", c.out, "Write output to this path");
  design->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo gain of a strategy or beam-set file");
  add_bd(simulate, false);
  simulate->add_option("--prior", c.prior, "Prior JSON file or inline JSON object");
  simulate->add_option("--strategy", c.strategy, "optimal, non_interactive, modified_es or bisection");
  simulate->add_option("--beams", c.beams, "Beam-set JSON to simulate");
  simulate->add_option("--objective", c.objective, "Endpoint objective for optimized designs: gain or beamwidth");
  simulate->add_option("--gap", c.gap, "Bisection packet spacing: d or d+1");
  simulate->add_option("--seed", c.seed, "Random seed");
  simulate->add_option("--n", c.n, "Number of sampled AoDs");
  add_output(simulate);

  auto* compare = app.add_subcommand("compare", "Shortest frame per strategy, or gain versus duration");
  compare->add_option("--target-gain", c.targets, "Target gains")->delimiter(',');
  compare->add_option("--d", c.delays, "Feedback delays")->delimiter(',')->required();
  compare->add_option("--prior", c.prior, "Prior JSON file or inline JSON object");
  compare->add_option("--gap", c.gap, "Bisection packet spacing: d or d+1");
  compare->add_option("--max-duration", c.max_duration, "Emit gain for total durations 1..T instead");
  compare->add_option("--seed", c.seed, "Random seed");
  compare->add_option("--n", c.n, "Monte Carlo samples per row; 0 keeps analytic values");
  add_output(compare);

  // Per-command defaults, applied before the command's own flags are read.
  table->preparse_callback([&](std::size_t) { c.format = "csv"; });
  simulate->preparse_callback([&](std::size_t) { c.format = "csv"; c.n = 100000; });
  compare->preparse_callback([&](std::size_t) { c.format = "csv"; });
  mcl->preparse_callback([&](std::size_t) { c.format = "json"; });
  design->preparse_callback([&](std::size_t) { c.format = "json"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string text;
    if (*mcl) text = cmd_mcl(c);
    if (*table) text = cmd_cardinality(c);
    if (*design) text = cmd_design(c);
    if (*simulate) text = cmd_simulate(c);
    if (*compare) text = cmd_compare(c);
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream file(c.out, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write '" + c.out + "'");
      file << text;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("beamloop");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace beamloop::cli
