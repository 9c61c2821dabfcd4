#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "beamloop/beam_geometry.hpp"
#include "beamloop/optimizer.hpp"
#include "beamloop/prior.hpp"

namespace beamloop {

// When each probing packet leaves the BS and how long its ACK/NACK takes.
struct SlotSchedule {
  int channel_delay = 1;
  std::vector<int> send_slots;  // strictly increasing, 1-based

  int total_duration() const { return send_slots.empty() ? 0 : send_slots.back() + channel_delay; }
};

// Packets in slots 1..b.
SlotSchedule consecutive_schedule(int rows, int delay);

struct SlotRecord {
  int slot = 0;               // send slot
  Column prefix;              // feedback the beam choice was keyed on
  std::size_t available = 0;  // feedback bits delivered by this slot
  AngularInterval beam;
  bool ack = false;
  int feedback_arrival = 0;   // slot + channel delay
};

struct Episode {
  double psi = 0.0;
  int design_delay = 1;
  int channel_delay = 1;
  std::vector<SlotRecord> transcript;
  Column feedback;
  std::vector<AngularInterval> final_region;  // maximal arcs
  int total_duration = 0;
};

// Plays one BA frame slot by slot. Feedback is delivered through a pending
// queue and the beam at each send slot is looked up from the bits delivered
// so far. Throws std::invalid_argument when the design needs feedback the
// schedule cannot deliver in time.
Episode run_episode(const ScanningBeamSet& beams, double psi, const SlotSchedule& schedule);
Episode run_episode(const ScanningBeamSet& beams, double psi);

// Empty when every beam choice only used feedback that had already arrived.
std::vector<std::string> delay_violations(const Episode& episode);

// Slot lookups flattened to integer keys for fast repeated simulation.
class CompiledBeamSet {
 public:
  explicit CompiledBeamSet(const ScanningBeamSet& beams);

  int rows() const noexcept { return rows_; }
  // Feedback bits packed with slot 1 as the most significant bit.
  std::uint64_t feedback(double psi) const;
  double region_width(std::uint64_t feedback) const;

 private:
  struct SlotTable {
    std::size_t prefix_length = 0;
    std::vector<std::optional<AngularInterval>> dense;
    std::unordered_map<std::uint64_t, AngularInterval> sparse;
  };

  int rows_;
  std::vector<SlotTable> slots_;
  std::unordered_map<std::uint64_t, double> widths_;
};

struct StrategyResult {
  std::string strategy;
  int b = 0;
  int d = 0;
  int total_duration = 0;
  double expected_gain = 1.0;
  double expected_beamwidth = kTwoPi;
  double standard_error = 0.0;  // zero for analytic values
};

// Worker count from BEAMLOOP_THREADS, else the hardware concurrency.
unsigned worker_count();

// Inverse-CDF sampling with counter-based draws; sample k uses counter k, so
// the estimate does not depend on the number of workers.
StrategyResult monte_carlo_gain(const ScanningBeamSet& beams, const Prior& prior, std::size_t samples,
                                std::uint64_t seed);

enum class BisectionGap { delay, delay_plus_one };

struct Design {
  std::string strategy;
  int rows = 0;
  int delay = 0;  // channel delay
  FeedbackLoop loop;
  ComponentBeamLoop components;
  ScanningBeamSet beams;
  SlotSchedule schedule;
  GainReport report;
};

StrategyResult summarize(const Design& design);

// build_mcl(b, d) with optimized endpoints.
Design optimal_design(int rows, int delay, const Prior& prior, Objective objective = Objective::max_gain,
                      const OptimizerOptions& options = {});
// The same pipeline with no feedback used during scanning: build_mcl(b, b).
Design non_interactive_design(int rows, int delay, const Prior& prior, Objective objective = Objective::max_gain,
                              const OptimizerOptions& options = {});
// b + 1 equal arcs; packet i probes arc i.
Design modified_es_design(int rows, int delay, const Prior& prior);
// Halving search: each packet probes the first half of the current arc and
// waits for its feedback before the next one.
Design bisection_design(int rounds, int delay, const Prior& prior, BisectionGap gap = BisectionGap::delay);

int bisection_rounds(double target_gain);

StrategyResult baseline_modified_es(int rows, int delay, const Prior& prior);
StrategyResult baseline_bisection(double target_gain, int delay, const Prior& prior,
                                  BisectionGap gap = BisectionGap::delay);
StrategyResult baseline_non_interactive(int rows, int delay, const Prior& prior);

struct CompareOptions {
  BisectionGap gap = BisectionGap::delay;
  OptimizerOptions optimizer;
};

// Shortest frame reaching `target_gain` for each strategy, in the order
// optimal, non_interactive, modified_es, bisection.
std::vector<StrategyResult> compare_strategies(double target_gain, int delay, const Prior& prior,
                                               const CompareOptions& options = {});

struct DurationGain {
  int delay = 0;
  int total_duration = 0;
  int rows = 0;  // 0 when scanning never starts
  double expected_gain = 1.0;
};

// Best expected gain of a frame of `total_duration` slots.
DurationGain max_gain_for_duration(int total_duration, int delay, const Prior& prior,
                                   const OptimizerOptions& options = {});

}  // namespace beamloop
