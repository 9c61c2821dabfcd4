#pragma once

#include <cstdint>
#include <vector>

#include "beamloop/beam_geometry.hpp"
#include "beamloop/loop.hpp"
#include "beamloop/prior.hpp"

namespace beamloop {

struct RegionGain {
  Column feedback;
  double mass = 0.0;
  double width = 0.0;
  double gain_contribution = 0.0;
};

struct GainReport {
  double expected_gain = 0.0;       // sum of 2pi / width * mass
  double expected_beamwidth = 0.0;  // sum of width * mass
  std::vector<RegionGain> per_region;
};

// Mass of an arc under `prior`, from the exact CDF.
double arc_mass(const AngularInterval& arc, const Prior& prior);

// Expected beamforming gain of a UR set under the sectored antenna model.
// Zero-width regions carry no mass and add nothing to the gain.
GainReport expected_gain(const UncertaintyRegionSet& regions, const Prior& prior);
GainReport expected_gain(const ComponentBeamLoop& components, const FeedbackLoop& feedback, const Prior& prior);

enum class Objective { max_gain, min_beamwidth };

struct OptimizerOptions {
  int starts = 8;             // equal, quantile-matched, then random
  double min_gap = 1e-6;      // floor on components during search, on regions throughout
  double tolerance = 1e-9;    // stop when a sweep improves less than this
  int max_sweeps = 10000;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

struct OptimizationResult {
  std::vector<double> endpoints;  // x_0 <= ... <= x_{N-1} <= x_0 + 2pi, x_0 in [0, 2pi)
  ComponentBeamLoop components;
  FeedbackLoop loop;
  GainReport report;
  bool converged = true;
  int sweeps = 0;
};

// Endpoints for the M*(b,d) contiguous URs of build_mcl(b, d), d >= 2.
OptimizationResult optimize_endpoints_contiguous(int rows, int delay, const Prior& prior,
                                                 const OptimizerOptions& options = {});

// Endpoints for the component beams of `loop`; each unique column's UR is the
// union of its occurrences.
OptimizationResult optimize_endpoints_general(const FeedbackLoop& loop, const Prior& prior,
                                              const OptimizerOptions& options = {});

// Same search with the expected beamwidth minimized instead.
OptimizationResult optimize_beamwidth(const FeedbackLoop& loop, const Prior& prior,
                                      const OptimizerOptions& options = {});

OptimizationResult optimize(const FeedbackLoop& loop, const Prior& prior, Objective objective,
                            const OptimizerOptions& options = {});

// M*(b,d), reached with equal-width URs under every prior.
double gain_lower_bound(int rows, int delay);

}  // namespace beamloop
