#pragma once

#include <cstddef>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "beamloop/loop.hpp"

namespace beamloop {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maps any angle to a circle position in [0, 2pi). Position 0 is the angle 2pi.
double wrap_angle(double angle);

// Half-open arc (start, end] traversed counterclockwise. Endpoints are circle
// positions in [0, 2pi). When start == end the arc is either empty or the
// full circle, told apart by `is_full`.
class AngularInterval {
 public:
  AngularInterval() = default;

  static AngularInterval arc(double start, double end);
  static AngularInterval full_circle(double start = 0.0);
  static AngularInterval empty_at(double position);

  double start() const noexcept { return start_; }
  double end() const noexcept { return end_; }
  bool is_full() const noexcept { return full_; }
  bool is_empty() const noexcept { return !full_ && start_ == end_; }
  double width() const noexcept;
  // `psi` is any angle; it is wrapped first. Endpoint `end` belongs to the arc.
  bool contains(double psi) const noexcept;

  friend bool operator==(const AngularInterval&, const AngularInterval&) = default;

 private:
  AngularInterval(double start, double end, bool full) : start_(start), end_(end), full_(full) {}

  double start_ = 0.0;
  double end_ = 0.0;
  bool full_ = false;
};

// Counterclockwise distance from `from` to `to`, both circle positions.
double ccw_offset(double to, double from) noexcept;

// Cyclic partition of the circle into contiguous component beams. Component j
// spans (endpoint(j), endpoint(j + 1)]. Zero-width components are allowed.
class ComponentBeamLoop {
 public:
  static ComponentBeamLoop from_widths(double start, std::vector<double> widths);
  // `x` non-decreasing with x.back() - x.front() <= 2pi; the last component
  // closes the circle back to x.front().
  static ComponentBeamLoop from_endpoints(const std::vector<double>& x);
  static ComponentBeamLoop equal_partition(std::size_t count, double start = 0.0);

  std::size_t size() const noexcept { return widths_.size(); }
  double endpoint(std::size_t j) const { return endpoints_[j % size()]; }
  double width(std::size_t j) const { return widths_[j % size()]; }
  const std::vector<double>& widths() const noexcept { return widths_; }
  const std::vector<double>& endpoints() const noexcept { return endpoints_; }
  AngularInterval interval(std::size_t j) const;
  std::vector<AngularInterval> intervals() const;
  // Arc covering `count` consecutive components starting at `first`.
  AngularInterval span(std::size_t first, std::size_t count) const;
  // Index of the component containing `psi`.
  std::size_t locate(double psi) const;

 private:
  ComponentBeamLoop(std::vector<double> endpoints, std::vector<double> widths)
      : endpoints_(std::move(endpoints)), widths_(std::move(widths)) {}

  std::vector<double> endpoints_;
  std::vector<double> widths_;
};

// Hierarchical scanning beam set: one contiguous beam per slot and per
// feedback prefix of length max(slot - d, 0) realizable at that slot.
class ScanningBeamSet {
 public:
  ScanningBeamSet(int rows, int delay);

  int rows() const noexcept { return rows_; }
  int delay() const noexcept { return delay_; }
  std::size_t prefix_length(int slot) const;

  void set_beam(int slot, const Column& prefix, const AngularInterval& beam);
  // Throws std::out_of_range for a prefix the design never produces.
  const AngularInterval& beam(int slot, const Column& prefix) const;
  const std::map<Column, AngularInterval>& beams(int slot) const;
  std::size_t beam_count() const;

 private:
  int rows_;
  int delay_;
  std::vector<std::map<Column, AngularInterval>> beams_;
};

struct Decomposition {
  ComponentBeamLoop components;
  FeedbackLoop feedback;
};

struct UncertaintyRegion {
  Column feedback;
  std::vector<AngularInterval> intervals;  // member component beams, loop order
  double width = 0.0;
};

class UncertaintyRegionSet {
 public:
  explicit UncertaintyRegionSet(std::vector<UncertaintyRegion> regions);

  std::size_t size() const noexcept { return regions_.size(); }
  const std::vector<UncertaintyRegion>& regions() const noexcept { return regions_; }
  auto begin() const noexcept { return regions_.begin(); }
  auto end() const noexcept { return regions_.end(); }
  const UncertaintyRegion* find(const Column& feedback) const;

 private:
  std::vector<UncertaintyRegion> regions_;  // sorted by feedback
};

// Builds the scanning beams for a component loop and a (b,d)-unimodal
// feedback loop of the same size. Each beam is the smallest contiguous union
// of component beams holding every component with a one and no component with
// a zero among the columns sharing its prefix. An empty set of ones gives an
// empty beam at the first endpoint.
ScanningBeamSet construct_scanning_set(const ComponentBeamLoop& components, const FeedbackLoop& feedback);

// Splits the circle at every beam endpoint and labels each piece with the
// feedback sequence an AoD inside it would produce.
Decomposition decompose(const ScanningBeamSet& beams);

UncertaintyRegionSet uncertainty_regions(const ComponentBeamLoop& components, const FeedbackLoop& feedback);

// Feedback sequence produced by the slot-by-slot beam choices for `psi`.
Column feedback_for_aod(const ScanningBeamSet& beams, double psi);

// Intersection over all slots of the beam (ACK) or its complement (NACK),
// returned as maximal disjoint arcs.
std::vector<AngularInterval> beam_for_aod(const ScanningBeamSet& beams, double psi);

}  // namespace beamloop
