#include "beamloop/beam_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "beamloop/arc_set.hpp"
#include "beamloop/unimodal.hpp"

namespace beamloop {

double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double ccw_offset(double to, double from) noexcept { return to >= from ? to - from : to - from + kTwoPi; }

AngularInterval AngularInterval::arc(double start, double end) {
  return AngularInterval(wrap_angle(start), wrap_angle(end), false);
}

AngularInterval AngularInterval::full_circle(double start) {
  const double s = wrap_angle(start);
  return AngularInterval(s, s, true);
}

AngularInterval AngularInterval::empty_at(double position) {
  const double s = wrap_angle(position);
  return AngularInterval(s, s, false);
}

double AngularInterval::width() const noexcept {
  if (full_) return kTwoPi;
  if (start_ == end_) return 0.0;
  return ccw_offset(end_, start_);
}

bool AngularInterval::contains(double psi) const noexcept {
  if (full_) return true;
  if (start_ == end_) return false;
  const double d = ccw_offset(wrap_angle(psi), start_);
  return d > 0.0 && d <= ccw_offset(end_, start_);
}

ComponentBeamLoop ComponentBeamLoop::from_widths(double start, std::vector<double> widths) {
  if (widths.empty()) throw std::invalid_argument("component loop needs at least one interval");
  double total = 0.0;
  for (double w : widths) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("component widths must be finite and non-negative");
    total += w;
  }
  if (std::abs(total - kTwoPi) > 1e-9 * kTwoPi) throw std::invalid_argument("component widths must sum to 2pi");

  const std::size_t n = widths.size();
  std::vector<double> endpoints(n);
  double cursor = start;
  for (std::size_t j = 0; j < n; ++j) {
    endpoints[j] = wrap_angle(cursor);
    cursor += widths[j];
  }
  std::vector<double> actual(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = endpoints[j];
    const double b = endpoints[(j + 1) % n];
    if (n == 1 || (a == b && widths[j] > std::numbers::pi)) {
      actual[j] = kTwoPi;
    } else {
      actual[j] = a == b ? 0.0 : ccw_offset(b, a);
    }
  }
  return ComponentBeamLoop(std::move(endpoints), std::move(actual));
}

ComponentBeamLoop ComponentBeamLoop::from_endpoints(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("component loop needs at least one endpoint");
  for (std::size_t j = 1; j < x.size(); ++j) {
    if (x[j] < x[j - 1]) throw std::invalid_argument("endpoints must be non-decreasing");
  }
  if (x.back() - x.front() > kTwoPi * (1.0 + 1e-12)) throw std::invalid_argument("endpoints span more than 2pi");
  const std::size_t n = x.size();
  std::vector<double> endpoints(n);
  std::vector<double> widths(n);
  for (std::size_t j = 0; j < n; ++j) endpoints[j] = wrap_angle(x[j]);
  for (std::size_t j = 0; j < n; ++j) {
    const double nominal = j + 1 < n ? x[j + 1] - x[j] : x.front() + kTwoPi - x.back();
    const double a = endpoints[j];
    const double b = endpoints[(j + 1) % n];
    if (n == 1 || (a == b && nominal > std::numbers::pi)) {
      widths[j] = kTwoPi;
    } else {
      widths[j] = a == b ? 0.0 : ccw_offset(b, a);
    }
  }
  return ComponentBeamLoop(std::move(endpoints), std::move(widths));
}

ComponentBeamLoop ComponentBeamLoop::equal_partition(std::size_t count, double start) {
  if (count == 0) throw std::invalid_argument("component loop needs at least one interval");
  std::vector<double> x(count);
  for (std::size_t j = 0; j < count; ++j) {
    x[j] = start + kTwoPi * static_cast<double>(j) / static_cast<double>(count);
  }
  return from_endpoints(x);
}

AngularInterval ComponentBeamLoop::interval(std::size_t j) const {
  j %= size();
  const double a = endpoints_[j];
  if (widths_[j] == kTwoPi) return AngularInterval::full_circle(a);
  return AngularInterval::arc(a, endpoint(j + 1));
}

std::vector<AngularInterval> ComponentBeamLoop::intervals() const {
  std::vector<AngularInterval> out;
  out.reserve(size());
  for (std::size_t j = 0; j < size(); ++j) out.push_back(interval(j));
  return out;
}

AngularInterval ComponentBeamLoop::span(std::size_t first, std::size_t count) const {
  const double a = endpoint(first);
  if (count == 0) return AngularInterval::empty_at(a);
  if (count >= size()) return AngularInterval::full_circle(a);
  const double b = endpoint(first + count);
  if (a == b) {
    double total = 0.0;
    for (std::size_t k = 0; k < count; ++k) total += width(first + k);
    return total > std::numbers::pi ? AngularInterval::full_circle(a) : AngularInterval::empty_at(a);
  }
  return AngularInterval::arc(a, b);
}

std::size_t ComponentBeamLoop::locate(double psi) const {
  for (std::size_t j = 0; j < size(); ++j) {
    if (interval(j).contains(psi)) return j;
  }
  throw std::logic_error("components do not cover the angle");
}

ScanningBeamSet::ScanningBeamSet(int rows, int delay) : rows_(rows), delay_(delay) {
  if (rows < 1 || delay < 1) throw std::invalid_argument("b and d must be at least 1");
  beams_.resize(static_cast<std::size_t>(rows));
}

std::size_t ScanningBeamSet::prefix_length(int slot) const {
  if (slot < 1 || slot > rows_) throw std::out_of_range("slot out of range");
  return static_cast<std::size_t>(std::max(slot - delay_, 0));
}

void ScanningBeamSet::set_beam(int slot, const Column& prefix, const AngularInterval& beam) {
  if (prefix.size() != prefix_length(slot)) throw std::invalid_argument("prefix length does not match slot");
  beams_[static_cast<std::size_t>(slot - 1)][prefix] = beam;
}

const AngularInterval& ScanningBeamSet::beam(int slot, const Column& prefix) const {
  const auto& m = beams(slot);
  auto it = m.find(prefix);
  if (it == m.end()) throw std::out_of_range("unrealizable feedback prefix");
  return it->second;
}

const std::map<Column, AngularInterval>& ScanningBeamSet::beams(int slot) const {
  if (slot < 1 || slot > rows_) throw std::out_of_range("slot out of range");
  return beams_[static_cast<std::size_t>(slot - 1)];
}

std::size_t ScanningBeamSet::beam_count() const {
  std::size_t n = 0;
  for (const auto& m : beams_) n += m.size();
  return n;
}

UncertaintyRegionSet::UncertaintyRegionSet(std::vector<UncertaintyRegion> regions) : regions_(std::move(regions)) {
  std::sort(regions_.begin(), regions_.end(),
            [](const UncertaintyRegion& a, const UncertaintyRegion& b) { return a.feedback < b.feedback; });
}

const UncertaintyRegion* UncertaintyRegionSet::find(const Column& feedback) const {
  auto it = std::lower_bound(regions_.begin(), regions_.end(), feedback,
                             [](const UncertaintyRegion& r, const Column& c) { return r.feedback < c; });
  if (it == regions_.end() || it->feedback != feedback) return nullptr;
  return &*it;
}

ScanningBeamSet construct_scanning_set(const ComponentBeamLoop& components, const FeedbackLoop& feedback) {
  if (components.size() != feedback.size()) throw std::invalid_argument("cardinality mismatch");
  if (!is_bd_unimodal(feedback)) throw std::invalid_argument("feedback loop is not (b,d)-unimodal");
  const std::size_t n = feedback.size();
  ScanningBeamSet out(feedback.rows(), feedback.delay());

  for (int slot = 1; slot <= feedback.rows(); ++slot) {
    const auto row = static_cast<std::size_t>(slot - 1);
    for (const auto& group : subloops_by_prefix(feedback, out.prefix_length(slot))) {
      const auto& pos = group.positions;
      const std::size_t m = pos.size();
      auto bit = [&](std::size_t t) { return feedback.column(pos[t % m])[row]; };
      std::size_t ones = 0;
      for (std::size_t t = 0; t < m; ++t) ones += bit(t);

      AngularInterval beam;
      if (ones == 0) {
        beam = AngularInterval::empty_at(components.endpoint(0));
      } else if (ones == m && m == n) {
        beam = AngularInterval::full_circle(components.endpoint(0));
      } else if (ones == m) {
        // Skip the widest run of components outside the group.
        std::size_t best_gap = 0, after = 0;
        for (std::size_t t = 0; t < m; ++t) {
          const std::size_t next = pos[(t + 1) % m];
          const std::size_t gap = (next + n - pos[t] - 1) % n;
          if (gap > best_gap) {
            best_gap = gap;
            after = (t + 1) % m;
          }
        }
        beam = components.span(pos[after], n - best_gap);
      } else {
        std::size_t first = m, last = m;
        for (std::size_t t = 0; t < m; ++t) {
          if (bit(t) == 1 && bit(t + m - 1) == 0) first = t;
          if (bit(t) == 1 && bit(t + 1) == 0) last = t;
        }
        if (first == m || last == m) throw std::logic_error("no contiguous beam for the prefix");
        const std::size_t count = (pos[last] + n - pos[first]) % n + 1;
        beam = components.span(pos[first], count);
      }
      out.set_beam(slot, group.prefix, beam);
    }
  }
  return out;
}

Decomposition decompose(const ScanningBeamSet& beams) {
  std::vector<double> cuts;
  for (int slot = 1; slot <= beams.rows(); ++slot) {
    for (const auto& [prefix, beam] : beams.beams(slot)) {
      if (beam.is_full() || beam.is_empty()) continue;
      cuts.push_back(beam.start());
      cuts.push_back(beam.end());
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.empty()) cuts.push_back(0.0);

  const auto pieces = ComponentBeamLoop::from_endpoints(cuts);
  std::vector<Column> labels;
  labels.reserve(pieces.size());
  for (std::size_t j = 0; j < pieces.size(); ++j) labels.push_back(feedback_for_aod(beams, pieces.endpoint(j + 1)));

  // Adjacent pieces no AoD can tell apart form one component beam.
  const std::size_t n = pieces.size();
  std::size_t first = 0;
  while (first < n && labels[first] == labels[(first + n - 1) % n]) ++first;
  if (first == n) {
    return {ComponentBeamLoop::from_widths(0.0, {kTwoPi}), FeedbackLoop({labels.front()}, beams.rows(), beams.delay())};
  }
  std::vector<double> starts;
  std::vector<Column> columns;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (first + k) % n;
    if (k == 0 || labels[j] != columns.back()) {
      starts.push_back(pieces.endpoint(j));
      columns.push_back(labels[j]);
    }
  }
  std::vector<double> unwrapped(starts.size());
  unwrapped[0] = starts[0];
  for (std::size_t k = 1; k < starts.size(); ++k) {
    unwrapped[k] = starts[k] + (starts[k] < starts[0] ? kTwoPi : 0.0);
  }
  return {ComponentBeamLoop::from_endpoints(unwrapped), FeedbackLoop(std::move(columns), beams.rows(), beams.delay())};
}

UncertaintyRegionSet uncertainty_regions(const ComponentBeamLoop& components, const FeedbackLoop& feedback) {
  if (components.size() != feedback.size()) throw std::invalid_argument("cardinality mismatch");
  std::map<Column, UncertaintyRegion> grouped;
  for (std::size_t j = 0; j < feedback.size(); ++j) {
    auto& region = grouped[feedback.column(j)];
    region.feedback = feedback.column(j);
    region.intervals.push_back(components.interval(j));
    region.width += components.width(j);
  }
  std::vector<UncertaintyRegion> regions;
  regions.reserve(grouped.size());
  for (auto& [key, region] : grouped) regions.push_back(std::move(region));
  return UncertaintyRegionSet(std::move(regions));
}

Column feedback_for_aod(const ScanningBeamSet& beams, double psi) {
  std::vector<std::uint8_t> bits;
  bits.reserve(static_cast<std::size_t>(beams.rows()));
  for (int slot = 1; slot <= beams.rows(); ++slot) {
    const auto len = beams.prefix_length(slot);
    Column prefix(std::vector<std::uint8_t>(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(len)));
    bits.push_back(beams.beam(slot, prefix).contains(psi) ? 1 : 0);
  }
  return Column(std::move(bits));
}

std::vector<AngularInterval> beam_for_aod(const ScanningBeamSet& beams, double psi) {
  const Column feedback = feedback_for_aod(beams, psi);
  ArcSet region = ArcSet::full();
  for (int slot = 1; slot <= beams.rows(); ++slot) {
    const Column prefix = feedback.prefix(beams.prefix_length(slot));
    const ArcSet beam = ArcSet::of(beams.beam(slot, prefix));
    region = region.intersect(feedback[static_cast<std::size_t>(slot - 1)] ? beam : beam.complement());
  }
  return region.arcs();
}

}  // namespace beamloop
