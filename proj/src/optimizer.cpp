#include "beamloop/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "beamloop/rng.hpp"
#include "beamloop/unimodal.hpp"

namespace beamloop {

double arc_mass(const AngularInterval& arc, const Prior& prior) {
  if (arc.is_full()) return 1.0;
  if (arc.is_empty()) return 0.0;
  const double s = arc.start();
  const double e = arc.end();
  const double m = e > s ? prior.cdf(e) - prior.cdf(s) : 1.0 + prior.cdf(e) - prior.cdf(s);
  return std::max(m, 0.0);
}

GainReport expected_gain(const UncertaintyRegionSet& regions, const Prior& prior) {
  GainReport report;
  for (const auto& region : regions) {
    double mass = 0.0;
    for (const auto& arc : region.intervals) mass += arc_mass(arc, prior);
    RegionGain entry{region.feedback, mass, region.width, 0.0};
    if (region.width > 0.0) {
      entry.gain_contribution = kTwoPi / region.width * mass;
    } else if (mass > 1e-12) {
      throw std::logic_error("zero-width region carries probability mass");
    }
    report.expected_gain += entry.gain_contribution;
    report.expected_beamwidth += mass * region.width;
    report.per_region.push_back(std::move(entry));
  }
  return report;
}

GainReport expected_gain(const ComponentBeamLoop& components, const FeedbackLoop& feedback, const Prior& prior) {
  return expected_gain(uncertainty_regions(components, feedback), prior);
}

double gain_lower_bound(int rows, int delay) {
  return static_cast<double>(mcl_cardinality(rows, delay).unique_columns);
}

namespace {

struct Layout {
  std::vector<std::size_t> region_of;  // per component
  std::vector<std::size_t> members;    // components per region
};

Layout layout_of(const FeedbackLoop& loop) {
  std::map<Column, std::size_t> index;
  Layout out;
  for (const auto& c : loop.columns()) {
    auto [it, inserted] = index.emplace(c, index.size());
    if (inserted) out.members.push_back(0);
    out.region_of.push_back(it->second);
    ++out.members[it->second];
  }
  return out;
}

// Maximizes the best value of f over [lo, hi]: coarse scan, then golden
// section inside the bracket around the best sample.
template <typename F>
std::pair<double, double> maximize_on(F&& f, double lo, double hi) {
  constexpr int kScan = 16;
  double best_t = lo, best_f = -std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 0; k <= kScan; ++k) {
    const double t = k == kScan ? hi : lo + (hi - lo) * k / kScan;
    const double v = f(t);
    if (v > best_f) {
      best_f = v;
      best_t = t;
      best_k = k;
    }
  }
  const double step = (hi - lo) / kScan;
  double a = best_k == 0 ? lo : best_t - step;
  double b = best_k == kScan ? hi : best_t + step;
  constexpr double kInv = 0.6180339887498949;
  double c = b - kInv * (b - a);
  double d = a + kInv * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 100 && b - a > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInv * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInv * (b - a);
      fd = f(d);
    }
  }
  if (fc > best_f) {
    best_f = fc;
    best_t = c;
  }
  if (fd > best_f) {
    best_f = fd;
    best_t = d;
  }
  return {best_t, best_f};
}

class Solver {
 public:
  Solver(const Layout& layout, const Prior& prior, Objective objective, double region_gap)
      : layout_(layout), prior_(prior), objective_(objective), gap_(region_gap) {}

  // Coordinate ascent from `x`, updated in place. Returns the objective.
  double run(std::vector<double>& x, double floor, double tolerance, int max_sweeps, int& sweeps, bool& converged) {
    x_ = std::move(x);
    refresh();
    double value = total();
    converged = false;
    sweeps = 0;
    if (x_.size() > 1) {
      while (sweeps < max_sweeps) {
        ++sweeps;
        const double before = value;
        for (std::size_t j = 0; j < x_.size(); ++j) move_endpoint(j, floor);
        rotate();
        refresh();
        value = total();
        if (value - before < tolerance) {
          converged = true;
          break;
        }
      }
    } else {
      converged = true;
    }
    x = std::move(x_);
    return value;
  }

 private:
  double term(double p, double w) const {
    if (objective_ == Objective::max_gain) return w > 0.0 ? kTwoPi * p / w : 0.0;
    return -p * w;
  }

  double total() const {
    double sum = 0.0;
    for (std::size_t m = 0; m < P_.size(); ++m) sum += term(P_[m], W_[m]);
    return sum;
  }

  std::size_t n() const { return x_.size(); }
  double x_at(std::size_t j) const { return j == n() ? x_[0] + kTwoPi : x_[j]; }
  double c_at(std::size_t j) const { return j == n() ? c_[0] + 1.0 : c_[j]; }

  void refresh() {
    c_.resize(n());
    for (std::size_t j = 0; j < n(); ++j) c_[j] = prior_.unwrapped_cdf(x_[j]);
    P_.assign(layout_.members.size(), 0.0);
    W_.assign(layout_.members.size(), 0.0);
    for (std::size_t j = 0; j < n(); ++j) {
      const auto r = layout_.region_of[j];
      P_[r] += c_at(j + 1) - c_[j];
      W_[r] += x_at(j + 1) - x_[j];
    }
  }

  void move_endpoint(std::size_t j, double floor) {
    const std::size_t left = (j + n() - 1) % n();
    const auto ra = layout_.region_of[left];
    const auto rc = layout_.region_of[j];
    if (ra == rc) return;
    const double xl = j == 0 ? x_[n() - 1] - kTwoPi : x_[j - 1];
    const double cl = j == 0 ? c_[n() - 1] - 1.0 : c_[j - 1];
    const double xr = x_at(j + 1);
    const double cr = c_at(j + 1);
    const double pa = P_[ra] - (c_[j] - cl), wa = W_[ra] - (x_[j] - xl);
    const double pc = P_[rc] - (cr - c_[j]), wc = W_[rc] - (xr - x_[j]);
    const double lo = std::max(xl + floor, xl + gap_ - wa);
    const double hi = std::min(xr - floor, xr - gap_ + wc);
    if (!(lo <= hi)) return;

    auto f = [&](double t) {
      const double ct = prior_.unwrapped_cdf(t);
      return term(pa + ct - cl, wa + t - xl) + term(pc + cr - ct, wc + xr - t);
    };
    const double current = term(P_[ra], W_[ra]) + term(P_[rc], W_[rc]);
    const auto [t, v] = maximize_on(f, lo, hi);
    if (!(v > current + 1e-15 * std::max(1.0, std::abs(current)))) return;
    const double ct = prior_.unwrapped_cdf(t);
    x_[j] = t;
    c_[j] = ct;
    P_[ra] = pa + ct - cl;
    W_[ra] = wa + t - xl;
    P_[rc] = pc + cr - ct;
    W_[rc] = wc + xr - t;
  }

  // Turns the whole partition; widths are unchanged, masses follow.
  void rotate() {
    std::vector<double> mass(P_.size());
    auto f = [&](double s) {
      std::fill(mass.begin(), mass.end(), 0.0);
      double prev = prior_.unwrapped_cdf(x_[0] + s);
      const double first = prev;
      for (std::size_t j = 0; j < n(); ++j) {
        const double next = j + 1 == n() ? first + 1.0 : prior_.unwrapped_cdf(x_[j + 1] + s);
        mass[layout_.region_of[j]] += next - prev;
        prev = next;
      }
      double sum = 0.0;
      for (std::size_t m = 0; m < mass.size(); ++m) sum += term(mass[m], W_[m]);
      return sum;
    };
    const double current = total();
    const auto [s, v] = maximize_on(f, -std::numbers::pi, std::numbers::pi);
    if (!(v > current + 1e-15 * std::max(1.0, std::abs(current)))) return;
    for (auto& xj : x_) xj += s;
    refresh();
  }

  const Layout& layout_;
  const Prior& prior_;
  Objective objective_;
  double gap_;
  std::vector<double> x_, c_, P_, W_;
};

std::vector<double> endpoints_from_widths(double start, const std::vector<double>& widths) {
  std::vector<double> x(widths.size());
  double cursor = start;
  for (std::size_t j = 0; j < widths.size(); ++j) {
    x[j] = cursor;
    cursor += widths[j];
  }
  return x;
}

// Lifts every width to `floor` and rescales the excess so the sum is 2pi.
std::vector<double> with_floor(std::vector<double> widths, double floor) {
  double excess = 0.0;
  for (auto& w : widths) {
    w = std::max(w, floor);
    excess += w - floor;
  }
  const double room = kTwoPi - floor * static_cast<double>(widths.size());
  for (auto& w : widths) w = floor + (w - floor) * room / excess;
  return widths;
}

std::vector<std::vector<double>> initial_points(const Layout& layout, const Prior& prior,
                                                const OptimizerOptions& options) {
  const std::size_t n = layout.region_of.size();
  const double regions = static_cast<double>(layout.members.size());
  std::vector<double> share(n);
  for (std::size_t j = 0; j < n; ++j) {
    share[j] = 1.0 / (regions * static_cast<double>(layout.members[layout.region_of[j]]));
  }

  std::vector<std::vector<double>> starts;
  std::vector<double> widths(n);
  for (std::size_t j = 0; j < n; ++j) widths[j] = kTwoPi * share[j];
  starts.push_back(endpoints_from_widths(0.0, widths));
  if (options.starts < 2) return starts;

  double cumulative = 0.0;
  std::vector<double> q(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    q[j] = prior.quantile(cumulative);
    cumulative += share[j];
  }
  q[n] = kTwoPi;
  for (std::size_t j = 0; j < n; ++j) widths[j] = q[j + 1] - q[j];
  starts.push_back(endpoints_from_widths(q[0], with_floor(widths, options.min_gap)));

  SplitMix64 rng(options.seed);
  for (int s = 2; s < options.starts; ++s) {
    for (auto& w : widths) w = -std::log(rng.uniform());
    const double start = kTwoPi * rng.uniform();
    double sum = 0.0;
    for (double w : widths) sum += w;
    for (auto& w : widths) w *= kTwoPi / sum;
    starts.push_back(endpoints_from_widths(start, with_floor(widths, options.min_gap)));
  }
  return starts;
}

}  // namespace

OptimizationResult optimize(const FeedbackLoop& loop, const Prior& prior, Objective objective,
                            const OptimizerOptions& options) {
  if (options.min_gap < 0.0 || options.min_gap * static_cast<double>(loop.size()) >= kTwoPi) {
    throw std::invalid_argument("minimum gap too large for the loop");
  }
  const Layout layout = layout_of(loop);
  Solver solver(layout, prior, objective, options.min_gap);

  std::vector<double> best;
  double best_value = -std::numeric_limits<double>::infinity();
  bool converged = true;
  int sweeps = 0;
  // Under the uniform prior every partition has gain M and the equal-region
  // start also has the least expected beamwidth, so it is returned as is.
  OptimizerOptions effective = options;
  if (prior.kind() == Prior::Kind::uniform) effective.starts = 1;
  auto starts = initial_points(layout, prior, effective);
  if (prior.kind() == Prior::Kind::uniform) {
    best = std::move(starts.front());
  } else {
    for (auto& x : starts) {
      int used = 0;
      bool done = false;
      const double value = solver.run(x, options.min_gap, options.tolerance, options.max_sweeps, used, done);
      sweeps += used;
      converged = converged && done;
      if (best.empty() || value > best_value + 1e-12 * std::max(1.0, std::abs(best_value))) {
        best = std::move(x);
        best_value = value;
      }
    }
    std::vector<double> polished = best;
    int used = 0;
    bool done = false;
    const double value = solver.run(polished, 0.0, options.tolerance, options.max_sweeps, used, done);
    sweeps += used;
    converged = converged && done;
    if (value > best_value) best = std::move(polished);
  }

  const double shift = std::floor(best.front() / kTwoPi) * kTwoPi;
  for (auto& xj : best) xj -= shift;
  auto components = ComponentBeamLoop::from_endpoints(best);
  auto report = expected_gain(components, loop, prior);
  return OptimizationResult{std::move(best), std::move(components), loop, std::move(report), converged, sweeps};
}

OptimizationResult optimize_endpoints_contiguous(int rows, int delay, const Prior& prior,
                                                 const OptimizerOptions& options) {
  if (delay < 2) throw std::invalid_argument("use general optimizer");
  return optimize(build_mcl(rows, delay), prior, Objective::max_gain, options);
}

OptimizationResult optimize_endpoints_general(const FeedbackLoop& loop, const Prior& prior,
                                              const OptimizerOptions& options) {
  return optimize(loop, prior, Objective::max_gain, options);
}

OptimizationResult optimize_beamwidth(const FeedbackLoop& loop, const Prior& prior,
                                      const OptimizerOptions& options) {
  return optimize(loop, prior, Objective::min_beamwidth, options);
}

}  // namespace beamloop
