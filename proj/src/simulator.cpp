#include "beamloop/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <thread>

#include "beamloop/arc_set.hpp"
#include "beamloop/rng.hpp"
#include "beamloop/unimodal.hpp"

namespace beamloop {

SlotSchedule consecutive_schedule(int rows, int delay) {
  SlotSchedule s;
  s.channel_delay = delay;
  for (int i = 1; i <= rows; ++i) s.send_slots.push_back(i);
  return s;
}

Episode run_episode(const ScanningBeamSet& beams, double psi, const SlotSchedule& schedule) {
  const auto b = static_cast<std::size_t>(beams.rows());
  if (schedule.send_slots.size() != b) throw std::invalid_argument("schedule has the wrong number of packets");
  if (schedule.channel_delay < 1) throw std::invalid_argument("channel delay must be at least 1");
  for (std::size_t i = 0; i < b; ++i) {
    if (schedule.send_slots[i] < 1 || (i > 0 && schedule.send_slots[i] <= schedule.send_slots[i - 1])) {
      throw std::invalid_argument("send slots must be positive and increasing");
    }
  }

  Episode ep;
  ep.psi = psi;
  ep.design_delay = beams.delay();
  ep.channel_delay = schedule.channel_delay;
  ep.total_duration = schedule.total_duration();

  std::map<int, std::vector<std::uint8_t>> pending;
  std::vector<std::uint8_t> delivered;
  std::size_t next_packet = 0;
  for (int t = 1; t <= ep.total_duration; ++t) {
    if (auto it = pending.find(t); it != pending.end()) {
      delivered.insert(delivered.end(), it->second.begin(), it->second.end());
      pending.erase(it);
    }
    if (next_packet >= b || schedule.send_slots[next_packet] != t) continue;

    const int packet = static_cast<int>(next_packet) + 1;
    const std::size_t len = beams.prefix_length(packet);
    if (delivered.size() < len) throw std::invalid_argument("design expects feedback before it arrives");
    SlotRecord rec;
    rec.slot = t;
    rec.prefix = Column(std::vector<std::uint8_t>(delivered.begin(), delivered.begin() + static_cast<std::ptrdiff_t>(len)));
    rec.available = delivered.size();
    rec.beam = beams.beam(packet, rec.prefix);
    rec.ack = rec.beam.contains(psi);
    rec.feedback_arrival = t + schedule.channel_delay;
    pending[rec.feedback_arrival].push_back(rec.ack ? 1 : 0);
    ep.transcript.push_back(std::move(rec));
    ++next_packet;
  }

  std::vector<std::uint8_t> bits;
  ArcSet region = ArcSet::full();
  for (const auto& rec : ep.transcript) {
    bits.push_back(rec.ack ? 1 : 0);
    const ArcSet beam = ArcSet::of(rec.beam);
    region = region.intersect(rec.ack ? beam : beam.complement());
  }
  ep.feedback = Column(std::move(bits));
  ep.final_region = region.arcs();
  return ep;
}

Episode run_episode(const ScanningBeamSet& beams, double psi) {
  return run_episode(beams, psi, consecutive_schedule(beams.rows(), beams.delay()));
}

std::vector<std::string> delay_violations(const Episode& ep) {
  std::vector<std::string> out;
  const auto& tr = ep.transcript;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const auto& rec = tr[k];
    const std::string where = "packet " + std::to_string(k + 1) + ": ";
    if (rec.feedback_arrival != rec.slot + ep.channel_delay) out.push_back(where + "feedback arrival slot is wrong");
    std::size_t arrived = 0;
    for (const auto& other : tr) arrived += other.feedback_arrival <= rec.slot ? 1 : 0;
    if (rec.available != arrived) out.push_back(where + "delivered feedback count is wrong");
    const auto expected_len = static_cast<std::size_t>(std::max(static_cast<int>(k) + 1 - ep.design_delay, 0));
    if (rec.prefix.size() != expected_len) out.push_back(where + "prefix length does not match the design");
    for (std::size_t j = 0; j < rec.prefix.size(); ++j) {
      if (j >= tr.size() || tr[j].feedback_arrival > rec.slot) {
        out.push_back(where + "uses feedback that has not arrived");
        break;
      }
      if (rec.prefix[j] != (tr[j].ack ? 1 : 0)) {
        out.push_back(where + "prefix disagrees with the feedback sent");
        break;
      }
    }
  }
  if (!ArcSet::union_of(ep.final_region).contains(ep.psi)) out.push_back("final region misses the AoD");
  return out;
}

CompiledBeamSet::CompiledBeamSet(const ScanningBeamSet& beams) : rows_(beams.rows()) {
  if (rows_ > 63) throw std::invalid_argument("too many slots to pack");
  constexpr std::size_t kDenseLimit = 20;
  for (int slot = 1; slot <= rows_; ++slot) {
    SlotTable table;
    table.prefix_length = beams.prefix_length(slot);
    if (table.prefix_length <= kDenseLimit) table.dense.resize(std::size_t{1} << table.prefix_length);
    for (const auto& [prefix, beam] : beams.beams(slot)) {
      if (table.prefix_length <= kDenseLimit) {
        table.dense[prefix.packed()] = beam;
      } else {
        table.sparse.emplace(prefix.packed(), beam);
      }
    }
    slots_.push_back(std::move(table));
  }
  const auto parts = decompose(beams);
  for (const auto& region : uncertainty_regions(parts.components, parts.feedback)) {
    widths_.emplace(region.feedback.packed(), region.width);
  }
}

std::uint64_t CompiledBeamSet::feedback(double psi) const {
  std::uint64_t acc = 0;
  for (int i = 0; i < rows_; ++i) {
    const auto& table = slots_[static_cast<std::size_t>(i)];
    const std::uint64_t key = acc >> (static_cast<std::size_t>(i) - table.prefix_length);
    const AngularInterval* beam = nullptr;
    if (!table.dense.empty()) {
      if (table.dense[key]) beam = &*table.dense[key];
    } else if (auto it = table.sparse.find(key); it != table.sparse.end()) {
      beam = &it->second;
    }
    if (beam == nullptr) throw std::out_of_range("unrealizable feedback prefix");
    acc = (acc << 1) | (beam->contains(psi) ? 1u : 0u);
  }
  return acc;
}

double CompiledBeamSet::region_width(std::uint64_t feedback) const {
  auto it = widths_.find(feedback);
  if (it == widths_.end()) throw std::out_of_range("unrealizable feedback sequence");
  return it->second;
}

unsigned worker_count() {
  if (const char* env = std::getenv("BEAMLOOP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(std::min(v, 1024L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
  double width_sum = 0.0;

  void add(double x, double width) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
    width_sum += width;
  }
  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * o.count / total;
    m2 += o.m2 + delta * delta * count * o.count / total;
    count = total;
    width_sum += o.width_sum;
  }
};

}  // namespace

StrategyResult monte_carlo_gain(const ScanningBeamSet& beams, const Prior& prior, std::size_t samples,
                                std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("sample count must be at least 1");
  const CompiledBeamSet compiled(beams);
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t c = first; c < chunks; c += stride) {
      const std::size_t end = std::min(samples, (c + 1) * kChunk);
      for (std::size_t k = c * kChunk; k < end; ++k) {
        const double psi = prior.quantile(to_unit_open(counter_draw(seed, k)));
        const double width = compiled.region_width(compiled.feedback(psi));
        partial[c].add(kTwoPi / width, width);
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(worker_count(), chunks);
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }

  Moments total;
  for (const auto& m : partial) total.merge(m);
  StrategyResult r;
  r.strategy = "monte_carlo";
  r.b = beams.rows();
  r.d = beams.delay();
  r.total_duration = r.b + r.d;
  r.expected_gain = total.mean;
  r.expected_beamwidth = total.width_sum / total.count;
  r.standard_error = total.count > 1.0 ? std::sqrt(std::max(total.m2, 0.0) / (total.count - 1.0) / total.count) : 0.0;
  return r;
}

StrategyResult summarize(const Design& design) {
  StrategyResult r;
  r.strategy = design.strategy;
  r.b = design.rows;
  r.d = design.delay;
  r.total_duration = design.schedule.total_duration();
  r.expected_gain = design.report.expected_gain;
  r.expected_beamwidth = design.report.expected_beamwidth;
  return r;
}

namespace {

void check_rows_delay(int rows, int delay) {
  if (rows < 1 || delay < 1) throw std::invalid_argument("b and d must be at least 1");
}

Design optimized_design(std::string name, int rows, int delay, int design_delay, const Prior& prior,
                        Objective objective, const OptimizerOptions& options) {
  auto loop = build_mcl(rows, design_delay);
  auto result = optimize(loop, prior, objective, options);
  auto beams = construct_scanning_set(result.components, loop);
  return Design{std::move(name),         rows,
                delay,                   std::move(loop),
                std::move(result.components), std::move(beams),
                consecutive_schedule(rows, delay), std::move(result.report)};
}

}  // namespace

Design optimal_design(int rows, int delay, const Prior& prior, Objective objective, const OptimizerOptions& options) {
  check_rows_delay(rows, delay);
  return optimized_design("optimal", rows, delay, delay, prior, objective, options);
}

Design non_interactive_design(int rows, int delay, const Prior& prior, Objective objective,
                              const OptimizerOptions& options) {
  check_rows_delay(rows, delay);
  return optimized_design("non_interactive", rows, delay, rows, prior, objective, options);
}

Design modified_es_design(int rows, int delay, const Prior& prior) {
  check_rows_delay(rows, delay);
  std::vector<Column> columns;
  for (int k = 0; k <= rows; ++k) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(rows), 0);
    if (k < rows) bits[static_cast<std::size_t>(k)] = 1;
    columns.emplace_back(std::move(bits));
  }
  FeedbackLoop loop(std::move(columns), rows, rows);
  auto components = ComponentBeamLoop::equal_partition(static_cast<std::size_t>(rows) + 1);
  auto beams = construct_scanning_set(components, loop);
  auto report = expected_gain(components, loop, prior);
  return Design{"modified_es", rows, delay, std::move(loop), std::move(components), std::move(beams),
                consecutive_schedule(rows, delay), std::move(report)};
}

int bisection_rounds(double target_gain) {
  if (!(target_gain >= 2.0)) throw std::invalid_argument("target gain must be at least 2");
  int k = 1;
  while (std::ldexp(1.0, k) < target_gain * (1.0 - 1e-12)) ++k;
  return k;
}

Design bisection_design(int rounds, int delay, const Prior& prior, BisectionGap gap) {
  check_rows_delay(rounds, delay);
  if (rounds > 24) throw std::invalid_argument("too many bisection rounds");
  ScanningBeamSet beams(rounds, 1);
  for (int slot = 1; slot <= rounds; ++slot) {
    const auto len = static_cast<std::size_t>(slot - 1);
    for (std::uint64_t key = 0; key < (std::uint64_t{1} << len); ++key) {
      std::vector<std::uint8_t> bits(len);
      double start = 0.0, width = kTwoPi;
      for (std::size_t r = 0; r < len; ++r) {
        bits[r] = static_cast<std::uint8_t>((key >> (len - 1 - r)) & 1u);
        width *= 0.5;
        if (bits[r] == 0) start += width;
      }
      beams.set_beam(slot, Column(std::move(bits)), AngularInterval::arc(start, start + 0.5 * width));
    }
  }
  auto parts = decompose(beams);
  auto report = expected_gain(parts.components, parts.feedback, prior);
  SlotSchedule schedule;
  schedule.channel_delay = delay;
  const int step = gap == BisectionGap::delay ? delay : delay + 1;
  for (int i = 0; i < rounds; ++i) schedule.send_slots.push_back(1 + i * step);
  return Design{"bisection", rounds, delay, std::move(parts.feedback), std::move(parts.components),
                std::move(beams), std::move(schedule), std::move(report)};
}

StrategyResult baseline_modified_es(int rows, int delay, const Prior& prior) {
  return summarize(modified_es_design(rows, delay, prior));
}

StrategyResult baseline_bisection(double target_gain, int delay, const Prior& prior, BisectionGap gap) {
  return summarize(bisection_design(bisection_rounds(target_gain), delay, prior, gap));
}

StrategyResult baseline_non_interactive(int rows, int delay, const Prior& prior) {
  return summarize(non_interactive_design(rows, delay, prior));
}

namespace {

// Equal-width regions give gain equal to their count under any prior, and
// every partition does under the uniform prior.
StrategyResult counted(std::string name, int rows, int delay, int duration, double regions) {
  return StrategyResult{std::move(name), rows, delay, duration, regions, kTwoPi / regions, 0.0};
}

}  // namespace

std::vector<StrategyResult> compare_strategies(double target_gain, int delay, const Prior& prior,
                                               const CompareOptions& options) {
  if (delay < 1) throw std::invalid_argument("b and d must be at least 1");
  const int rounds = bisection_rounds(target_gain);
  const double need = target_gain * (1.0 - 1e-9);
  const bool uniform = prior.kind() == Prior::Kind::uniform;
  std::vector<StrategyResult> out;

  // Lower bounds cap the search: M*(b,d) for the optimal design and 2b
  // without interaction.
  auto shortest = [&](int cap, auto&& design) {
    for (int b = 1; b < cap; ++b) {
      auto result = summarize(design(b));
      if (result.expected_gain >= need) return result;
    }
    return summarize(design(cap));
  };
  int optimal_rows = 1;
  while (gain_lower_bound(optimal_rows, delay) < need) ++optimal_rows;
  const int ni_rows = std::max(1, static_cast<int>(std::ceil(need / 2.0)));
  if (uniform) {
    out.push_back(counted("optimal", optimal_rows, delay, optimal_rows + delay, gain_lower_bound(optimal_rows, delay)));
    out.push_back(counted("non_interactive", ni_rows, delay, ni_rows + delay, 2.0 * ni_rows));
  } else {
    out.push_back(shortest(optimal_rows, [&](int b) {
      return optimal_design(b, delay, prior, Objective::max_gain, options.optimizer);
    }));
    out.push_back(shortest(ni_rows, [&](int b) {
      return non_interactive_design(b, delay, prior, Objective::max_gain, options.optimizer);
    }));
  }

  const int es_rows = std::max(1, static_cast<int>(std::ceil(need)) - 1);
  out.push_back(summarize(modified_es_design(es_rows, delay, prior)));
  out.push_back(summarize(bisection_design(rounds, delay, prior, options.gap)));
  return out;
}

DurationGain max_gain_for_duration(int total_duration, int delay, const Prior& prior,
                                   const OptimizerOptions& options) {
  if (delay < 1 || total_duration < 0) throw std::invalid_argument("invalid duration or delay");
  const int rows = total_duration - delay;
  if (rows < 1) return DurationGain{delay, total_duration, 0, 1.0};
  const double gain = prior.kind() == Prior::Kind::uniform
                          ? gain_lower_bound(rows, delay)
                          : optimal_design(rows, delay, prior, Objective::max_gain, options).report.expected_gain;
  return DurationGain{delay, total_duration, rows, gain};
}

}  // namespace beamloop
