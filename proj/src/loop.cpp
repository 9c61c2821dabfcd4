#include "beamloop/loop.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace beamloop {

namespace {

std::vector<std::uint8_t> checked_bits(std::vector<std::uint8_t> bits) {
  for (auto b : bits) {
    if (b > 1) throw std::invalid_argument("bit value must be 0 or 1");
  }
  return bits;
}

std::vector<std::uint8_t> to_bits(std::initializer_list<int> bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("bit value must be 0 or 1");
    out.push_back(static_cast<std::uint8_t>(b));
  }
  return out;
}

}  // namespace

Column::Column(std::vector<std::uint8_t> bits) : bits_(checked_bits(std::move(bits))) {}

Column::Column(std::initializer_list<int> bits) : bits_(to_bits(bits)) {}

Column Column::prefix(std::size_t length) const {
  if (length > bits_.size()) throw std::out_of_range("prefix longer than column");
  return Column(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(length)));
}

Column Column::with_appended(std::uint8_t bit) const {
  auto bits = bits_;
  bits.push_back(bit);
  return Column(std::move(bits));
}

Column Column::without_last(std::size_t count) const {
  if (count > bits_.size()) throw std::out_of_range("cannot drop more rows than the column has");
  return prefix(bits_.size() - count);
}

std::uint64_t Column::packed() const {
  if (bits_.size() > 64) throw std::length_error("column longer than 64 bits");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string Column::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

BinaryLoop::BinaryLoop(std::vector<std::uint8_t> bits) : loop_(checked_bits(std::move(bits))) {}

BinaryLoop::BinaryLoop(std::initializer_list<int> bits) : loop_(to_bits(bits)) {}

std::size_t BinaryLoop::count_ones() const {
  return static_cast<std::size_t>(std::count(bits().begin(), bits().end(), std::uint8_t{1}));
}

bool is_unimodal(const BinaryLoop& bits) {
  // A single cyclic run of ones has exactly one 0 -> 1 transition.
  std::size_t rises = 0;
  const std::size_t n = bits.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (bits[i] == 0 && bits[i + 1] == 1) ++rises;
  }
  return rises <= 1;
}

FlipPositions flip_positions(const BinaryLoop& bits) {
  if (!is_unimodal(bits)) throw std::invalid_argument("not unimodal");
  const std::size_t n = bits.size();
  const std::size_t ones = bits.count_ones();
  if (ones == 0 || ones == n) return {};
  FlipPositions out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    if (bits[i] == 1 && bits[prev] == 0) out.first = i + 1;
    if (bits[i] == 1 && bits[i + 1] == 0) out.last = i + 1;
  }
  return out;
}

FeedbackLoop::FeedbackLoop(std::vector<Column> columns, int rows, int delay)
    : columns_(std::move(columns)), rows_(rows), delay_(delay) {
  if (rows < 1) throw std::invalid_argument("feedback loop needs at least one row");
  if (delay < 1) throw std::invalid_argument("feedback delay must be at least one slot");
  for (const auto& c : columns_) {
    if (c.size() != static_cast<std::size_t>(rows)) {
      throw std::invalid_argument("column length does not match row count");
    }
  }
}

BinaryLoop FeedbackLoop::row(int i) const {
  if (i < 1 || i > rows_) throw std::out_of_range("row index out of range");
  std::vector<std::uint8_t> bits;
  bits.reserve(size());
  for (const auto& c : columns()) bits.push_back(c[static_cast<std::size_t>(i - 1)]);
  return BinaryLoop(std::move(bits));
}

std::size_t FeedbackLoop::unique_count() const {
  return std::set<Column>(columns().begin(), columns().end()).size();
}

FeedbackLoop FeedbackLoop::canonical() const {
  return FeedbackLoop(columns_.canonical().elements(), rows_, delay_);
}

FeedbackLoop FeedbackLoop::rotated(std::size_t first) const {
  return FeedbackLoop(columns_.rotated(first).elements(), rows_, delay_);
}

FeedbackLoop remove_consecutive_repetitions(const FeedbackLoop& loop) {
  std::vector<Column> kept;
  kept.reserve(loop.size());
  for (const auto& c : loop.columns()) {
    if (kept.empty() || kept.back() != c) kept.push_back(c);
  }
  while (kept.size() > 1 && kept.back() == kept.front()) kept.pop_back();
  return FeedbackLoop(std::move(kept), loop.rows(), loop.delay());
}

std::vector<SubLoop> subloops_by_prefix(const FeedbackLoop& loop, std::size_t prefix_length) {
  if (prefix_length > static_cast<std::size_t>(loop.rows())) {
    throw std::out_of_range("prefix length exceeds row count");
  }
  std::vector<Column> order;
  std::map<Column, std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < loop.size(); ++j) {
    Column p = loop.column(j).prefix(prefix_length);
    auto [it, inserted] = groups.try_emplace(p);
    if (inserted) order.push_back(p);
    it->second.push_back(j);
  }
  std::vector<SubLoop> out;
  out.reserve(order.size());
  for (auto& p : order) {
    auto& positions = groups.at(p);
    std::vector<Column> cols;
    cols.reserve(positions.size());
    for (auto j : positions) cols.push_back(loop.column(j));
    out.push_back(SubLoop{p, positions, FeedbackLoop(std::move(cols), loop.rows(), loop.delay())});
  }
  return out;
}

FeedbackLoop parent_loop(const FeedbackLoop& loop, int order) {
  if (order < 1 || order >= loop.rows()) throw std::out_of_range("parent order must be in [1, rows)");
  std::vector<Column> cols;
  cols.reserve(loop.size());
  for (const auto& c : loop.columns()) cols.push_back(c.without_last(static_cast<std::size_t>(order)));
  return remove_consecutive_repetitions(FeedbackLoop(std::move(cols), loop.rows() - order, loop.delay()));
}

}  // namespace beamloop
