#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace beamloop {

// Cyclically ordered sequence. The element after the last one is the first,
// and two loops are equal when one is a rotation of the other. Reflections
// are distinct loops.
template <typename T>
class Loop {
 public:
  explicit Loop(std::vector<T> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw std::invalid_argument("empty loop");
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const T& operator[](std::size_t i) const { return elements_[i % elements_.size()]; }
  const std::vector<T>& elements() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  // Rotation that starts at element `first`.
  Loop rotated(std::size_t first) const {
    std::vector<T> out;
    out.reserve(size());
    for (std::size_t k = 0; k < size(); ++k) out.push_back((*this)[first + k]);
    return Loop(std::move(out));
  }

  // Start index of the lexicographically smallest rotation (two-pointer
  // minimum-expression scan, linear time).
  std::size_t min_rotation() const {
    const std::size_t n = size();
    std::size_t i = 0, j = 1, k = 0;
    while (i < n && j < n && k < n) {
      const T& a = (*this)[i + k];
      const T& b = (*this)[j + k];
      if (a == b) {
        ++k;
        continue;
      }
      if (b < a) {
        i += k + 1;
      } else {
        j += k + 1;
      }
      if (i == j) ++j;
      k = 0;
    }
    return std::min(i, j);
  }

  Loop canonical() const { return rotated(min_rotation()); }

  friend bool operator==(const Loop& a, const Loop& b) {
    return a.size() == b.size() && a.canonical().elements_ == b.canonical().elements_;
  }

 private:
  std::vector<T> elements_;
};

template <typename T>
Loop<T> canonicalize(const Loop<T>& loop) {
  return loop.canonical();
}

// Fixed-length feedback sequence. Row 0 is the first feedback bit and the
// most significant one in comparisons and packing.
class Column {
 public:
  Column() = default;
  explicit Column(std::vector<std::uint8_t> bits);
  Column(std::initializer_list<int> bits);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::uint8_t operator[](std::size_t row) const { return bits_[row]; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  Column prefix(std::size_t length) const;
  Column with_appended(std::uint8_t bit) const;
  Column without_last(std::size_t count) const;
  std::uint64_t packed() const;
  std::string to_string() const;

  friend auto operator<=>(const Column&, const Column&) = default;
  friend bool operator==(const Column&, const Column&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

class BinaryLoop {
 public:
  explicit BinaryLoop(std::vector<std::uint8_t> bits);
  BinaryLoop(std::initializer_list<int> bits);

  std::size_t size() const noexcept { return loop_.size(); }
  std::uint8_t operator[](std::size_t i) const { return loop_[i]; }
  const std::vector<std::uint8_t>& bits() const noexcept { return loop_.elements(); }
  const Loop<std::uint8_t>& loop() const noexcept { return loop_; }
  std::size_t count_ones() const;

  friend bool operator==(const BinaryLoop& a, const BinaryLoop& b) { return a.loop_ == b.loop_; }

 private:
  Loop<std::uint8_t> loop_;
};

// True when the ones form a single cyclic run (or there are no ones/zeros).
bool is_unimodal(const BinaryLoop& bits);

// First and last flip positions, 1-based. Both are empty (infinite) for an
// all-ones or all-zeros loop.
struct FlipPositions {
  std::optional<std::size_t> first;
  std::optional<std::size_t> last;

  bool infinite() const noexcept { return !first.has_value(); }
  friend bool operator==(const FlipPositions&, const FlipPositions&) = default;
};

FlipPositions flip_positions(const BinaryLoop& bits);

// Loop of feedback sequences with `rows` bits per column (b) and a feedback
// delay of `delay` slots (d).
class FeedbackLoop {
 public:
  FeedbackLoop(std::vector<Column> columns, int rows, int delay);

  int rows() const noexcept { return rows_; }
  int delay() const noexcept { return delay_; }
  std::size_t size() const noexcept { return columns_.size(); }
  const Column& column(std::size_t j) const { return columns_[j]; }
  const std::vector<Column>& columns() const noexcept { return columns_.elements(); }
  const Loop<Column>& loop() const noexcept { return columns_; }

  // Row `i` (1-based) as a binary loop.
  BinaryLoop row(int i) const;
  std::size_t unique_count() const;
  FeedbackLoop canonical() const;
  FeedbackLoop rotated(std::size_t first) const;

  friend bool operator==(const FeedbackLoop& a, const FeedbackLoop& b) {
    return a.rows_ == b.rows_ && a.delay_ == b.delay_ && a.columns_ == b.columns_;
  }

 private:
  Loop<Column> columns_;
  int rows_;
  int delay_;
};

FeedbackLoop remove_consecutive_repetitions(const FeedbackLoop& loop);

struct SubLoop {
  Column prefix;
  std::vector<std::size_t> positions;  // indices into the source loop, cyclic order
  FeedbackLoop loop;
};

// Groups columns by their first `prefix_length` bits. Sub-loops are listed in
// order of first appearance and keep the cyclic order of the source loop.
std::vector<SubLoop> subloops_by_prefix(const FeedbackLoop& loop, std::size_t prefix_length);

// Drops the last `order` rows and then the consecutive repetitions.
FeedbackLoop parent_loop(const FeedbackLoop& loop, int order);

}  // namespace beamloop
