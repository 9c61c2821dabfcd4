#include "beamloop/unimodal.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace beamloop {

bool is_bd_unimodal(const FeedbackLoop& loop) {
  const std::size_t n = loop.size();
  if (n > 1) {
    for (std::size_t j = 0; j < n; ++j) {
      if (loop.column(j) == loop.column((j + 1) % n)) return false;
    }
  }
  for (int i = 1; i <= loop.rows(); ++i) {
    const auto prefix_length = static_cast<std::size_t>(std::max(i - loop.delay(), 0));
    std::map<Column, std::vector<std::uint8_t>> rows;
    for (const auto& c : loop.columns()) {
      rows[c.prefix(prefix_length)].push_back(c[static_cast<std::size_t>(i - 1)]);
    }
    for (auto& [prefix, bits] : rows) {
      if (!is_unimodal(BinaryLoop(std::move(bits)))) return false;
    }
  }
  return true;
}

std::size_t child_prefix_length(int child_rows, int delay) {
  return static_cast<std::size_t>(std::max(child_rows - delay, 0));
}

FeedbackLoop triple_columns(const FeedbackLoop& loop) {
  std::vector<Column> cols;
  cols.reserve(3 * loop.size());
  for (const auto& c : loop.columns()) {
    cols.push_back(c);
    cols.push_back(c);
    cols.push_back(c);
  }
  return FeedbackLoop(std::move(cols), loop.rows(), loop.delay());
}

FeedbackLoop construct_child(const FeedbackLoop& parent, const std::vector<ConcatRow>& rows) {
  const int child_rows = parent.rows() + 1;
  const auto subloops = subloops_by_prefix(parent, child_prefix_length(child_rows, parent.delay()));
  if (rows.size() != subloops.size()) {
    throw std::invalid_argument("expected one concatenation row per sub-loop");
  }

  std::vector<const BinaryLoop*> row_of(subloops.size(), nullptr);
  for (const auto& r : rows) {
    if (r.target_subloop >= subloops.size()) throw std::out_of_range("concatenation row targets no sub-loop");
    if (row_of[r.target_subloop] != nullptr) throw std::invalid_argument("two rows target the same sub-loop");
    if (r.bits.size() != 3 * subloops[r.target_subloop].loop.size()) {
      throw std::invalid_argument("concatenation row length mismatch");
    }
    if (!is_unimodal(r.bits)) throw std::invalid_argument("concatenation row is not unimodal");
    row_of[r.target_subloop] = &r.bits;
  }

  // Each parent column is replaced by its triple, so the combined loop keeps
  // the parent order of the prefixes and the sub-loop order of the columns.
  std::vector<std::size_t> subloop_of(parent.size());
  std::vector<std::size_t> index_in_subloop(parent.size());
  for (std::size_t s = 0; s < subloops.size(); ++s) {
    for (std::size_t k = 0; k < subloops[s].positions.size(); ++k) {
      subloop_of[subloops[s].positions[k]] = s;
      index_in_subloop[subloops[s].positions[k]] = k;
    }
  }
  std::vector<Column> cols;
  cols.reserve(3 * parent.size());
  for (std::size_t j = 0; j < parent.size(); ++j) {
    const BinaryLoop& row = *row_of[subloop_of[j]];
    for (std::size_t r = 0; r < 3; ++r) {
      cols.push_back(parent.column(j).with_appended(row[3 * index_in_subloop[j] + r]));
    }
  }
  auto child = remove_consecutive_repetitions(FeedbackLoop(std::move(cols), child_rows, parent.delay()));
  if (!is_bd_unimodal(child)) throw std::invalid_argument("invalid concatenation");
  return child;
}

ConcatRow max_addition_row(const FeedbackLoop& tripled, int slot, std::size_t target_subloop) {
  const std::size_t n = tripled.size();
  if (n % 3 != 0) throw std::invalid_argument("sub-loop is not triple-repeated");
  const std::size_t m = n / 3;
  std::vector<Column> distinct;
  distinct.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Column& c = tripled.column(3 * k);
    if (tripled.column(3 * k + 1) != c || tripled.column(3 * k + 2) != c) {
      throw std::invalid_argument("sub-loop is not triple-repeated");
    }
    distinct.push_back(c);
  }

  std::vector<std::uint8_t> bits(n, 0);
  const bool identical = std::all_of(distinct.begin(), distinct.end(),
                                     [&](const Column& c) { return c == distinct.front(); });
  if (identical) {
    bits[1] = 1;
    return ConcatRow{BinaryLoop(std::move(bits)), target_subloop};
  }

  const int split = slot - tripled.delay() + 1;
  auto find_pair = [&](auto differ) -> std::pair<std::size_t, std::size_t> {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        if (differ(distinct[a], distinct[b])) return {a, b};
      }
    }
    return {m, m};
  };
  std::pair<std::size_t, std::size_t> pair{m, m};
  if (split > 0 && static_cast<std::size_t>(split) <= distinct.front().size()) {
    const auto len = static_cast<std::size_t>(split);
    pair = find_pair([&](const Column& x, const Column& y) { return x.prefix(len) != y.prefix(len); });
  }
  if (pair.first == m) pair = find_pair([](const Column& x, const Column& y) { return x != y; });
  if (pair.first == m) throw std::logic_error("no valid flip positions");

  for (std::size_t p = 3 * pair.first + 1; p <= 3 * pair.second + 1; ++p) bits[p] = 1;
  return ConcatRow{BinaryLoop(std::move(bits)), target_subloop};
}

FeedbackLoop build_mcl(int rows, int delay) {
  if (rows < 1 || delay < 1) throw std::invalid_argument("b and d must be at least 1");
  FeedbackLoop loop({Column{1}, Column{0}}, 1, delay);
  for (int i = 2; i <= rows; ++i) {
    const auto subloops = subloops_by_prefix(loop, child_prefix_length(i, delay));
    std::vector<ConcatRow> concat;
    concat.reserve(subloops.size());
    for (std::size_t s = 0; s < subloops.size(); ++s) {
      concat.push_back(max_addition_row(triple_columns(subloops[s].loop), i, s));
    }
    loop = construct_child(loop, concat);
  }
  return loop;
}

MclCardinality mcl_cardinality(int rows, int delay) {
  if (rows < 1 || delay < 1) throw std::invalid_argument("b and d must be at least 1");
  if (delay == 1) {
    if (rows > 62) throw std::overflow_error("cardinality exceeds 64 bits");
    const std::uint64_t m = std::uint64_t{1} << rows;
    return {2 * m - 2, m};
  }
  std::vector<std::uint64_t> m(static_cast<std::size_t>(rows) + 1, 0);
  for (int b = 1; b <= rows; ++b) {
    if (b <= delay) {
      m[static_cast<std::size_t>(b)] = 2 * static_cast<std::uint64_t>(b);
      continue;
    }
    const std::uint64_t prev = m[static_cast<std::size_t>(b - 1)];
    const std::uint64_t back = m[static_cast<std::size_t>(b - delay)];
    if (back > (std::numeric_limits<std::uint64_t>::max() - prev) / 2) {
      throw std::overflow_error("cardinality exceeds 64 bits");
    }
    m[static_cast<std::size_t>(b)] = prev + 2 * back;
  }
  const auto v = m[static_cast<std::size_t>(rows)];
  return {v, v};
}

}  // namespace beamloop
