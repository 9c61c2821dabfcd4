#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beamloop/beam_geometry.hpp"
#include "beamloop/loop.hpp"

namespace beamloop::test {

// Loop given row by row; row strings are read left to right as columns.
inline FeedbackLoop from_rows(const std::vector<std::string>& rows, int delay) {
  const std::size_t n = rows.front().size();
  std::vector<Column> cols;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::uint8_t> bits;
    for (const auto& r : rows) bits.push_back(static_cast<std::uint8_t>(r.at(j) - '0'));
    cols.emplace_back(std::move(bits));
  }
  return FeedbackLoop(std::move(cols), static_cast<int>(rows.size()), delay);
}

inline BinaryLoop bits_of(const std::string& s) {
  std::vector<std::uint8_t> bits;
  for (char c : s) bits.push_back(static_cast<std::uint8_t>(c - '0'));
  return BinaryLoop(std::move(bits));
}

// L(4,3) from the worked example.
inline FeedbackLoop example_l43() { return from_rows({"1111100000", "1000000111", "0000111110", "0010001100"}, 3); }
inline FeedbackLoop example_l33() { return from_rows({"111000", "100011", "001110"}, 3); }
inline FeedbackLoop example_l23() { return from_rows({"1100", "1001"}, 3); }

// Two MCL(4,3) displays from the text.
inline FeedbackLoop example_mcl43_a() {
  return from_rows({"1111100000", "1000000111", "0001111110", "0011001100"}, 3);
}
inline FeedbackLoop example_mcl43_b() {
  return from_rows({"1111100000", "1100000111", "0000111110", "0110001100"}, 3);
}

// Beams of the worked example on ten equal components (I_k is component k-1).
inline ScanningBeamSet example_beam_set() {
  const auto comps = ComponentBeamLoop::equal_partition(10);
  ScanningBeamSet s(4, 3);
  s.set_beam(1, Column{}, comps.span(0, 5));
  s.set_beam(2, Column{}, comps.span(7, 4));
  s.set_beam(3, Column{}, comps.span(4, 5));
  s.set_beam(4, Column{1}, comps.span(2, 1));
  s.set_beam(4, Column{0}, comps.span(6, 2));
  return s;
}

}  // namespace beamloop::test
